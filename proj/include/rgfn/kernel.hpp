#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rgfn/rng.hpp"
#include "rgfn/space.hpp"

namespace rgfn {

struct KernelEntry {
  StateIndex to = 0;
  double prob = 0.0;
};

/// Row-stochastic transition matrix over {0, ..., n-1}.
///
/// Stored dense for n <= kDenseLimit and row-compressed above. Either way the
/// canonical row view lists nonzero entries by increasing column, and row
/// sums are accumulated left to right in that order, so both storages give
/// bit-identical sums. Row sums are not enforced here; see validate_kernel
/// and require_stochastic.
class DiscreteKernel {
 public:
  enum class Storage { Dense, Sparse };
  static constexpr std::size_t kDenseLimit = 512;
  static constexpr double kRowSumTolerance = 1e-12;

  struct Triplet {
    StateIndex from = 0;
    StateIndex to = 0;
    double prob = 0.0;
  };

  /// Duplicate (from, to) pairs are summed. Throws ValidationError on negative
  /// or non-finite entries and out-of-range indices.
  DiscreteKernel(std::size_t n, std::vector<Triplet> entries,
                 std::optional<Storage> storage = std::nullopt);
  explicit DiscreteKernel(const std::vector<std::vector<double>>& rows,
                          std::optional<Storage> storage = std::nullopt);

  std::size_t size() const noexcept { return n_; }
  Storage storage() const noexcept { return storage_; }

  double prob(StateIndex from, StateIndex to) const;
  /// Nonzero entries of a row, increasing column order.
  std::span<const KernelEntry> row(StateIndex from) const;
  double row_sum(StateIndex from) const;
  std::vector<Edge> support() const;

  /// Throws ValidationError if any row sum deviates from 1 by more than
  /// kRowSumTolerance.
  void require_stochastic() const;

  Eigen::MatrixXd dense() const;

  /// Inverse-CDF draw from row `from`.
  StateIndex sample_next(StateIndex from, Rng& rng) const;

 private:
  std::size_t n_ = 0;
  Storage storage_ = Storage::Dense;
  std::vector<std::size_t> row_ptr_;
  std::vector<KernelEntry> entries_;
  std::vector<double> cumulative_;
  Eigen::MatrixXd dense_;
};

/// Transition law on a 1-D interval given by a sampler and a density in the
/// second argument. The sampler must be a pure function of (state, rng).
struct ContinuousKernel1D {
  ContinuousSpace1D space;
  std::function<double(double, Rng&)> sampler;
  std::function<double(double, double)> density;

  double sample_next(double from, Rng& rng) const { return sampler(from, rng); }
};

using TransitionKernel = std::variant<DiscreteKernel, ContinuousKernel1D>;

/// Max |integral of density(x, .) - 1| over the probe states, by composite
/// Simpson with `points` nodes.
double continuous_normalization_error(const ContinuousKernel1D& kernel,
                                      std::span<const double> probes,
                                      std::size_t points = 4097);

/// Unnormalized reward on the terminating states. Zero off its support.
struct DiscreteReward {
  std::vector<double> values;

  double total() const;
  std::vector<StateIndex> support() const;
};

struct ContinuousReward {
  ContinuousSpace1D space;
  std::function<double(double)> density;

  double total(std::size_t points = 4097) const;
};

using RewardMeasure = std::variant<DiscreteReward, ContinuousReward>;

/// Checks R > 0 exactly on a subset of X and zero elsewhere.
void validate_reward(const DiscreteReward& reward, const PointedDag& dag);

class FlowMeasure;

/// Row-normalizes positive edge flows into a kernel supported exactly on the
/// DAG's edges, and returns the state flow F(s) = total outflow of s.
std::pair<DiscreteKernel, FlowMeasure> kernel_from_edge_flows(
    const PointedDag& dag, const std::map<Edge, double>& edge_flows);

struct RowSumIssue {
  StateIndex state = 0;
  double deviation = 0.0;  // row sum minus 1
};

struct SupportIssue {
  StateIndex from = 0;
  StateIndex to = 0;
  double prob = 0.0;
};

struct KernelReport {
  std::vector<RowSumIssue> row_sums;
  std::vector<SupportIssue> support;
  std::vector<StateIndex> unreachable;
  std::optional<std::string> size_mismatch;

  bool empty() const noexcept {
    return row_sums.empty() && support.empty() && unreachable.empty() && !size_mismatch;
  }
};

KernelReport validate_kernel(const DiscreteKernel& kernel, const PointedDag& dag);

}  // namespace rgfn
