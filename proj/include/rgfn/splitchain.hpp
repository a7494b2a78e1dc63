#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rgfn/invariant.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/quadrature.hpp"
#include "rgfn/recurrence.hpp"
#include "rgfn/terminating.hpp"

namespace rgfn {

// ---------------------------------------------------------------------------
// Discrete state spaces

/// A kernel P_F together with a minorization P_F(s, .) >= eps(s) nu(.).
///
/// The terminating set X is the positivity set of eps. Minorization is
/// checked entrywise without tolerance: P(s, s') >= eps(s) nu(s').
class DiscreteMinorizedKernel {
 public:
  /// `declared_terminating`, when given, must equal {s : eps(s) > 0}.
  DiscreteMinorizedKernel(DiscreteKernel base, std::vector<double> epsilon, std::vector<double> nu,
                          std::optional<std::vector<StateIndex>> declared_terminating = std::nullopt);

  std::size_t size() const noexcept { return base_.size(); }
  const DiscreteKernel& base() const noexcept { return base_; }
  const std::vector<double>& epsilon() const noexcept { return epsilon_; }
  const std::vector<double>& nu() const noexcept { return nu_; }
  const std::vector<StateIndex>& terminating() const noexcept { return terminating_; }
  /// Remainder kernel as a matrix (row s is R_nu(s, .)).
  const DiscreteKernel& remainder() const noexcept { return remainder_; }

  StateIndex sample_nu(Rng& rng) const;

 private:
  DiscreteKernel base_;
  std::vector<double> epsilon_;
  std::vector<double> nu_;
  std::vector<StateIndex> terminating_;
  DiscreteKernel remainder_;
  std::vector<double> nu_cumulative_;
};

/// R_nu(s, .) = (P(s, .) - eps(s) nu) / (1 - eps(s)) if eps(s) < 1, nu if
/// eps(s) = 1. Throws ValidationError if an entry would be negative.
std::vector<double> remainder_kernel(const DiscreteKernel& base, const std::vector<double>& epsilon,
                                     const std::vector<double>& nu, StateIndex s);
std::vector<double> remainder_kernel(const DiscreteMinorizedKernel& mk, StateIndex s);

/// max over (s, s') of |(1 - eps(s)) R_nu(s, s') + eps(s) nu(s') - P(s, s')|.
double mixture_identity_error(const DiscreteMinorizedKernel& mk);

struct SplitState {
  StateIndex x = 0;
  bool y = false;
};

/// One step of the split kernel Q_nu (x) b_eps: x' ~ R_nu(x, .) if y = 0,
/// x' ~ nu if y = 1; then y' ~ Bernoulli(eps(x')).
SplitState split_step(const DiscreteMinorizedKernel& mk, SplitState z, Rng& rng);

struct SplitSimulation {
  TerminatingDistribution terminating;
  ReturnTimeSummary return_times;
};

/// Starts in the atom X x {1}, runs split steps, and records X at the first
/// return to the atom (no offset). Throws StepCapExceeded if an excursion
/// does not return within `cap` steps.
SplitSimulation terminating_general_by_simulation(const DiscreteMinorizedKernel& mk,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers = 1,
                                                  std::uint64_t cap = kDefaultStepCap);

struct GeneralTerminatingSolution {
  TerminatingDistribution terminating;
  FlowMeasure lambda;  // normalized so that sum eps * lambda = 1
};

/// Solves lambda P = lambda, normalizes sum_s eps(s) lambda(s) = 1 and
/// returns P(x) = eps(x) lambda(x).
GeneralTerminatingSolution solve_terminating_general_exact(const DiscreteMinorizedKernel& mk);

struct Theorem2Report {
  Verdict verdict = Verdict::Pass;
  double max_invariance_residual = 0.0;
  double max_boundary_residual = 0.0;
  bool conclusion_checked = false;
  /// Discrete: max |P(x) - R(x)/R(X)|. Continuous: histogram TV distance.
  double conclusion_error = 0.0;
  std::vector<std::string> messages;
};

/// Checks F P = F, R(x) = eps(x) F(x), then P(x) = R(x) / R(X) exactly.
Theorem2Report verify_theorem2(const DiscreteMinorizedKernel& mk, const FlowMeasure& flow,
                               const std::vector<double>& reward, double tol = 1e-8);

bool check_harris_sufficient(const DiscreteMinorizedKernel& mk, double b);

/// Re-expresses a wrapped pointed DAG as a minorized kernel on S \ {s0}:
/// eps(x) = P(x, s0), nu = P(s0, .), P'(s, .) = P(s, .)|_{S\{s0}} + P(s, s0) nu.
/// State s of the result is state s + 1 of the DAG.
DiscreteMinorizedKernel minorized_from_wrapped(const PointedDag& dag, const DiscreteKernel& kernel);

// ---------------------------------------------------------------------------
// Continuous state spaces on an interval

using Density = std::function<double(double)>;

/// Continuous analogue: base kernel density p(x, y) with p(x, y) >= eps(x) nu(y).
struct ContinuousMinorizedKernel {
  std::string name;
  ContinuousKernel1D base;
  Density epsilon;
  std::function<double(Rng&)> nu_sampler;
  Density nu_density;

  const ContinuousSpace1D& space() const noexcept { return base.space; }
};

/// Number of probe states per axis used to validate minorization and the
/// mixture identity on continuous instances.
inline constexpr std::size_t kContinuousProbes = 65;

/// Throws ValidationError if eps leaves [0, 1], or p(x, y) < eps(x) nu(y)
/// at some probe pair, or the base density fails to normalize within 1e-6.
void validate_minorization(const ContinuousMinorizedKernel& mk);

/// Density of R_nu(x, .).
double remainder_density(const ContinuousMinorizedKernel& mk, double x, double y);

/// max over probe pairs of |(1 - eps) r + eps nu - p|.
double mixture_identity_error(const ContinuousMinorizedKernel& mk);

struct ContinuousSplitState {
  double x = 0.0;
  bool y = false;
};

/// R_nu(x, .) is sampled by rejection from P_F(x, .), accepting y with
/// probability 1 - eps(x) nu(y) / p(x, y).
double sample_remainder(const ContinuousMinorizedKernel& mk, double x, Rng& rng);
ContinuousSplitState split_step(const ContinuousMinorizedKernel& mk, ContinuousSplitState z,
                                Rng& rng);

inline constexpr std::size_t kHistogramBins = 64;
inline constexpr std::size_t kQuadraturePoints = 512;

struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t total = 0;

  std::size_t bins() const noexcept { return counts.size(); }
  double bin_lo(std::size_t b) const;
  double bin_hi(std::size_t b) const;
  std::size_t bin_of(double x) const;
  std::vector<double> probabilities() const;
};

struct ContinuousSplitSimulation {
  Histogram terminating;
  ReturnTimeSummary return_times;
};

ContinuousSplitSimulation terminating_general_by_simulation(
    const ContinuousMinorizedKernel& mk, std::uint64_t excursions, std::uint64_t seed,
    unsigned workers = 1, std::uint64_t cap = kDefaultStepCap, std::size_t bins = kHistogramBins);

/// Invariant density on a trapezoid grid, from the discretized chain with
/// transition weights w_j p(x_i, x_j) renormalized per row, and scaled so
/// that the discrete integral of eps * lambda is 1.
struct QuadratureSolution {
  QuadratureRule rule;
  std::vector<double> lambda;

  /// Piecewise-linear interpolant of lambda.
  double lambda_at(double x) const;
  /// Mass of eps * lambda on equal-width bins, normalized to sum to 1.
  std::vector<double> terminating_bins(const ContinuousMinorizedKernel& mk,
                                       std::size_t bins = kHistogramBins) const;
};

QuadratureSolution solve_terminating_general_quadrature(const ContinuousMinorizedKernel& mk,
                                                        std::size_t points = kQuadraturePoints);

/// Grid invariance residual of a density F under the discretized kernel,
/// relative to max F.
double invariance_residual(const ContinuousMinorizedKernel& mk, const Density& flow,
                           std::size_t points = kQuadraturePoints);

double total_variation(const std::vector<double>& p, const std::vector<double>& q);

struct ContinuousTheorem2Options {
  double tol = 1e-8;
  double tv_tol = 0.01;
  std::uint64_t excursions = 1000000;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::size_t bins = kHistogramBins;
};

/// Checks invariance of F and R = eps F on the quadrature grid, then
/// compares the simulated terminating histogram with the bin masses of R.
Theorem2Report verify_theorem2(const ContinuousMinorizedKernel& mk, const Density& flow,
                               const Density& reward, const ContinuousTheorem2Options& options);

/// Grid infimum of eps over kQuadraturePoints nodes, minus a Lipschitz slack
/// L h / 2 with L the largest finite-difference slope on the grid.
bool check_harris_sufficient(const ContinuousMinorizedKernel& mk, double b);

}  // namespace rgfn
