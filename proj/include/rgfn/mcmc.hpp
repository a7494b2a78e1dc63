#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "rgfn/kernel.hpp"
#include "rgfn/space.hpp"

namespace rgfn {

/// Metropolis-Hastings chain on {0, ..., m-1} targeting target / sum(target).
/// Uses substream (seed, chain). Returns `steps` states X_1..X_steps.
std::vector<StateIndex> metropolis_hastings(const std::vector<double>& target,
                                            const DiscreteKernel& proposal, std::uint64_t steps,
                                            std::uint64_t seed, StateIndex start = 0,
                                            std::uint64_t chain = 0);

/// Explicit MH transition matrix for the same target and proposal.
DiscreteKernel mh_transition_matrix(const std::vector<double>& target,
                                    const DiscreteKernel& proposal);

/// Nearest-neighbour proposal on a path of m states: +-1 with probability 1/2
/// each, staying put when the move would leave the path. Symmetric.
DiscreteKernel lattice_walk_proposal(std::size_t m);

/// Two Gaussian bumps on a 1-D lattice of m states, centred at m/4 and 3m/4
/// (rounded), width m/7, over a floor of 1e-3.
std::vector<double> bimodal_lattice_target(std::size_t m = 21);

/// 1 on the upper half of the lattice (index >= m/2), 0 below.
std::vector<double> mode_indicator(const std::vector<StateIndex>& samples, std::size_t m);

/// Lag-k autocorrelation of a stationary chain's statistic f, computed from
/// the explicit transition matrix and its stationary distribution.
double exact_autocorrelation(const DiscreteKernel& kernel, const std::vector<double>& stationary,
                             const std::vector<double>& statistic, std::size_t lag = 1);

std::vector<double> normalize(const std::vector<double>& weights);

/// Empirical distribution of samples over {0, ..., m-1}.
std::vector<double> empirical_distribution(const std::vector<StateIndex>& samples, std::size_t m,
                                           std::size_t begin = 0);

/// autocorrelation[k-1] is the lag-k sample autocorrelation, k = 1..max_lag.
std::vector<double> autocorrelation(const std::vector<double>& series, std::size_t max_lag);

/// Effective sample size with Geyer's initial positive sequence truncation.
double effective_sample_size(const std::vector<double>& series);

/// Two-sided permutation p-value of the lag-1 autocorrelation under
/// exchangeability, with `permutations` random shuffles (substream
/// (seed, k) for shuffle k).
double lag1_permutation_pvalue(const std::vector<double>& series, std::size_t permutations,
                               std::uint64_t seed);

struct DiagnosticsReport {
  /// (sample count, TV distance to target) at each checkpoint.
  std::vector<std::pair<std::uint64_t, double>> tv_curve;
  std::vector<double> autocorr;  // lags 1..L
  double ess = 0.0;
  double wallclock_per_sample = 0.0;  // seconds; filled by the caller
};

struct CompareOptions {
  std::size_t max_lag = 20;
  std::size_t checkpoints = 10;  // geometric between 100 and the sample count
};

/// TV-vs-count curves, lag autocorrelations of the statistic and ESS for a
/// GFlowNet and an MH sample sequence over the same m states. Throws
/// ValidationError if a sample falls outside the target's space.
std::pair<DiagnosticsReport, DiagnosticsReport> compare(
    const std::vector<StateIndex>& gfn_samples, const std::vector<StateIndex>& mh_samples,
    const std::vector<double>& target, const std::function<double(StateIndex)>& statistic,
    const CompareOptions& options = {});

/// Geometric checkpoints between 100 (or n if smaller) and n.
std::vector<std::uint64_t> checkpoints(std::uint64_t n, std::size_t count);

}  // namespace rgfn
