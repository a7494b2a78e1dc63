#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgfn/invariant.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/space.hpp"

namespace rgfn {

enum class TerminatingMethod { Enumeration, Lemma, Simulation, SplitExact, SplitSimulation };

std::string to_string(TerminatingMethod method);

/// Distribution of the terminating state, indexed by state (zero off X).
struct TerminatingDistribution {
  std::vector<double> probs;
  TerminatingMethod method = TerminatingMethod::Enumeration;
  /// Per-state standard error; empty for exact methods. For simulation this
  /// is the 95% Wilson half-width.
  std::vector<double> stderr_;

  double total() const;
};

/// P(x) = P(x -> s0) * sum over trajectories s0 ~> x of their probability,
/// by dynamic programming in topological order.
TerminatingDistribution terminating_by_enumeration(const PointedDag& dag,
                                                   const DiscreteKernel& kernel);

/// P(x) = lambda(x) P(x, s0) for the invariant measure with lambda(s0) = 1.
/// Throws ValidationError if lambda's invariance residual exceeds 1e-8.
TerminatingDistribution terminating_by_lemma(const DiscreteKernel& kernel,
                                             const FlowMeasure& lambda);

/// State visited at time sigma - 1 for excursion i = 0..n-1 (substream
/// (seed, i)). Throws StepCapExceeded for the lowest non-returning index.
std::vector<StateIndex> sample_terminating_states(const DiscreteKernel& kernel,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers = 1,
                                                  std::uint64_t cap = kDefaultStepCap);

TerminatingDistribution terminating_by_simulation(const DiscreteKernel& kernel,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers = 1,
                                                  std::uint64_t cap = kDefaultStepCap);

/// Half-width of the 95% Wilson score interval for `successes` out of `n`.
double wilson_half_width(std::uint64_t successes, std::uint64_t n);

/// residual(x) = F(x) P(x, s0) - R(x) for x in X and any state where R > 0.
std::map<StateIndex, double> check_boundary_conditions(const PointedDag& dag,
                                                       const FlowMeasure& flow,
                                                       const DiscreteKernel& kernel,
                                                       const DiscreteReward& reward);

enum class Verdict { Pass, HypothesisFailure, ConclusionFailure };

struct Theorem1Report {
  Verdict verdict = Verdict::Pass;
  double max_invariance_residual = 0.0;  // over S \ {s0}
  double max_boundary_residual = 0.0;
  bool conclusion_checked = false;
  double max_conclusion_error = 0.0;  // max_x |P(x) - R(x)/Z|
  TerminatingDistribution terminating;
  std::vector<std::string> messages;
};

/// Checks the flow-matching and boundary hypotheses at tolerance tol, then,
/// only if both hold, compares the enumerated terminating distribution with
/// R / R(X).
Theorem1Report verify_theorem1(const PointedDag& dag, const DiscreteKernel& kernel,
                               const FlowMeasure& flow, const DiscreteReward& reward,
                               double tol = 1e-8);

}  // namespace rgfn
