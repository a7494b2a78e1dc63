#include "rgfn/terminating.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgfn/error.hpp"
#include "rgfn/excursion.hpp"
#include "rgfn/parallel.hpp"

namespace rgfn {

std::string to_string(TerminatingMethod method) {
  switch (method) {
    case TerminatingMethod::Enumeration: return "enumeration";
    case TerminatingMethod::Lemma: return "lemma";
    case TerminatingMethod::Simulation: return "simulation";
    case TerminatingMethod::SplitExact: return "split-exact";
    case TerminatingMethod::SplitSimulation: return "split-simulation";
  }
  return "unknown";
}

double TerminatingDistribution::total() const {
  double t = 0.0;
  for (double p : probs) t += p;
  return t;
}

TerminatingDistribution terminating_by_enumeration(const PointedDag& dag,
                                                   const DiscreteKernel& kernel) {
  if (kernel.size() != dag.size()) throw ValidationError("kernel size does not match the DAG");
  const std::size_t n = dag.size();
  // reach[s]: total probability of trajectories s0 ~> s along non-wrap edges.
  std::vector<double> reach(n, 0.0);
  reach[kInitialState] = 1.0;
  for (StateIndex s : dag.topological_order()) {
    if (reach[s] == 0.0) continue;
    for (const KernelEntry& e : kernel.row(s)) {
      if (e.to == kInitialState) continue;
      if (!dag.has_edge(s, e.to)) throw ValidationError("kernel has mass outside the DAG's edges");
      reach[e.to] += reach[s] * e.prob;
    }
  }
  TerminatingDistribution out;
  out.method = TerminatingMethod::Enumeration;
  out.probs.assign(n, 0.0);
  for (StateIndex x : dag.terminating()) out.probs[x] = reach[x] * kernel.prob(x, kInitialState);
  return out;
}

TerminatingDistribution terminating_by_lemma(const DiscreteKernel& kernel,
                                             const FlowMeasure& lambda) {
  if (lambda.size() != kernel.size()) throw ValidationError("lambda size does not match kernel");
  if (std::abs(lambda[kInitialState] - 1.0) > 1e-12)
    throw ValidationError("lambda must be normalized to 1 at s0");
  const double res = max_abs(flow_matching_residual(kernel, lambda, false));
  if (res > 1e-8)
    throw ValidationError("lambda is not invariant (residual " + std::to_string(res) + ")");
  TerminatingDistribution out;
  out.method = TerminatingMethod::Lemma;
  out.probs.assign(kernel.size(), 0.0);
  for (StateIndex x = 1; x < kernel.size(); ++x) out.probs[x] = lambda[x] * kernel.prob(x, kInitialState);
  return out;
}

std::vector<StateIndex> sample_terminating_states(const DiscreteKernel& kernel,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers, std::uint64_t cap) {
  if (excursions < 1) throw ValidationError("excursions must be >= 1");
  kernel.require_stochastic();
  std::vector<StateIndex> out(excursions, kInitialState);
  const auto first_capped = parallel_reduce(
      excursions, workers, UINT64_MAX,
      [&](std::uint64_t i, std::uint64_t& capped) {
        Rng rng = substream(seed, i);
        const auto ex = run_excursion(kernel, rng, cap);
        if (ex)
          out[i] = ex->last;
        else
          capped = std::min(capped, i);
      },
      [](std::uint64_t& a, std::uint64_t& b) { a = std::min(a, b); });
  if (first_capped != UINT64_MAX) throw StepCapExceeded(first_capped, cap);
  return out;
}

double wilson_half_width(std::uint64_t successes, std::uint64_t n) {
  if (n == 0) return 0.0;
  constexpr double z = 1.959963984540054;
  const double nn = static_cast<double>(n);
  const double p = static_cast<double>(successes) / nn;
  const double denom = 1.0 + z * z / nn;
  return z / denom * std::sqrt(p * (1.0 - p) / nn + z * z / (4.0 * nn * nn));
}

TerminatingDistribution terminating_by_simulation(const DiscreteKernel& kernel,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers, std::uint64_t cap) {
  const auto samples = sample_terminating_states(kernel, excursions, seed, workers, cap);
  std::vector<std::uint64_t> counts(kernel.size(), 0);
  for (StateIndex s : samples) ++counts[s];
  TerminatingDistribution out;
  out.method = TerminatingMethod::Simulation;
  out.probs.resize(kernel.size());
  out.stderr_.resize(kernel.size());
  for (StateIndex s = 0; s < kernel.size(); ++s) {
    out.probs[s] = static_cast<double>(counts[s]) / static_cast<double>(excursions);
    out.stderr_[s] = wilson_half_width(counts[s], excursions);
  }
  return out;
}

std::map<StateIndex, double> check_boundary_conditions(const PointedDag& dag,
                                                       const FlowMeasure& flow,
                                                       const DiscreteKernel& kernel,
                                                       const DiscreteReward& reward) {
  if (flow.size() != dag.size() || kernel.size() != dag.size() ||
      reward.values.size() != dag.size())
    throw ValidationError("flow, kernel and reward must match the DAG size");
  std::map<StateIndex, double> out;
  for (StateIndex x : dag.terminating()) out[x] = 0.0;
  for (StateIndex s : reward.support()) out[s] = 0.0;
  for (auto& [x, r] : out) r = flow[x] * kernel.prob(x, kInitialState) - reward.values[x];
  return out;
}

Theorem1Report verify_theorem1(const PointedDag& dag, const DiscreteKernel& kernel,
                               const FlowMeasure& flow, const DiscreteReward& reward, double tol) {
  Theorem1Report report;
  report.max_invariance_residual = max_abs(flow_matching_residual(kernel, flow, true));
  for (const auto& [x, r] : check_boundary_conditions(dag, flow, kernel, reward))
    report.max_boundary_residual = std::max(report.max_boundary_residual, std::abs(r));

  if (report.max_invariance_residual > tol) {
    std::ostringstream msg;
    msg << "hypothesis (i) failed: flow-matching residual " << report.max_invariance_residual
        << " > " << tol;
    report.messages.push_back(msg.str());
  }
  if (report.max_boundary_residual > tol) {
    std::ostringstream msg;
    msg << "hypothesis (ii) failed: boundary residual " << report.max_boundary_residual << " > "
        << tol;
    report.messages.push_back(msg.str());
  }
  if (!report.messages.empty()) {
    report.verdict = Verdict::HypothesisFailure;
    return report;
  }

  report.conclusion_checked = true;
  report.terminating = terminating_by_enumeration(dag, kernel);
  const double z = reward.total();
  for (StateIndex s = 0; s < dag.size(); ++s)
    report.max_conclusion_error = std::max(
        report.max_conclusion_error, std::abs(report.terminating.probs[s] - reward.values[s] / z));
  if (report.max_conclusion_error > tol) {
    std::ostringstream msg;
    msg << "conclusion failed: max |P(x) - R(x)/Z| = " << report.max_conclusion_error << " > "
        << tol;
    report.messages.push_back(msg.str());
    report.verdict = Verdict::ConclusionFailure;
  }
  return report;
}

}  // namespace rgfn
