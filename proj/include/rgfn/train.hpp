#pragma once

#include <cstdint>
#include <vector>

#include "rgfn/invariant.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/space.hpp"

namespace rgfn {

/// Tabular parametrization: P_theta(s, .) = softmax(logits[s]) over
/// dag.children(s) (same order), F(s) = exp(log_flow[s]).
struct TabularParams {
  std::vector<std::vector<double>> logits;
  std::vector<double> log_flow;

  static TabularParams zeros(const PointedDag& dag);
  std::size_t dimension() const;
  std::vector<double> flatten() const;
  void assign(const std::vector<double>& flat);
};

DiscreteKernel kernel_from_params(const PointedDag& dag, const TabularParams& params);
FlowMeasure flow_from_params(const TabularParams& params);

/// Parameters whose kernel and flow equal the given ones. Zero-probability
/// edges cannot be represented exactly and get logit -50.
TabularParams params_from(const PointedDag& dag, const DiscreteKernel& kernel,
                          const FlowMeasure& flow);

/// Squared flow-matching residuals over S \ {s0} plus squared boundary
/// residuals F(x) P(x, s0) - R(x) over X.
double loss(const TabularParams& params, const PointedDag& dag, const DiscreteReward& reward);

/// Analytic gradient of loss through the softmax and exp maps.
TabularParams grad(const TabularParams& params, const PointedDag& dag,
                   const DiscreteReward& reward);

struct FitOptions {
  std::size_t iters = 5000;
  double step_size = 0.05;
  std::uint64_t seed = 0;
  /// Scale of the random initial logits and log-flows.
  double init_scale = 0.1;
  /// Stop early once the loss is at or below this value.
  double target_loss = 0.0;
  /// Multiplier applied to the step after an accepted update; 1 keeps the
  /// step fixed between halvings.
  double growth = 1.0;
};

struct FitStep {
  std::size_t iter = 0;
  double loss = 0.0;
  double step = 0.0;
};

struct FitResult {
  TabularParams params;
  std::vector<FitStep> history;
  double final_loss = 0.0;
};

/// Full-batch gradient descent. A step that increases the loss is rejected
/// and the step size halved; an accepted step multiplies it by `growth`,
/// never beyond the initial step size. Throws DivergenceError if the loss
/// exceeds 1e6.
FitResult fit(const PointedDag& dag, const DiscreteReward& reward, const FitOptions& options);

}  // namespace rgfn
