#include "rgfn/train.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rgfn/error.hpp"
#include "rgfn/rng.hpp"

namespace rgfn {

namespace {

void check_shape(const TabularParams& params, const PointedDag& dag) {
  if (params.logits.size() != dag.size() || params.log_flow.size() != dag.size())
    throw ValidationError("parameters do not match the DAG size");
  for (StateIndex s = 0; s < dag.size(); ++s)
    if (params.logits[s].size() != dag.children(s).size())
      throw ValidationError("logit row size does not match the out-degree of state " +
                            dag.name(s));
}

std::vector<double> softmax(const std::vector<double>& logits) {
  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> p(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) total += (p[k] = std::exp(logits[k] - top));
  for (double& v : p) v /= total;
  return p;
}

struct Forward {
  std::vector<double> flow;                // F(s)
  std::vector<std::vector<double>> probs;  // P(s, children(s)[k])
  std::vector<double> residual;            // flow-matching residual, 0 at s0
  std::vector<double> boundary;            // F(x) P(x, s0) - R(x), 0 off X
};

Forward forward(const TabularParams& params, const PointedDag& dag, const DiscreteReward& reward) {
  check_shape(params, dag);
  if (reward.values.size() != dag.size()) throw ValidationError("reward size does not match the DAG");
  const std::size_t n = dag.size();
  Forward f;
  f.flow.resize(n);
  f.probs.resize(n);
  for (StateIndex s = 0; s < n; ++s) {
    f.flow[s] = std::exp(params.log_flow[s]);
    f.probs[s] = softmax(params.logits[s]);
  }
  std::vector<double> inflow(n, 0.0);
  f.boundary.assign(n, 0.0);
  for (StateIndex s = 0; s < n; ++s) {
    const auto& ch = dag.children(s);
    for (std::size_t k = 0; k < ch.size(); ++k) {
      const double edge = f.flow[s] * f.probs[s][k];
      if (ch[k] == kInitialState)
        f.boundary[s] = edge - reward.values[s];
      else
        inflow[ch[k]] += edge;
    }
  }
  f.residual.assign(n, 0.0);
  for (StateIndex s = 1; s < n; ++s) f.residual[s] = f.flow[s] - inflow[s];
  return f;
}

}  // namespace

TabularParams TabularParams::zeros(const PointedDag& dag) {
  TabularParams p;
  p.logits.resize(dag.size());
  for (StateIndex s = 0; s < dag.size(); ++s) p.logits[s].assign(dag.children(s).size(), 0.0);
  p.log_flow.assign(dag.size(), 0.0);
  return p;
}

std::size_t TabularParams::dimension() const {
  std::size_t d = log_flow.size();
  for (const auto& row : logits) d += row.size();
  return d;
}

std::vector<double> TabularParams::flatten() const {
  std::vector<double> flat;
  flat.reserve(dimension());
  for (const auto& row : logits) flat.insert(flat.end(), row.begin(), row.end());
  flat.insert(flat.end(), log_flow.begin(), log_flow.end());
  return flat;
}

void TabularParams::assign(const std::vector<double>& flat) {
  if (flat.size() != dimension()) throw ValidationError("flat parameter vector has the wrong size");
  std::size_t k = 0;
  for (auto& row : logits)
    for (double& v : row) v = flat[k++];
  for (double& v : log_flow) v = flat[k++];
}

DiscreteKernel kernel_from_params(const PointedDag& dag, const TabularParams& params) {
  check_shape(params, dag);
  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex s = 0; s < dag.size(); ++s) {
    const auto p = softmax(params.logits[s]);
    const auto& ch = dag.children(s);
    for (std::size_t k = 0; k < ch.size(); ++k) entries.push_back({s, ch[k], p[k]});
  }
  return DiscreteKernel(dag.size(), std::move(entries));
}

FlowMeasure flow_from_params(const TabularParams& params) {
  std::vector<double> f(params.log_flow.size());
  for (std::size_t s = 0; s < f.size(); ++s) f[s] = std::exp(params.log_flow[s]);
  return FlowMeasure(std::move(f), Normalization::FlowUnnormalized);
}

TabularParams params_from(const PointedDag& dag, const DiscreteKernel& kernel,
                          const FlowMeasure& flow) {
  TabularParams p = TabularParams::zeros(dag);
  for (StateIndex s = 0; s < dag.size(); ++s) {
    const auto& ch = dag.children(s);
    for (std::size_t k = 0; k < ch.size(); ++k) {
      const double prob = kernel.prob(s, ch[k]);
      p.logits[s][k] = prob > 0.0 ? std::log(prob) : -50.0;
    }
    if (!(flow[s] > 0.0)) throw ValidationError("flow must be positive to take its log");
    p.log_flow[s] = std::log(flow[s]);
  }
  return p;
}

double loss(const TabularParams& params, const PointedDag& dag, const DiscreteReward& reward) {
  const Forward f = forward(params, dag, reward);
  double total = 0.0;
  for (double r : f.residual) total += r * r;
  for (double b : f.boundary) total += b * b;
  return total;
}

TabularParams grad(const TabularParams& params, const PointedDag& dag,
                   const DiscreteReward& reward) {
  const Forward f = forward(params, dag, reward);
  const std::size_t n = dag.size();
  TabularParams g = TabularParams::zeros(dag);
  for (StateIndex s = 0; s < n; ++s) {
    const auto& ch = dag.children(s);
    const auto& p = f.probs[s];
    // dL/d edge(s -> c), with edge = F(s) P(s, c).
    std::vector<double> d_edge(ch.size());
    for (std::size_t k = 0; k < ch.size(); ++k)
      d_edge[k] = ch[k] == kInitialState ? 2.0 * f.boundary[s] : -2.0 * f.residual[ch[k]];

    double expected = 0.0;  // sum_c d_edge(c) P(s, c)
    for (std::size_t k = 0; k < ch.size(); ++k) expected += d_edge[k] * p[k];
    for (std::size_t k = 0; k < ch.size(); ++k)
      g.logits[s][k] = f.flow[s] * p[k] * (d_edge[k] - expected);

    // d edge / d log_flow(s) = edge; plus the direct term of residual(s).
    g.log_flow[s] = f.flow[s] * expected + (s == kInitialState ? 0.0 : 2.0 * f.residual[s] * f.flow[s]);
  }
  return g;
}

FitResult fit(const PointedDag& dag, const DiscreteReward& reward, const FitOptions& options) {
  if (options.iters < 1) throw ValidationError("iters must be >= 1");
  if (!(options.step_size > 0.0)) throw ValidationError("step size must be positive");
  validate_reward(reward, dag);
  for (StateIndex x : dag.terminating())
    if (!(reward.values[x] > 0.0))
      throw ValidationError("reward must be positive on terminating state '" + dag.name(x) + "'");

  TabularParams params = TabularParams::zeros(dag);
  {
    Rng rng = substream(options.seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& row : params.logits)
      for (double& v : row) v = options.init_scale * normal(rng);
    for (double& v : params.log_flow) v = options.init_scale * normal(rng);
  }

  FitResult result;
  double current = loss(params, dag, reward);
  double step = options.step_size;
  std::vector<double> x = params.flatten();
  for (std::size_t it = 1; it <= options.iters; ++it) {
    if (current <= options.target_loss) break;
    const std::vector<double> g = grad(params, dag, reward).flatten();
    TabularParams trial = params;
    double trial_loss = current;
    // Halve until the step does not increase the loss.
    for (int halvings = 0; halvings < 60; ++halvings) {
      std::vector<double> y(x.size());
      for (std::size_t k = 0; k < x.size(); ++k) y[k] = x[k] - step * g[k];
      trial.assign(y);
      trial_loss = loss(trial, dag, reward);
      if (std::isfinite(trial_loss) && trial_loss <= current) break;
      step *= 0.5;
    }
    if (!std::isfinite(trial_loss) || trial_loss > 1e6)
      throw DivergenceError("training loss diverged");
    if (trial_loss <= current) {
      params = std::move(trial);
      x = params.flatten();
      current = trial_loss;
      step = std::min(options.step_size, step * options.growth);
    }
    result.history.push_back({it, current, step});
  }
  result.params = std::move(params);
  result.final_loss = current;
  return result;
}

}  // namespace rgfn
