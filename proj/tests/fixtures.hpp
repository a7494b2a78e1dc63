#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rgfn/invariant.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/rng.hpp"
#include "rgfn/space.hpp"

namespace fixtures {

using namespace rgfn;

// s0 -> {a, b}, a -> {x1, x2}, b -> x2, {x1, x2} -> s0
inline PointedDag diamond_dag() {
  return PointedDag({"s0", "a", "b", "x1", "x2"},
                    {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 4}, {3, 0}, {4, 0}}, {3, 4});
}

inline DiscreteKernel diamond_kernel(double p_s0_a = 0.5, double p_a_x1 = 0.4) {
  return DiscreteKernel(5, {{0, 1, p_s0_a},
                            {0, 2, 1.0 - p_s0_a},
                            {1, 3, p_a_x1},
                            {1, 4, 1.0 - p_a_x1},
                            {2, 4, 1.0},
                            {3, 0, 1.0},
                            {4, 0, 1.0}});
}

inline const std::vector<double> kDiamondLambda{1.0, 0.5, 0.5, 0.2, 0.8};

inline DiscreteReward diamond_reward() { return {{0.0, 0.0, 0.0, 1.0, 4.0}}; }

inline FlowMeasure diamond_flow(double scale = 5.0) {
  std::vector<double> f(kDiamondLambda);
  for (double& v : f) v *= scale;
  return FlowMeasure(f, Normalization::FlowUnnormalized);
}

// s0 -> x -> s0
inline PointedDag two_cycle_dag() { return PointedDag({"s0", "x"}, {{0, 1}, {1, 0}}, {1}); }
inline DiscreteKernel two_cycle_kernel() { return DiscreteKernel(2, {{0, 1, 1.0}, {1, 0, 1.0}}); }

struct RandomInstance {
  PointedDag dag;
  DiscreteKernel kernel;
};

/// Random wrapped DAG on n states (n >= 2). State i > 0 has a parent below
/// it, so everything is reachable; leaves and a random subset of the other
/// states terminate. Kernel weights are uniform in [0.1, 1).
inline RandomInstance random_instance(std::size_t n, std::uint64_t seed) {
  Rng rng = substream(seed, n);
  std::vector<Edge> edges;
  for (StateIndex i = 1; i < n; ++i) {
    const auto parent = static_cast<StateIndex>(rng.uniform() * static_cast<double>(i));
    edges.push_back({std::min<StateIndex>(parent, i - 1), i});
    for (StateIndex j = 0; j < i; ++j)
      if (j != edges.back().from && rng.uniform() < 0.3) edges.push_back({j, i});
  }
  std::vector<bool> has_child(n, false);
  for (const Edge& e : edges) has_child[e.from] = true;
  std::vector<StateIndex> terminating;
  for (StateIndex i = 1; i < n; ++i)
    if (!has_child[i] || rng.uniform() < 0.3) terminating.push_back(i);
  for (StateIndex x : terminating) edges.push_back({x, 0});
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(i == 0 ? "s0" : "s" + std::to_string(i));
  PointedDag dag(names, edges, terminating);

  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex s = 0; s < n; ++s) {
    const auto& ch = dag.children(s);
    std::vector<double> w(ch.size());
    double total = 0.0;
    for (double& v : w) total += (v = 0.1 + 0.9 * rng.uniform());
    for (std::size_t k = 0; k < ch.size(); ++k) entries.push_back({s, ch[k], w[k] / total});
  }
  return {std::move(dag), DiscreteKernel(n, std::move(entries))};
}

/// Forward flow propagation: F(s0) = f0 and F(s') = sum_s F(s) P(s, s') for
/// s' != s0, in topological order. Satisfies flow matching off s0 exactly
/// up to rounding.
inline std::vector<double> forward_flow(const PointedDag& dag, const DiscreteKernel& kernel,
                                        double f0) {
  std::vector<double> f(dag.size(), 0.0);
  f[kInitialState] = f0;
  for (StateIndex s : dag.topological_order())
    for (const KernelEntry& e : kernel.row(s))
      if (e.to != kInitialState) f[e.to] += f[s] * e.prob;
  return f;
}

/// 4x4 monotone lattice: (i, j) -> (i+1, j), (i, j+1); state (0, 0) is s0
/// and the 9 states with i, j >= 1 terminate.
inline PointedDag grid_dag(std::size_t side = 4) {
  std::vector<std::string> names;
  auto id = [side](std::size_t i, std::size_t j) { return i * side + j; };
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      names.push_back(i == 0 && j == 0 ? "s0" : "g" + std::to_string(i) + std::to_string(j));
  std::vector<Edge> edges;
  std::vector<StateIndex> terminating;
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      if (i + 1 < side) edges.push_back({id(i, j), id(i + 1, j)});
      if (j + 1 < side) edges.push_back({id(i, j), id(i, j + 1)});
      if (i >= 1 && j >= 1) {
        terminating.push_back(id(i, j));
        edges.push_back({id(i, j), 0});
      }
    }
  return PointedDag(names, edges, terminating);
}

/// Rewards uniform in [0.5, 2) on X from a fixed seed.
inline DiscreteReward grid_reward(const PointedDag& dag, std::uint64_t seed = 2024) {
  Rng rng = substream(seed, 0);
  DiscreteReward r{std::vector<double>(dag.size(), 0.0)};
  for (StateIndex x : dag.terminating()) r.values[x] = 0.5 + 1.5 * rng.uniform();
  return r;
}

/// GFlowNet DAG whose terminating states form the m-point lattice:
/// s0 -> g_k -> x_{3k}, x_{3k+1}, x_{3k+2}, x_{3k+3}. Index i of the lattice
/// is state lattice_state(i).
inline PointedDag lattice_gfn_dag(std::size_t m = 21) {
  const std::size_t groups = (m + 2) / 3;
  std::vector<std::string> names{"s0"};
  for (std::size_t k = 0; k < groups; ++k) names.push_back("g" + std::to_string(k));
  for (std::size_t i = 0; i < m; ++i) names.push_back("x" + std::to_string(i));
  std::vector<Edge> edges;
  std::vector<StateIndex> terminating;
  for (std::size_t k = 0; k < groups; ++k) {
    edges.push_back({0, 1 + k});
    for (std::size_t i = 3 * k; i <= 3 * k + 3 && i < m; ++i) edges.push_back({1 + k, 1 + groups + i});
  }
  for (std::size_t i = 0; i < m; ++i) {
    terminating.push_back(1 + groups + i);
    edges.push_back({1 + groups + i, 0});
  }
  return PointedDag(names, edges, terminating);
}

}  // namespace fixtures
