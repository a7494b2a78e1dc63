#include "rgfn/space.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <queue>
#include <string>

#include "rgfn/error.hpp"
#include "rgfn/kernel.hpp"
#include "rgfn/parallel.hpp"
#include "rgfn/quadrature.hpp"

namespace rgfn {

unsigned default_workers() {
  if (const char* env = std::getenv("RGFN_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

namespace {

std::vector<std::vector<StateIndex>> adjacency(std::size_t n, std::span<const Edge> edges) {
  std::vector<std::vector<StateIndex>> adj(n);
  for (const Edge& e : edges) adj[e.from].push_back(e.to);
  return adj;
}

std::vector<bool> reachable_from(const std::vector<std::vector<StateIndex>>& adj,
                                 StateIndex start) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<StateIndex> stack{start};
  seen[start] = true;
  while (!stack.empty()) {
    const StateIndex s = stack.back();
    stack.pop_back();
    for (StateIndex t : adj[s]) {
      if (!seen[t]) {
        seen[t] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

// Kahn's algorithm over the edges accepted by `keep`. Returns nullopt on a
// cycle.
template <class Keep>
std::optional<std::vector<StateIndex>> topological_sort(std::size_t n, std::span<const Edge> edges,
                                                        Keep keep) {
  std::vector<std::size_t> indegree(n, 0);
  std::vector<std::vector<StateIndex>> adj(n);
  for (const Edge& e : edges) {
    if (!keep(e)) continue;
    adj[e.from].push_back(e.to);
    ++indegree[e.to];
  }
  // Min-heap keeps the order deterministic and puts s0 first when it is a
  // source.
  std::priority_queue<StateIndex, std::vector<StateIndex>, std::greater<>> ready;
  for (StateIndex s = 0; s < n; ++s)
    if (indegree[s] == 0) ready.push(s);
  std::vector<StateIndex> order;
  order.reserve(n);
  while (!ready.empty()) {
    const StateIndex s = ready.top();
    ready.pop();
    order.push_back(s);
    for (StateIndex t : adj[s])
      if (--indegree[t] == 0) ready.push(t);
  }
  if (order.size() != n) return std::nullopt;
  return order;
}

void check_edge_indices(std::size_t n, std::span<const Edge> edges) {
  for (const Edge& e : edges) {
    if (e.from >= n || e.to >= n)
      throw ValidationError("edge (" + std::to_string(e.from) + ", " + std::to_string(e.to) +
                            ") references a state outside 0.." + std::to_string(n - 1));
  }
}

}  // namespace

PointedDag::PointedDag(std::vector<std::string> names, std::vector<Edge> edges,
                       std::vector<StateIndex> terminating)
    : names_(std::move(names)), edges_(std::move(edges)), terminating_(std::move(terminating)) {
  const std::size_t n = names_.size();
  if (n < 2) throw ValidationError("a pointed DAG needs s0 and at least one other state");
  check_edge_indices(n, edges_);
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  std::sort(terminating_.begin(), terminating_.end());
  terminating_.erase(std::unique(terminating_.begin(), terminating_.end()), terminating_.end());

  children_.assign(n, {});
  parents_.assign(n, {});
  for (const Edge& e : edges_) {
    children_[e.from].push_back(e.to);
    parents_[e.to].push_back(e.from);
  }
  for (auto& p : parents_) std::sort(p.begin(), p.end());

  is_terminating_.assign(n, false);
  for (StateIndex x : terminating_) {
    if (x >= n) throw ValidationError("terminating state index out of range");
    if (x == kInitialState) throw ValidationError("s0 cannot be a terminating state");
    is_terminating_[x] = true;
  }
  for (StateIndex s = 0; s < n; ++s) {
    const bool wraps = std::binary_search(children_[s].begin(), children_[s].end(), kInitialState);
    if (wraps && !is_terminating_[s])
      throw ValidationError("state '" + names_[s] + "' has an edge into s0 but is not terminating");
    if (!wraps && is_terminating_[s])
      throw ValidationError("terminating state '" + names_[s] + "' has no edge to s0");
    if (children_[s].empty())
      throw ValidationError("state '" + names_[s] + "' has no outgoing edge");
  }

  auto order = topological_sort(n, edges_, [](const Edge& e) { return e.to != kInitialState; });
  if (!order) throw ValidationError("non-wrap edges contain a cycle");
  topo_ = std::move(*order);

  const auto seen = reachable_from(children_, kInitialState);
  for (StateIndex s = 0; s < n; ++s)
    if (!seen[s]) throw ValidationError("state '" + names_[s] + "' is unreachable from s0");
  if (topo_.front() != kInitialState)
    throw ValidationError("s0 must be the unique source of the non-wrap graph");
}

std::optional<StateIndex> PointedDag::index_of(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<StateIndex>(it - names_.begin());
}

bool PointedDag::has_edge(StateIndex from, StateIndex to) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

PointedDag wrap_pointed_dag(const UnwrappedDag& dag) {
  const std::size_t n = dag.names.size();
  const StateIndex sf = dag.terminal;
  if (n < 3) throw ValidationError("unwrapped DAG needs s0, sf and at least one other state");
  if (sf == kInitialState || sf >= n) throw ValidationError("sf must be a state other than s0");
  check_edge_indices(n, dag.edges);

  std::vector<std::vector<StateIndex>> adj = adjacency(n, dag.edges);
  for (const Edge& e : dag.edges) {
    if (e.to == kInitialState)
      throw ValidationError("input already has an edge into s0; it is wrapped or not pointed");
    if (e.from == sf) throw ValidationError("sf must not have outgoing edges");
  }
  if (!topological_sort(n, dag.edges, [](const Edge&) { return true; }))
    throw ValidationError("graph contains a cycle");
  const auto seen = reachable_from(adj, kInitialState);
  for (StateIndex s = 0; s < n; ++s) {
    if (!seen[s]) throw ValidationError("state '" + dag.names[s] + "' is unreachable from s0");
    if (s != sf && adj[s].empty())
      throw ValidationError("state '" + dag.names[s] + "' is a dead end that does not reach sf");
  }

  auto remap = [sf](StateIndex s) -> StateIndex {
    if (s == sf) return kInitialState;
    return s > sf ? s - 1 : s;
  };
  std::vector<std::string> names;
  names.reserve(n - 1);
  for (StateIndex s = 0; s < n; ++s)
    if (s != sf) names.push_back(dag.names[s]);
  std::vector<Edge> edges;
  std::vector<StateIndex> terminating;
  for (const Edge& e : dag.edges) {
    edges.push_back({remap(e.from), remap(e.to)});
    if (e.to == sf) terminating.push_back(remap(e.from));
  }
  if (terminating.empty()) throw ValidationError("sf has no parents");
  return PointedDag(std::move(names), std::move(edges), std::move(terminating));
}

bool check_irreducible(std::size_t n, std::span<const Edge> edges) {
  if (n == 0) return false;
  check_edge_indices(n, edges);
  const auto fwd = adjacency(n, edges);
  std::vector<Edge> reversed;
  reversed.reserve(edges.size());
  for (const Edge& e : edges) reversed.push_back({e.to, e.from});
  const auto bwd = adjacency(n, reversed);
  const auto a = reachable_from(fwd, 0);
  const auto b = reachable_from(bwd, 0);
  return std::all_of(a.begin(), a.end(), [](bool v) { return v; }) &&
         std::all_of(b.begin(), b.end(), [](bool v) { return v; });
}

bool check_irreducible(const PointedDag& dag) { return check_irreducible(dag.size(), dag.edges()); }

AbsorptionCheck check_finitely_absorbing(const DiscreteKernel& kernel, std::size_t max_len) {
  if (max_len < 1) throw ValidationError("max_len must be >= 1");
  const std::size_t n = kernel.size();
  // alive[s]: some positive-probability path of the current length leaves s0,
  // avoids it afterwards and ends at s. This is the zero pattern of the
  // taboo-kernel power, so the test "all mass absorbed" is exact.
  std::vector<bool> alive(n, false);
  alive[kInitialState] = true;
  for (std::size_t step = 1; step <= max_len; ++step) {
    std::vector<bool> next(n, false);
    bool any = false;
    for (StateIndex s = 0; s < n; ++s) {
      if (!alive[s]) continue;
      for (const KernelEntry& e : kernel.row(s)) {
        if (e.to == kInitialState) continue;
        next[e.to] = true;
        any = true;
      }
    }
    if (!any) return AbsorptionCheck{true, step};
    alive = std::move(next);
  }
  return AbsorptionCheck{false, std::nullopt};
}

AbsorptionCheck check_finitely_absorbing(const PointedDag& dag, const DiscreteKernel& kernel,
                                         std::size_t max_len) {
  if (kernel.size() != dag.size())
    throw ValidationError("kernel size does not match the DAG");
  for (const Edge& e : kernel.support())
    if (!dag.has_edge(e.from, e.to))
      throw ValidationError("kernel has mass outside the DAG's edges");
  return check_finitely_absorbing(kernel, max_len);
}

ContinuousSpace1D::ContinuousSpace1D(double lo, double hi,
                                     std::function<double(double)> reference_density)
    : lo_(lo), hi_(hi), density_(std::move(reference_density)), mass_(0.0) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("continuous space needs finite lo < hi");
  if (!density_) throw ValidationError("reference density is required");
  const QuadratureRule rule = simpson_rule(lo_, hi_, 1025);
  mass_ = rule.integrate([&](double x) {
    const double d = density_(x);
    if (!(d >= 0.0) || !std::isfinite(d))
      throw ValidationError("reference density must be finite and nonnegative");
    return d;
  });
  if (!(mass_ > 0.0) || !std::isfinite(mass_))
    throw ValidationError("reference density must have finite positive mass");
}

ContinuousSpace1D::ContinuousSpace1D(double lo, double hi)
    : ContinuousSpace1D(lo, hi, [](double) { return 1.0; }) {}

}  // namespace rgfn
