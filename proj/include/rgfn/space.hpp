#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rgfn {

using StateIndex = std::size_t;

/// Index of the initial state s0. The terminal state sf is merged into it.
inline constexpr StateIndex kInitialState = 0;

struct Edge {
  StateIndex from = 0;
  StateIndex to = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// A pointed DAG whose terminal state has been identified with s0.
///
/// Invariants, enforced on construction:
///  - edges that do not enter s0 form an acyclic graph;
///  - every state is reachable from s0;
///  - the states with an edge into s0 are exactly the terminating set X;
///  - s0 is not terminating, and every state has at least one out-edge.
///
/// Terminating states may also have children other than s0.
class PointedDag {
 public:
  PointedDag(std::vector<std::string> names, std::vector<Edge> edges,
             std::vector<StateIndex> terminating);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(StateIndex s) const { return names_.at(s); }
  std::optional<StateIndex> index_of(const std::string& name) const;

  /// All edges, sorted lexicographically, wrap edges included.
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  /// Sorted children of s, including s0 for terminating states.
  const std::vector<StateIndex>& children(StateIndex s) const { return children_.at(s); }
  const std::vector<StateIndex>& parents(StateIndex s) const { return parents_.at(s); }
  bool has_edge(StateIndex from, StateIndex to) const;

  /// Sorted terminating set X.
  const std::vector<StateIndex>& terminating() const noexcept { return terminating_; }
  bool is_terminating(StateIndex s) const { return is_terminating_.at(s); }

  /// Topological order of the non-wrap edges, starting with s0.
  const std::vector<StateIndex>& topological_order() const noexcept { return topo_; }

 private:
  std::vector<std::string> names_;
  std::vector<Edge> edges_;
  std::vector<std::vector<StateIndex>> children_;
  std::vector<std::vector<StateIndex>> parents_;
  std::vector<StateIndex> terminating_;
  std::vector<bool> is_terminating_;
  std::vector<StateIndex> topo_;
};

/// A pointed DAG before wrapping: explicit terminal state `terminal` (sf)
/// whose parents are the terminating states.
struct UnwrappedDag {
  std::vector<std::string> names;
  std::vector<Edge> edges;
  StateIndex terminal = 0;
};

/// Deletes sf and redirects every x -> sf edge to x -> s0. States after sf
/// are shifted down by one index.
PointedDag wrap_pointed_dag(const UnwrappedDag& dag);

/// Strong connectivity of the directed graph on n vertices.
bool check_irreducible(std::size_t n, std::span<const Edge> edges);
bool check_irreducible(const PointedDag& dag);

class DiscreteKernel;

struct AbsorptionCheck {
  bool harris = false;
  std::optional<std::size_t> steps;
};

/// Finds the minimal N <= max_len such that every excursion from s0 has
/// returned to s0 by step N, i.e. the chain with s0 made absorbing puts all
/// its mass on s0 after N steps. A positive answer certifies Harris
/// recurrence of the wrapped chain (bounded trajectory length).
///
/// The support of the kernel is propagated exactly with booleans; the
/// floating-point matrix power must agree within 1e-12.
AbsorptionCheck check_finitely_absorbing(const DiscreteKernel& kernel, std::size_t max_len);
AbsorptionCheck check_finitely_absorbing(const PointedDag& dag, const DiscreteKernel& kernel,
                                         std::size_t max_len);

/// Closed interval with a reference density acting as irreducibility measure.
class ContinuousSpace1D {
 public:
  ContinuousSpace1D(double lo, double hi, std::function<double(double)> reference_density);
  /// Lebesgue reference measure on [lo, hi].
  ContinuousSpace1D(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double width() const noexcept { return hi_ - lo_; }
  bool contains(double x) const noexcept { return x >= lo_ && x <= hi_; }
  double reference_density(double x) const { return density_(x); }
  double reference_mass() const noexcept { return mass_; }

 private:
  double lo_;
  double hi_;
  std::function<double(double)> density_;
  double mass_;
};

}  // namespace rgfn
