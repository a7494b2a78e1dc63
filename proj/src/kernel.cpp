#include "rgfn/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgfn/error.hpp"
#include "rgfn/invariant.hpp"
#include "rgfn/quadrature.hpp"

namespace rgfn {

DiscreteKernel::DiscreteKernel(std::size_t n, std::vector<Triplet> entries,
                               std::optional<Storage> storage)
    : n_(n), storage_(storage.value_or(n <= kDenseLimit ? Storage::Dense : Storage::Sparse)) {
  if (n == 0) throw ValidationError("kernel needs at least one state");
  for (const Triplet& t : entries) {
    if (t.from >= n || t.to >= n) throw ValidationError("kernel entry index out of range");
    if (!std::isfinite(t.prob) || t.prob < 0.0)
      throw ValidationError("kernel entries must be finite and nonnegative");
  }
  std::stable_sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });

  row_ptr_.assign(n + 1, 0);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Triplet& t = entries[k];
    if (!entries_.empty() && k > 0 && entries[k - 1].from == t.from && entries[k - 1].to == t.to) {
      entries_.back().prob += t.prob;
      continue;
    }
    entries_.push_back({t.to, t.prob});
    ++row_ptr_[t.from + 1];
  }
  // Drop explicit zeros so the canonical row only lists the support.
  {
    std::vector<KernelEntry> kept;
    std::vector<std::size_t> counts(n, 0);
    std::size_t k = 0;
    for (StateIndex r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < row_ptr_[r + 1]; ++c, ++k) {
        if (entries_[k].prob > 0.0) {
          kept.push_back(entries_[k]);
          ++counts[r];
        }
      }
    }
    entries_ = std::move(kept);
    row_ptr_.assign(n + 1, 0);
    for (StateIndex r = 0; r < n; ++r) row_ptr_[r + 1] = row_ptr_[r] + counts[r];
  }

  cumulative_.resize(entries_.size());
  for (StateIndex r = 0; r < n; ++r) {
    double acc = 0.0;
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      acc += entries_[k].prob;
      cumulative_[k] = acc;
    }
  }

  if (storage_ == Storage::Dense) {
    dense_ = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (StateIndex r = 0; r < n; ++r)
      for (const KernelEntry& e : row(r))
        dense_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.to)) = e.prob;
  }
}

namespace {

std::vector<DiscreteKernel::Triplet> triplets_from_rows(const std::vector<std::vector<double>>& rows) {
  std::vector<DiscreteKernel::Triplet> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != rows.size()) throw ValidationError("kernel matrix must be square");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] != 0.0) out.push_back({r, c, rows[r][c]});
  }
  return out;
}

}  // namespace

DiscreteKernel::DiscreteKernel(const std::vector<std::vector<double>>& rows,
                               std::optional<Storage> storage)
    : DiscreteKernel(rows.size(), triplets_from_rows(rows), storage) {}

double DiscreteKernel::prob(StateIndex from, StateIndex to) const {
  if (from >= n_ || to >= n_) throw std::out_of_range("kernel index out of range");
  if (storage_ == Storage::Dense)
    return dense_(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to));
  const auto r = row(from);
  const auto it = std::lower_bound(r.begin(), r.end(), to,
                                   [](const KernelEntry& e, StateIndex c) { return e.to < c; });
  return (it != r.end() && it->to == to) ? it->prob : 0.0;
}

std::span<const KernelEntry> DiscreteKernel::row(StateIndex from) const {
  if (from >= n_) throw std::out_of_range("kernel row out of range");
  return {entries_.data() + row_ptr_[from], row_ptr_[from + 1] - row_ptr_[from]};
}

double DiscreteKernel::row_sum(StateIndex from) const {
  double sum = 0.0;
  if (storage_ == Storage::Dense) {
    const auto r = static_cast<Eigen::Index>(from);
    for (Eigen::Index c = 0; c < dense_.cols(); ++c) sum += dense_(r, c);
  } else {
    for (const KernelEntry& e : row(from)) sum += e.prob;
  }
  return sum;
}

std::vector<Edge> DiscreteKernel::support() const {
  std::vector<Edge> out;
  out.reserve(entries_.size());
  for (StateIndex r = 0; r < n_; ++r)
    for (const KernelEntry& e : row(r)) out.push_back({r, e.to});
  return out;
}

void DiscreteKernel::require_stochastic() const {
  for (StateIndex r = 0; r < n_; ++r) {
    const double dev = row_sum(r) - 1.0;
    if (std::abs(dev) > kRowSumTolerance) {
      std::ostringstream msg;
      msg << "kernel row " << r << " sums to 1" << (dev >= 0 ? "+" : "") << dev;
      throw ValidationError(msg.str());
    }
  }
}

Eigen::MatrixXd DiscreteKernel::dense() const {
  if (storage_ == Storage::Dense) return dense_;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_),
                                            static_cast<Eigen::Index>(n_));
  for (StateIndex r = 0; r < n_; ++r)
    for (const KernelEntry& e : row(r))
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.to)) = e.prob;
  return m;
}

StateIndex DiscreteKernel::sample_next(StateIndex from, Rng& rng) const {
  const std::size_t lo = row_ptr_[from];
  const std::size_t hi = row_ptr_[from + 1];
  if (lo == hi) throw ValidationError("cannot step from a state with an empty row");
  const double u = rng.uniform() * cumulative_[hi - 1];
  if (hi - lo <= 8) {
    for (std::size_t k = lo; k + 1 < hi; ++k)
      if (u < cumulative_[k]) return entries_[k].to;
    return entries_[hi - 1].to;
  }
  const auto first = cumulative_.begin() + static_cast<std::ptrdiff_t>(lo);
  const auto last = cumulative_.begin() + static_cast<std::ptrdiff_t>(hi - 1);
  const auto it = std::upper_bound(first, last, u);
  return entries_[static_cast<std::size_t>(it - cumulative_.begin())].to;
}

double continuous_normalization_error(const ContinuousKernel1D& kernel,
                                      std::span<const double> probes, std::size_t points) {
  const QuadratureRule rule = simpson_rule(kernel.space.lo(), kernel.space.hi(), points);
  double worst = 0.0;
  for (double x : probes) {
    const double mass = rule.integrate([&](double y) { return kernel.density(x, y); });
    worst = std::max(worst, std::abs(mass - 1.0));
  }
  return worst;
}

double DiscreteReward::total() const {
  double z = 0.0;
  for (double v : values) z += v;
  return z;
}

std::vector<StateIndex> DiscreteReward::support() const {
  std::vector<StateIndex> out;
  for (StateIndex s = 0; s < values.size(); ++s)
    if (values[s] > 0.0) out.push_back(s);
  return out;
}

double ContinuousReward::total(std::size_t points) const {
  return simpson_rule(space.lo(), space.hi(), points).integrate(density);
}

void validate_reward(const DiscreteReward& reward, const PointedDag& dag) {
  if (reward.values.size() != dag.size())
    throw ValidationError("reward must have one value per state");
  bool any = false;
  for (StateIndex s = 0; s < dag.size(); ++s) {
    const double r = reward.values[s];
    if (!std::isfinite(r) || r < 0.0)
      throw ValidationError("reward values must be finite and nonnegative");
    if (r > 0.0) {
      if (!dag.is_terminating(s))
        throw ValidationError("reward is positive on non-terminating state '" + dag.name(s) + "'");
      any = true;
    }
  }
  if (!any) throw ValidationError("reward has zero total mass");
}

std::pair<DiscreteKernel, FlowMeasure> kernel_from_edge_flows(
    const PointedDag& dag, const std::map<Edge, double>& edge_flows) {
  const std::size_t n = dag.size();
  std::vector<double> outflow(n, 0.0);
  for (const auto& [edge, flow] : edge_flows) {
    if (!dag.has_edge(edge.from, edge.to))
      throw ValidationError("edge flow given for a pair that is not a DAG edge");
    if (!std::isfinite(flow) || flow < 0.0)
      throw ValidationError("edge flows must be finite and nonnegative");
  }
  // Sum in column order so that row sums and state flows agree bit-for-bit
  // with the kernel's canonical row traversal.
  for (StateIndex s = 0; s < n; ++s) {
    for (StateIndex c : dag.children(s)) {
      const auto it = edge_flows.find({s, c});
      if (it != edge_flows.end()) outflow[s] += it->second;
    }
    if (!(outflow[s] > 0.0))
      throw ValidationError("state '" + dag.name(s) + "' has zero total outflow");
  }
  std::vector<DiscreteKernel::Triplet> entries;
  for (const auto& [edge, flow] : edge_flows)
    if (flow > 0.0) entries.push_back({edge.from, edge.to, flow / outflow[edge.from]});
  return {DiscreteKernel(n, std::move(entries)),
          FlowMeasure(std::move(outflow), Normalization::FlowUnnormalized)};
}

KernelReport validate_kernel(const DiscreteKernel& kernel, const PointedDag& dag) {
  KernelReport report;
  if (kernel.size() != dag.size()) {
    report.size_mismatch = "kernel has " + std::to_string(kernel.size()) + " states, DAG has " +
                           std::to_string(dag.size());
    return report;
  }
  const std::size_t n = kernel.size();
  for (StateIndex s = 0; s < n; ++s) {
    const double dev = kernel.row_sum(s) - 1.0;
    if (std::abs(dev) > DiscreteKernel::kRowSumTolerance) report.row_sums.push_back({s, dev});
    for (const KernelEntry& e : kernel.row(s))
      if (!dag.has_edge(s, e.to)) report.support.push_back({s, e.to, e.prob});
  }
  std::vector<bool> seen(n, false);
  std::vector<StateIndex> stack{kInitialState};
  seen[kInitialState] = true;
  while (!stack.empty()) {
    const StateIndex s = stack.back();
    stack.pop_back();
    for (const KernelEntry& e : kernel.row(s)) {
      if (!seen[e.to]) {
        seen[e.to] = true;
        stack.push_back(e.to);
      }
    }
  }
  for (StateIndex s = 0; s < n; ++s)
    if (!seen[s]) report.unreachable.push_back(s);
  return report;
}

}  // namespace rgfn
