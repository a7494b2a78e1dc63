#include "rgfn/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace rgfn {

FlowMeasure::FlowMeasure(std::vector<double> values, Normalization normalization)
    : values_(std::move(values)), normalization_(normalization) {
  bool positive = false;
  for (double v : values_) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError("flow measure values must be finite and nonnegative");
    positive = positive || v > 0.0;
  }
  if (!positive) throw ValidationError("flow measure must have a positive value");
  if (normalization_ == Normalization::LambdaS0One && std::abs(values_[kInitialState] - 1.0) > 1e-9)
    throw ValidationError("lambda_s0_one measure must equal 1 at s0");
}

FlowMeasure FlowMeasure::scaled(double factor, Normalization normalization) const {
  std::vector<double> v = values_;
  for (double& x : v) x *= factor;
  return FlowMeasure(std::move(v), normalization);
}

FlowMeasure FlowMeasure::normalized_at_initial() const {
  if (!(values_[kInitialState] > 0.0))
    throw ValidationError("cannot normalize at s0: value there is zero");
  std::vector<double> v = values_;
  const double base = v[kInitialState];
  for (double& x : v) x /= base;
  v[kInitialState] = 1.0;
  return FlowMeasure(std::move(v), Normalization::LambdaS0One);
}

double max_abs(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> flow_matching_residual(const DiscreteKernel& kernel, const FlowMeasure& flow,
                                           bool exempt_initial) {
  const std::size_t n = kernel.size();
  if (flow.size() != n) throw ValidationError("flow measure size does not match kernel");
  std::vector<double> inflow(n, 0.0);
  for (StateIndex s = 0; s < n; ++s)
    for (const KernelEntry& e : kernel.row(s)) inflow[e.to] += flow[s] * e.prob;
  std::vector<double> residual(n);
  for (StateIndex s = 0; s < n; ++s) residual[s] = flow[s] - inflow[s];
  if (exempt_initial) residual[kInitialState] = 0.0;
  return residual;
}

FlowMeasure solve_invariant_exact(const DiscreteKernel& kernel) {
  kernel.require_stochastic();
  const std::size_t n = kernel.size();
  const auto support = kernel.support();
  if (!check_irreducible(n, support))
    throw SingularSystemError("kernel support is not strongly connected; invariant measure is not unique");
  if (n == 1) return FlowMeasure({1.0}, Normalization::LambdaS0One);

  // lambda_j - sum_{i>=1} lambda_i P_ij = P_0j for j >= 1, i.e.
  // (I - P_rest)^T lambda_rest = P_0,rest.
  const auto m = static_cast<Eigen::Index>(n - 1);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  for (const KernelEntry& e : kernel.row(kInitialState))
    if (e.to != kInitialState) rhs(static_cast<Eigen::Index>(e.to - 1)) = e.prob;

  Eigen::VectorXd x;
  if (n <= DiscreteKernel::kDenseLimit) {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(m, m);
    for (StateIndex i = 1; i < n; ++i)
      for (const KernelEntry& e : kernel.row(i))
        if (e.to != kInitialState)
          a(static_cast<Eigen::Index>(e.to - 1), static_cast<Eigen::Index>(i - 1)) -= e.prob;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
    if (!lu.isInvertible()) throw SingularSystemError("reduced invariance system is singular");
    x = lu.solve(rhs);
  } else {
    std::vector<Eigen::Triplet<double>> trips;
    for (Eigen::Index k = 0; k < m; ++k) trips.emplace_back(k, k, 1.0);
    for (StateIndex i = 1; i < n; ++i)
      for (const KernelEntry& e : kernel.row(i))
        if (e.to != kInitialState)
          trips.emplace_back(static_cast<Eigen::Index>(e.to - 1), static_cast<Eigen::Index>(i - 1),
                             -e.prob);
    Eigen::SparseMatrix<double> a(m, m);
    a.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(a);
    if (lu.info() != Eigen::Success) throw SingularSystemError("reduced invariance system is singular");
    x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) throw SingularSystemError("sparse solve failed");
  }

  std::vector<double> lambda(n);
  lambda[kInitialState] = 1.0;
  for (Eigen::Index k = 0; k < m; ++k) {
    // Clamp roundoff-level negatives; the true solution is strictly positive.
    const double v = x(k);
    if (!std::isfinite(v) || v < -1e-9) throw SingularSystemError("invariance solve produced an invalid value");
    lambda[static_cast<std::size_t>(k) + 1] = std::max(0.0, v);
  }
  FlowMeasure result(std::move(lambda), Normalization::LambdaS0One);
  const double res = max_abs(flow_matching_residual(kernel, result, false));
  double scale = 1.0;
  for (double v : result.values()) scale = std::max(scale, v);
  if (res > 1e-10 * scale)
    throw SingularSystemError("invariance residual " + std::to_string(res) + " exceeds 1e-10");
  return result;
}

std::uint64_t detect_period(const DiscreteKernel& kernel, std::uint64_t probes, std::uint64_t seed,
                            std::uint64_t cap) {
  std::uint64_t g = 0;
  for (std::uint64_t i = 0; i < probes; ++i) {
    Rng rng = substream(seed, i);
    const auto ex = run_excursion(kernel, rng, cap);
    if (!ex) throw StepCapExceeded(i, cap);
    g = std::gcd(g, ex->length);
    if (g == 1) break;
  }
  return std::max<std::uint64_t>(g, 1);
}

FlowMeasure solve_invariant_power(const DiscreteKernel& kernel, const PowerOptions& options) {
  if (!(options.tol > 0.0)) throw ValidationError("tol must be positive");
  kernel.require_stochastic();
  const std::size_t n = kernel.size();
  const std::uint64_t period =
      detect_period(kernel, options.probe_excursions, options.probe_seed, options.probe_cap);

  std::vector<double> x(n, 1.0 / static_cast<double>(n));
  std::deque<std::vector<double>> window;
  std::vector<double> previous;
  for (std::size_t it = 1; it <= options.max_iters; ++it) {
    std::vector<double> next(n, 0.0);
    for (StateIndex s = 0; s < n; ++s)
      for (const KernelEntry& e : kernel.row(s)) next[e.to] += x[s] * e.prob;
    x = std::move(next);
    window.push_back(x);
    if (window.size() > period) window.pop_front();
    if (window.size() < period) continue;

    std::vector<double> avg(n, 0.0);
    for (const auto& w : window)
      for (std::size_t s = 0; s < n; ++s) avg[s] += w[s];
    const double base = avg[kInitialState];
    if (!(base > 0.0)) continue;
    for (double& v : avg) v /= base;

    if (!previous.empty()) {
      double diff = 0.0;
      for (std::size_t s = 0; s < n; ++s) diff = std::max(diff, std::abs(avg[s] - previous[s]));
      if (diff < options.tol) {
        avg[kInitialState] = 1.0;
        return FlowMeasure(std::move(avg), Normalization::LambdaS0One);
      }
    }
    previous = std::move(avg);
  }
  throw NonConvergenceError("power iteration did not converge within " +
                            std::to_string(options.max_iters) + " iterations");
}

OccupationEstimate estimate_invariant_occupation(const DiscreteKernel& kernel,
                                                 std::uint64_t excursions, std::uint64_t seed,
                                                 unsigned workers, std::uint64_t cap) {
  kernel.require_stochastic();
  auto est = estimate_invariant_occupation<DiscreteKernel>(kernel, excursions, seed, workers, cap);
  return est;
}

}  // namespace rgfn
