#include "rgfn/splitchain.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rgfn/error.hpp"
#include "rgfn/parallel.hpp"

namespace rgfn {

namespace {

void check_probability_vector(const std::vector<double>& p, std::size_t n, const char* what) {
  if (p.size() != n) throw ValidationError(std::string(what) + " has the wrong length");
  double total = 0.0;
  for (double v : p) {
    if (!std::isfinite(v) || v < 0.0)
      throw ValidationError(std::string(what) + " must be finite and nonnegative");
    total += v;
  }
  if (std::abs(total - 1.0) > DiscreteKernel::kRowSumTolerance)
    throw ValidationError(std::string(what) + " must sum to 1");
}

DiscreteKernel build_remainder(const DiscreteKernel& base, const std::vector<double>& epsilon,
                               const std::vector<double>& nu) {
  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex s = 0; s < base.size(); ++s) {
    const auto row = remainder_kernel(base, epsilon, nu, s);
    for (StateIndex t = 0; t < row.size(); ++t)
      if (row[t] > 0.0) entries.push_back({s, t, row[t]});
  }
  return DiscreteKernel(base.size(), std::move(entries));
}

}  // namespace

std::vector<double> remainder_kernel(const DiscreteKernel& base, const std::vector<double>& epsilon,
                                     const std::vector<double>& nu, StateIndex s) {
  const std::size_t n = base.size();
  const double eps = epsilon.at(s);
  if (eps >= 1.0) return nu;
  std::vector<double> out(n);
  for (StateIndex t = 0; t < n; ++t) {
    const double diff = base.prob(s, t) - eps * nu[t];
    if (diff < 0.0) {
      std::ostringstream msg;
      msg << "minorization violated at (" << s << ", " << t << "): P = " << base.prob(s, t)
          << " < eps * nu = " << eps * nu[t];
      throw ValidationError(msg.str());
    }
    out[t] = diff / (1.0 - eps);
  }
  return out;
}

DiscreteMinorizedKernel::DiscreteMinorizedKernel(
    DiscreteKernel base, std::vector<double> epsilon, std::vector<double> nu,
    std::optional<std::vector<StateIndex>> declared_terminating)
    : base_(std::move(base)),
      epsilon_(std::move(epsilon)),
      nu_(std::move(nu)),
      remainder_(1, {{0, 0, 1.0}}) {
  const std::size_t n = base_.size();
  base_.require_stochastic();
  check_probability_vector(nu_, n, "nu");
  if (epsilon_.size() != n) throw ValidationError("epsilon has the wrong length");
  for (StateIndex s = 0; s < n; ++s) {
    const double e = epsilon_[s];
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
    if (e > 0.0) terminating_.push_back(s);
  }
  if (terminating_.empty()) throw ValidationError("epsilon is zero everywhere; X would be empty");
  if (declared_terminating) {
    auto declared = *declared_terminating;
    std::sort(declared.begin(), declared.end());
    declared.erase(std::unique(declared.begin(), declared.end()), declared.end());
    for (StateIndex x : declared)
      if (x >= n || epsilon_[x] <= 0.0)
        throw ValidationError("declared terminating state " + std::to_string(x) +
                              " has eps = 0; X must be the positivity set of eps");
    if (declared != terminating_)
      throw ValidationError("eps is positive outside the declared terminating set");
  }
  for (StateIndex s = 0; s < n; ++s)
    for (StateIndex t = 0; t < n; ++t)
      if (base_.prob(s, t) < epsilon_[s] * nu_[t])
        throw ValidationError("minorization P(s, s') >= eps(s) nu(s') fails at (" +
                              std::to_string(s) + ", " + std::to_string(t) + ")");
  remainder_ = build_remainder(base_, epsilon_, nu_);
  nu_cumulative_.resize(n);
  double acc = 0.0;
  for (StateIndex t = 0; t < n; ++t) nu_cumulative_[t] = (acc += nu_[t]);
}

StateIndex DiscreteMinorizedKernel::sample_nu(Rng& rng) const {
  const double u = rng.uniform() * nu_cumulative_.back();
  const auto it = std::upper_bound(nu_cumulative_.begin(), nu_cumulative_.end(), u);
  auto idx = static_cast<StateIndex>(it - nu_cumulative_.begin());
  if (idx >= nu_.size()) idx = nu_.size() - 1;
  // Skip zero-mass states that upper_bound can land on only through u = 0.
  while (nu_[idx] == 0.0 && idx + 1 < nu_.size()) ++idx;
  return idx;
}

std::vector<double> remainder_kernel(const DiscreteMinorizedKernel& mk, StateIndex s) {
  return remainder_kernel(mk.base(), mk.epsilon(), mk.nu(), s);
}

double mixture_identity_error(const DiscreteMinorizedKernel& mk) {
  double worst = 0.0;
  for (StateIndex s = 0; s < mk.size(); ++s) {
    const auto r = remainder_kernel(mk, s);
    const double e = mk.epsilon()[s];
    for (StateIndex t = 0; t < mk.size(); ++t) {
      const double mix = (1.0 - e) * r[t] + e * mk.nu()[t];
      worst = std::max(worst, std::abs(mix - mk.base().prob(s, t)));
    }
  }
  return worst;
}

SplitState split_step(const DiscreteMinorizedKernel& mk, SplitState z, Rng& rng) {
  SplitState next;
  next.x = z.y ? mk.sample_nu(rng) : mk.remainder().sample_next(z.x, rng);
  next.y = rng.uniform() < mk.epsilon()[next.x];
  return next;
}

SplitSimulation terminating_general_by_simulation(const DiscreteMinorizedKernel& mk,
                                                  std::uint64_t excursions, std::uint64_t seed,
                                                  unsigned workers, std::uint64_t cap) {
  if (excursions < 1) throw ValidationError("excursions must be >= 1");
  struct Acc {
    std::vector<std::uint64_t> counts;
    ReturnTimeCounts times;
    std::uint64_t first_capped = UINT64_MAX;
  };
  Acc init;
  init.counts.assign(mk.size(), 0);
  const Acc total = parallel_reduce(
      excursions, workers, init,
      [&](std::uint64_t i, Acc& acc) {
        Rng rng = substream(seed, i);
        SplitState z{mk.terminating().front(), true};
        for (std::uint64_t k = 1; k <= cap; ++k) {
          z = split_step(mk, z, rng);
          if (z.y) {
            ++acc.counts[z.x];
            acc.times.add(k);
            return;
          }
        }
        acc.first_capped = std::min(acc.first_capped, i);
      },
      [](Acc& into, const Acc& from) {
        for (std::size_t s = 0; s < into.counts.size(); ++s) into.counts[s] += from.counts[s];
        into.times.merge(from.times);
        into.first_capped = std::min(into.first_capped, from.first_capped);
      });
  if (total.first_capped != UINT64_MAX) throw StepCapExceeded(total.first_capped, cap);

  SplitSimulation out;
  out.terminating.method = TerminatingMethod::SplitSimulation;
  out.terminating.probs.resize(mk.size());
  out.terminating.stderr_.resize(mk.size());
  for (StateIndex s = 0; s < mk.size(); ++s) {
    out.terminating.probs[s] =
        static_cast<double>(total.counts[s]) / static_cast<double>(excursions);
    out.terminating.stderr_[s] = wilson_half_width(total.counts[s], excursions);
  }
  out.return_times = total.times.summarize(excursions, cap);
  return out;
}

GeneralTerminatingSolution solve_terminating_general_exact(const DiscreteMinorizedKernel& mk) {
  const FlowMeasure anchored = solve_invariant_exact(mk.base());
  double mass = 0.0;
  for (StateIndex s = 0; s < mk.size(); ++s) mass += mk.epsilon()[s] * anchored[s];
  if (!(mass > 0.0)) throw SingularSystemError("sum eps * lambda vanishes");
  FlowMeasure lambda = anchored.scaled(1.0 / mass, Normalization::EpsIntegralOne);
  TerminatingDistribution term;
  term.method = TerminatingMethod::SplitExact;
  term.probs.resize(mk.size());
  for (StateIndex s = 0; s < mk.size(); ++s) term.probs[s] = mk.epsilon()[s] * lambda[s];
  return {std::move(term), std::move(lambda)};
}

Theorem2Report verify_theorem2(const DiscreteMinorizedKernel& mk, const FlowMeasure& flow,
                               const std::vector<double>& reward, double tol) {
  if (flow.size() != mk.size() || reward.size() != mk.size())
    throw ValidationError("flow and reward must match the kernel size");
  Theorem2Report report;
  report.max_invariance_residual = max_abs(flow_matching_residual(mk.base(), flow, false));
  for (StateIndex s = 0; s < mk.size(); ++s)
    report.max_boundary_residual = std::max(report.max_boundary_residual,
                                            std::abs(reward[s] - mk.epsilon()[s] * flow[s]));
  if (report.max_invariance_residual > tol) {
    std::ostringstream msg;
    msg << "hypothesis failed: F is not invariant (residual " << report.max_invariance_residual
        << " > " << tol << ")";
    report.messages.push_back(msg.str());
  }
  if (report.max_boundary_residual > tol) {
    std::ostringstream msg;
    msg << "hypothesis failed: R != eps F (residual " << report.max_boundary_residual << " > "
        << tol << ")";
    report.messages.push_back(msg.str());
  }
  if (!report.messages.empty()) {
    report.verdict = Verdict::HypothesisFailure;
    return report;
  }
  report.conclusion_checked = true;
  const auto exact = solve_terminating_general_exact(mk);
  double z = 0.0;
  for (double r : reward) z += r;
  for (StateIndex s = 0; s < mk.size(); ++s)
    report.conclusion_error =
        std::max(report.conclusion_error, std::abs(exact.terminating.probs[s] - reward[s] / z));
  if (report.conclusion_error > tol) {
    report.verdict = Verdict::ConclusionFailure;
    report.messages.push_back("conclusion failed: terminating distribution is not R / R(X)");
  }
  return report;
}

bool check_harris_sufficient(const DiscreteMinorizedKernel& mk, double b) {
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("b must lie in (0, 1]");
  return *std::min_element(mk.epsilon().begin(), mk.epsilon().end()) >= b;
}

DiscreteMinorizedKernel minorized_from_wrapped(const PointedDag& dag, const DiscreteKernel& kernel) {
  if (kernel.size() != dag.size()) throw ValidationError("kernel size does not match the DAG");
  const std::size_t m = dag.size() - 1;
  std::vector<double> nu(m, 0.0), eps(m, 0.0);
  for (const KernelEntry& e : kernel.row(kInitialState)) {
    if (e.to == kInitialState) throw ValidationError("s0 must not transition to itself");
    nu[e.to - 1] = e.prob;
  }
  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex s = 1; s < dag.size(); ++s) {
    for (const KernelEntry& e : kernel.row(s))
      if (e.to != kInitialState) entries.push_back({s - 1, e.to - 1, e.prob});
    eps[s - 1] = kernel.prob(s, kInitialState);
    if (eps[s - 1] > 0.0)
      for (StateIndex t = 0; t < m; ++t)
        if (nu[t] > 0.0) entries.push_back({s - 1, t, eps[s - 1] * nu[t]});
  }
  std::vector<StateIndex> declared;
  for (StateIndex x : dag.terminating()) declared.push_back(x - 1);
  return DiscreteMinorizedKernel(DiscreteKernel(m, std::move(entries)), std::move(eps),
                                 std::move(nu), std::move(declared));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<double> probe_points(const ContinuousSpace1D& space) {
  std::vector<double> pts(kContinuousProbes);
  for (std::size_t i = 0; i < kContinuousProbes; ++i)
    pts[i] = space.lo() + space.width() * static_cast<double>(i) /
                              static_cast<double>(kContinuousProbes - 1);
  return pts;
}

}  // namespace

void validate_minorization(const ContinuousMinorizedKernel& mk) {
  if (!mk.base.density || !mk.base.sampler || !mk.epsilon || !mk.nu_sampler || !mk.nu_density)
    throw ValidationError("continuous minorized kernel needs sampler and density for P_F and nu");
  const auto probes = probe_points(mk.space());
  for (double x : probes) {
    const double e = mk.epsilon(x);
    if (!(e >= 0.0 && e <= 1.0)) throw ValidationError("epsilon must lie in [0, 1]");
    for (double y : probes) {
      const double p = mk.base.density(x, y);
      const double floor = e * mk.nu_density(y);
      if (p < floor - 1e-12 * std::max(1.0, floor)) {
        std::ostringstream msg;
        msg << "minorization fails at (" << x << ", " << y << "): p = " << p
            << " < eps * nu = " << floor;
        throw ValidationError(msg.str());
      }
    }
  }
  const double err = continuous_normalization_error(mk.base, probes);
  if (err > 1e-6)
    throw ValidationError("base density does not integrate to 1 (error " + std::to_string(err) + ")");
}

double remainder_density(const ContinuousMinorizedKernel& mk, double x, double y) {
  const double e = mk.epsilon(x);
  if (e >= 1.0) return mk.nu_density(y);
  const double r = (mk.base.density(x, y) - e * mk.nu_density(y)) / (1.0 - e);
  if (r < -1e-12) throw ValidationError("negative remainder density: minorization violated");
  return std::max(0.0, r);
}

double mixture_identity_error(const ContinuousMinorizedKernel& mk) {
  const auto probes = probe_points(mk.space());
  double worst = 0.0;
  for (double x : probes) {
    const double e = mk.epsilon(x);
    for (double y : probes) {
      const double mix = (1.0 - e) * remainder_density(mk, x, y) + e * mk.nu_density(y);
      worst = std::max(worst, std::abs(mix - mk.base.density(x, y)));
    }
  }
  return worst;
}

double sample_remainder(const ContinuousMinorizedKernel& mk, double x, Rng& rng) {
  const double e = mk.epsilon(x);
  if (e >= 1.0) return mk.nu_sampler(rng);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double y = mk.base.sampler(x, rng);
    const double p = mk.base.density(x, y);
    if (!(p > 0.0)) continue;
    const double accept = 1.0 - e * mk.nu_density(y) / p;
    if (rng.uniform() < accept) return y;
  }
  throw NonConvergenceError("remainder rejection sampler exhausted its attempts");
}

ContinuousSplitState split_step(const ContinuousMinorizedKernel& mk, ContinuousSplitState z,
                                Rng& rng) {
  ContinuousSplitState next;
  next.x = z.y ? mk.nu_sampler(rng) : sample_remainder(mk, z.x, rng);
  next.y = rng.uniform() < mk.epsilon(next.x);
  return next;
}

double Histogram::bin_lo(std::size_t b) const {
  return lo + (hi - lo) * static_cast<double>(b) / static_cast<double>(counts.size());
}

double Histogram::bin_hi(std::size_t b) const {
  return b + 1 == counts.size() ? hi : bin_lo(b + 1);
}

std::size_t Histogram::bin_of(double x) const {
  const double t = (x - lo) / (hi - lo) * static_cast<double>(counts.size());
  if (!(t > 0.0)) return 0;
  return std::min(counts.size() - 1, static_cast<std::size_t>(t));
}

std::vector<double> Histogram::probabilities() const {
  std::vector<double> p(counts.size(), 0.0);
  if (total == 0) return p;
  for (std::size_t b = 0; b < counts.size(); ++b)
    p[b] = static_cast<double>(counts[b]) / static_cast<double>(total);
  return p;
}

ContinuousSplitSimulation terminating_general_by_simulation(const ContinuousMinorizedKernel& mk,
                                                            std::uint64_t excursions,
                                                            std::uint64_t seed, unsigned workers,
                                                            std::uint64_t cap, std::size_t bins) {
  if (excursions < 1) throw ValidationError("excursions must be >= 1");
  if (bins < 1) throw ValidationError("bins must be >= 1");
  struct Acc {
    Histogram hist;
    ReturnTimeCounts times;
    std::uint64_t first_capped = UINT64_MAX;
  };
  Acc init;
  init.hist.lo = mk.space().lo();
  init.hist.hi = mk.space().hi();
  init.hist.counts.assign(bins, 0);
  const Acc total = parallel_reduce(
      excursions, workers, init,
      [&](std::uint64_t i, Acc& acc) {
        Rng rng = substream(seed, i);
        ContinuousSplitState z{mk.space().lo(), true};
        for (std::uint64_t k = 1; k <= cap; ++k) {
          z = split_step(mk, z, rng);
          if (z.y) {
            ++acc.hist.counts[acc.hist.bin_of(z.x)];
            ++acc.hist.total;
            acc.times.add(k);
            return;
          }
        }
        acc.first_capped = std::min(acc.first_capped, i);
      },
      [](Acc& into, const Acc& from) {
        for (std::size_t b = 0; b < into.hist.counts.size(); ++b)
          into.hist.counts[b] += from.hist.counts[b];
        into.hist.total += from.hist.total;
        into.times.merge(from.times);
        into.first_capped = std::min(into.first_capped, from.first_capped);
      });
  if (total.first_capped != UINT64_MAX) throw StepCapExceeded(total.first_capped, cap);
  return {total.hist, total.times.summarize(excursions, cap)};
}

namespace {

// Row-normalized Nystrom discretization K_ij = w_j p(x_i, x_j) / sum_k w_k p(x_i, x_k).
DiscreteKernel discretize(const ContinuousMinorizedKernel& mk, const QuadratureRule& rule) {
  const std::size_t n = rule.nodes.size();
  std::vector<DiscreteKernel::Triplet> entries;
  entries.reserve(n * n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row[j] = rule.weights[j] * mk.base.density(rule.nodes[i], rule.nodes[j]);
      total += row[j];
    }
    if (!(total > 0.0)) throw SingularSystemError("base density vanishes on the grid");
    for (std::size_t j = 0; j < n; ++j)
      if (row[j] > 0.0) entries.push_back({i, j, row[j] / total});
  }
  return DiscreteKernel(n, std::move(entries), DiscreteKernel::Storage::Dense);
}

double simpson_bin_integral(const std::function<double(double)>& f, double a, double b) {
  return simpson_rule(a, b, 33).integrate(f);
}

}  // namespace

double QuadratureSolution::lambda_at(double x) const {
  const auto& nodes = rule.nodes;
  if (x <= nodes.front()) return lambda.front();
  if (x >= nodes.back()) return lambda.back();
  const double h = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  const auto i = std::min(nodes.size() - 2, static_cast<std::size_t>((x - nodes.front()) / h));
  const double t = (x - nodes[i]) / (nodes[i + 1] - nodes[i]);
  return (1.0 - t) * lambda[i] + t * lambda[i + 1];
}

std::vector<double> QuadratureSolution::terminating_bins(const ContinuousMinorizedKernel& mk,
                                                         std::size_t bins) const {
  Histogram layout;
  layout.lo = rule.nodes.front();
  layout.hi = rule.nodes.back();
  layout.counts.assign(bins, 0);
  std::vector<double> mass(bins);
  double total = 0.0;
  for (std::size_t b = 0; b < bins; ++b) {
    mass[b] = simpson_bin_integral([&](double x) { return mk.epsilon(x) * lambda_at(x); },
                                   layout.bin_lo(b), layout.bin_hi(b));
    total += mass[b];
  }
  for (double& m : mass) m /= total;
  return mass;
}

QuadratureSolution solve_terminating_general_quadrature(const ContinuousMinorizedKernel& mk,
                                                        std::size_t points) {
  QuadratureSolution out;
  out.rule = trapezoid_rule(mk.space().lo(), mk.space().hi(), points);
  const DiscreteKernel chain = discretize(mk, out.rule);
  const FlowMeasure masses = solve_invariant_exact(chain);
  out.lambda.resize(points);
  double eps_mass = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    out.lambda[j] = masses[j] / out.rule.weights[j];
    eps_mass += out.rule.weights[j] * mk.epsilon(out.rule.nodes[j]) * out.lambda[j];
  }
  for (double& v : out.lambda) v /= eps_mass;
  return out;
}

double invariance_residual(const ContinuousMinorizedKernel& mk, const Density& flow,
                           std::size_t points) {
  const QuadratureRule rule = trapezoid_rule(mk.space().lo(), mk.space().hi(), points);
  const DiscreteKernel chain = discretize(mk, rule);
  std::vector<double> mass(points), inflow(points, 0.0);
  double scale = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double f = flow(rule.nodes[i]);
    scale = std::max(scale, std::abs(f));
    mass[i] = rule.weights[i] * f;
  }
  for (std::size_t i = 0; i < points; ++i)
    for (const KernelEntry& e : chain.row(i)) inflow[e.to] += mass[i] * e.prob;
  double worst = 0.0;
  for (std::size_t j = 0; j < points; ++j)
    worst = std::max(worst, std::abs(mass[j] - inflow[j]) / rule.weights[j]);
  return scale > 0.0 ? worst / scale : worst;
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw ValidationError("total variation needs equal-length vectors");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

Theorem2Report verify_theorem2(const ContinuousMinorizedKernel& mk, const Density& flow,
                               const Density& reward, const ContinuousTheorem2Options& options) {
  Theorem2Report report;
  report.max_invariance_residual = invariance_residual(mk, flow);
  const QuadratureRule grid = trapezoid_rule(mk.space().lo(), mk.space().hi(), kQuadraturePoints);
  double scale = 0.0;
  for (double x : grid.nodes) scale = std::max(scale, std::abs(reward(x)));
  for (double x : grid.nodes)
    report.max_boundary_residual =
        std::max(report.max_boundary_residual, std::abs(reward(x) - mk.epsilon(x) * flow(x)));
  if (scale > 0.0) report.max_boundary_residual /= scale;

  if (report.max_invariance_residual > options.tol) {
    std::ostringstream msg;
    msg << "hypothesis failed: F is not invariant on the grid (relative residual "
        << report.max_invariance_residual << " > " << options.tol << ")";
    report.messages.push_back(msg.str());
  }
  if (report.max_boundary_residual > options.tol) {
    std::ostringstream msg;
    msg << "hypothesis failed: R != eps F on the grid (relative residual "
        << report.max_boundary_residual << " > " << options.tol << ")";
    report.messages.push_back(msg.str());
  }
  if (!report.messages.empty()) {
    report.verdict = Verdict::HypothesisFailure;
    return report;
  }

  report.conclusion_checked = true;
  const auto sim = terminating_general_by_simulation(mk, options.excursions, options.seed,
                                                     options.workers, kDefaultStepCap, options.bins);
  std::vector<double> target(options.bins);
  double z = 0.0;
  for (std::size_t b = 0; b < options.bins; ++b) {
    target[b] = simpson_bin_integral(reward, sim.terminating.bin_lo(b), sim.terminating.bin_hi(b));
    z += target[b];
  }
  for (double& t : target) t /= z;
  report.conclusion_error = total_variation(sim.terminating.probabilities(), target);
  if (report.conclusion_error > options.tv_tol) {
    std::ostringstream msg;
    msg << "conclusion failed: histogram TV " << report.conclusion_error << " > "
        << options.tv_tol;
    report.messages.push_back(msg.str());
    report.verdict = Verdict::ConclusionFailure;
  }
  return report;
}

bool check_harris_sufficient(const ContinuousMinorizedKernel& mk, double b) {
  if (!(b > 0.0 && b <= 1.0)) throw ValidationError("b must lie in (0, 1]");
  const QuadratureRule grid = trapezoid_rule(mk.space().lo(), mk.space().hi(), kQuadraturePoints);
  const double h = mk.space().width() / static_cast<double>(kQuadraturePoints - 1);
  double lowest = 1.0;
  double slope = 0.0;
  double prev = mk.epsilon(grid.nodes.front());
  for (std::size_t i = 0; i < grid.nodes.size(); ++i) {
    const double e = mk.epsilon(grid.nodes[i]);
    lowest = std::min(lowest, e);
    if (i > 0) slope = std::max(slope, std::abs(e - prev) / h);
    prev = e;
  }
  return lowest - 0.5 * slope * h >= b;
}

}  // namespace rgfn
