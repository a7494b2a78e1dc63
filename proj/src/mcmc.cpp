#include "rgfn/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "rgfn/error.hpp"
#include "rgfn/rng.hpp"

namespace rgfn {

namespace {

void check_target(const std::vector<double>& target, const DiscreteKernel& proposal) {
  if (target.size() != proposal.size())
    throw ValidationError("target and proposal must live on the same space");
  for (double t : target)
    if (!(t > 0.0) || !std::isfinite(t)) throw ValidationError("target must be positive");
}

double acceptance(const std::vector<double>& target, const DiscreteKernel& proposal, StateIndex x,
                  StateIndex y) {
  if (x == y) return 1.0;
  const double forward = target[x] * proposal.prob(x, y);
  const double backward = target[y] * proposal.prob(y, x);
  return std::min(1.0, backward / forward);
}

double mean_of(const std::vector<double>& v, std::size_t begin = 0) {
  double s = 0.0;
  for (std::size_t i = begin; i < v.size(); ++i) s += v[i];
  return s / static_cast<double>(v.size() - begin);
}

}  // namespace

std::vector<StateIndex> metropolis_hastings(const std::vector<double>& target,
                                            const DiscreteKernel& proposal, std::uint64_t steps,
                                            std::uint64_t seed, StateIndex start,
                                            std::uint64_t chain) {
  check_target(target, proposal);
  if (start >= target.size()) throw ValidationError("start state out of range");
  Rng rng = substream(seed, chain);
  std::vector<StateIndex> out;
  out.reserve(steps);
  StateIndex x = start;
  for (std::uint64_t t = 0; t < steps; ++t) {
    const StateIndex y = proposal.sample_next(x, rng);
    if (y != x) {
      const double a = acceptance(target, proposal, x, y);
      if (a >= 1.0 || rng.uniform() < a) x = y;
    }
    out.push_back(x);
  }
  return out;
}

DiscreteKernel mh_transition_matrix(const std::vector<double>& target,
                                    const DiscreteKernel& proposal) {
  check_target(target, proposal);
  const std::size_t m = target.size();
  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex x = 0; x < m; ++x) {
    double stay = 0.0;
    for (const KernelEntry& e : proposal.row(x)) {
      if (e.to == x) {
        stay += e.prob;
        continue;
      }
      const double a = acceptance(target, proposal, x, e.to);
      entries.push_back({x, e.to, e.prob * a});
      stay += e.prob * (1.0 - a);
    }
    if (stay > 0.0) entries.push_back({x, x, stay});
  }
  return DiscreteKernel(m, std::move(entries));
}

DiscreteKernel lattice_walk_proposal(std::size_t m) {
  if (m < 2) throw ValidationError("lattice needs at least two states");
  std::vector<DiscreteKernel::Triplet> entries;
  for (StateIndex x = 0; x < m; ++x) {
    entries.push_back({x, x == 0 ? x : x - 1, 0.5});
    entries.push_back({x, x + 1 == m ? x : x + 1, 0.5});
  }
  return DiscreteKernel(m, std::move(entries));
}

std::vector<double> bimodal_lattice_target(std::size_t m) {
  if (m < 4) throw ValidationError("bimodal target needs at least four states");
  const double width = static_cast<double>(m) / 7.0;
  const double c1 = std::round(static_cast<double>(m - 1) / 4.0);
  const double c2 = std::round(3.0 * static_cast<double>(m - 1) / 4.0);
  std::vector<double> r(m);
  for (std::size_t x = 0; x < m; ++x) {
    const double d1 = (static_cast<double>(x) - c1) / width;
    const double d2 = (static_cast<double>(x) - c2) / width;
    r[x] = std::exp(-0.5 * d1 * d1) + std::exp(-0.5 * d2 * d2) + 1e-3;
  }
  return r;
}

std::vector<double> mode_indicator(const std::vector<StateIndex>& samples, std::size_t m) {
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) out[i] = samples[i] >= m / 2 ? 1.0 : 0.0;
  return out;
}

std::vector<double> normalize(const std::vector<double>& weights) {
  const double z = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(z > 0.0)) throw ValidationError("cannot normalize a zero measure");
  std::vector<double> p(weights);
  for (double& v : p) v /= z;
  return p;
}

double exact_autocorrelation(const DiscreteKernel& kernel, const std::vector<double>& stationary,
                             const std::vector<double>& statistic, std::size_t lag) {
  const std::size_t m = kernel.size();
  if (stationary.size() != m || statistic.size() != m)
    throw ValidationError("stationary distribution and statistic must match the kernel");
  double mean = 0.0, second = 0.0;
  for (std::size_t x = 0; x < m; ++x) {
    mean += stationary[x] * statistic[x];
    second += stationary[x] * statistic[x] * statistic[x];
  }
  const double var = second - mean * mean;
  // h = P^lag f
  std::vector<double> h = statistic;
  for (std::size_t k = 0; k < lag; ++k) {
    std::vector<double> next(m, 0.0);
    for (StateIndex x = 0; x < m; ++x)
      for (const KernelEntry& e : kernel.row(x)) next[x] += e.prob * h[e.to];
    h = std::move(next);
  }
  double cross = 0.0;
  for (std::size_t x = 0; x < m; ++x) cross += stationary[x] * statistic[x] * h[x];
  return (cross - mean * mean) / var;
}

std::vector<double> empirical_distribution(const std::vector<StateIndex>& samples, std::size_t m,
                                           std::size_t begin) {
  std::vector<double> p(m, 0.0);
  if (begin >= samples.size()) return p;
  for (std::size_t i = begin; i < samples.size(); ++i) {
    if (samples[i] >= m) throw ValidationError("sample outside the target space");
    p[samples[i]] += 1.0;
  }
  for (double& v : p) v /= static_cast<double>(samples.size() - begin);
  return p;
}

std::vector<double> autocorrelation(const std::vector<double>& series, std::size_t max_lag) {
  const std::size_t n = series.size();
  std::vector<double> out(max_lag, 0.0);
  if (n < 2) return out;
  const double mu = mean_of(series);
  double c0 = 0.0;
  for (double v : series) c0 += (v - mu) * (v - mu);
  if (c0 == 0.0) return out;
  for (std::size_t k = 1; k <= max_lag && k < n; ++k) {
    double ck = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) ck += (series[t] - mu) * (series[t + k] - mu);
    out[k - 1] = ck / c0;
  }
  return out;
}

double effective_sample_size(const std::vector<double>& series) {
  const std::size_t n = series.size();
  if (n < 4) return static_cast<double>(n);
  const double mu = mean_of(series);
  double c0 = 0.0;
  for (double v : series) c0 += (v - mu) * (v - mu);
  if (c0 == 0.0) return static_cast<double>(n);
  // Lags are computed on demand; the sum usually truncates long before n.
  auto rho_at = [&](std::size_t k) {
    if (k == 0) return 1.0;
    double ck = 0.0;
    for (std::size_t t = 0; t + k < n; ++t) ck += (series[t] - mu) * (series[t + k] - mu);
    return ck / c0;
  };
  // Geyer: sum pairs Gamma_k = rho_{2k} + rho_{2k+1} while positive.
  double tau = -1.0;
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double pair = rho_at(2 * k) + rho_at(2 * k + 1);
    if (!(pair > 0.0)) break;
    tau += 2.0 * pair;
  }
  tau = std::max(tau, 1.0 / static_cast<double>(n));
  return std::min(static_cast<double>(n), static_cast<double>(n) / tau);
}

double lag1_permutation_pvalue(const std::vector<double>& series, std::size_t permutations,
                               std::uint64_t seed) {
  if (series.size() < 3) return 1.0;
  const double observed = std::abs(autocorrelation(series, 1)[0]);
  std::vector<double> shuffled = series;
  std::size_t extreme = 0;
  for (std::size_t k = 0; k < permutations; ++k) {
    Rng rng = substream(seed, k);
    // Fisher-Yates with the toolkit's generator so results are portable.
    for (std::size_t i = shuffled.size() - 1; i > 0; --i) {
      const auto j = static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1));
      std::swap(shuffled[i], shuffled[std::min(j, i)]);
    }
    if (std::abs(autocorrelation(shuffled, 1)[0]) >= observed) ++extreme;
  }
  return static_cast<double>(extreme + 1) / static_cast<double>(permutations + 1);
}

std::vector<std::uint64_t> checkpoints(std::uint64_t n, std::size_t count) {
  std::set<std::uint64_t> points;
  const double lo = static_cast<double>(std::min<std::uint64_t>(100, n));
  const double hi = static_cast<double>(n);
  if (count < 2 || n <= 100) return {n};
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(count - 1);
    points.insert(static_cast<std::uint64_t>(std::llround(lo * std::pow(hi / lo, t))));
  }
  points.insert(n);
  return {points.begin(), points.end()};
}

std::pair<DiagnosticsReport, DiagnosticsReport> compare(
    const std::vector<StateIndex>& gfn_samples, const std::vector<StateIndex>& mh_samples,
    const std::vector<double>& target, const std::function<double(StateIndex)>& statistic,
    const CompareOptions& options) {
  const std::size_t m = target.size();
  const auto pi = normalize(target);
  auto diagnose = [&](const std::vector<StateIndex>& samples) {
    DiagnosticsReport report;
    std::vector<double> counts(m, 0.0);
    const auto marks = checkpoints(samples.size(), options.checkpoints);
    std::size_t next = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (samples[i] >= m) throw ValidationError("sample outside the target space");
      counts[samples[i]] += 1.0;
      if (next < marks.size() && i + 1 == marks[next]) {
        double tv = 0.0;
        for (std::size_t x = 0; x < m; ++x)
          tv += std::abs(counts[x] / static_cast<double>(i + 1) - pi[x]);
        report.tv_curve.emplace_back(marks[next], 0.5 * tv);
        ++next;
      }
    }
    std::vector<double> series(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) series[i] = statistic(samples[i]);
    report.autocorr = autocorrelation(series, options.max_lag);
    report.ess = effective_sample_size(series);
    return report;
  };
  return {diagnose(gfn_samples), diagnose(mh_samples)};
}

}  // namespace rgfn
