#include "rgfn/catalog.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "rgfn/error.hpp"

namespace rgfn {

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

void reject_unknown(const std::map<std::string, double>& params,
                    std::initializer_list<const char*> known, const std::string& name) {
  const std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : params)
    if (!allowed.count(key))
      throw ValidationError("catalog instance '" + name + "' has no parameter '" + key + "'");
}

double sample_truncated_normal(double mean, double sigma, double lo, double hi, Rng& rng) {
  std::normal_distribution<double> normal(mean, sigma);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double y = normal(rng);
    if (y >= lo && y <= hi) return y;
  }
  throw NonConvergenceError("truncated normal sampler exhausted its attempts");
}

ContinuousMinorizedKernel build(std::string name, std::function<double(double)> eps, double sigma,
                                std::function<double(Rng&)> nu_sampler,
                                std::function<double(double)> nu_density) {
  if (!(sigma > 0.0)) throw ValidationError("sigma must be positive");
  constexpr double lo = 0.0;
  constexpr double hi = 1.0;
  ContinuousMinorizedKernel mk{
      std::move(name),
      ContinuousKernel1D{ContinuousSpace1D(lo, hi), {}, {}},
      eps,
      nu_sampler,
      nu_density,
  };
  mk.base.density = [eps, sigma, nu_density](double x, double y) {
    if (y < lo || y > hi) return 0.0;
    const double e = eps(x);
    return (1.0 - e) * truncated_normal_density(y, x, sigma, lo, hi) + e * nu_density(y);
  };
  mk.base.sampler = [eps, sigma, nu_sampler](double x, Rng& rng) {
    if (rng.uniform() < eps(x)) return nu_sampler(rng);
    return sample_truncated_normal(x, sigma, lo, hi, rng);
  };
  validate_minorization(mk);
  return mk;
}

}  // namespace

double truncated_normal_density(double y, double mean, double sigma, double lo, double hi) {
  if (y < lo || y > hi) return 0.0;
  const double z = (y - mean) / sigma;
  const double mass = normal_cdf((hi - mean) / sigma) - normal_cdf((lo - mean) / sigma);
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi) * mass);
}

std::vector<std::string> catalog_names() {
  return {"interval-geometric", "interval-beta", "interval-tilted"};
}

ContinuousMinorizedKernel make_catalog_instance(const std::string& name,
                                                const std::map<std::string, double>& params) {
  auto uniform_sampler = [](Rng& rng) { return rng.uniform(); };
  auto uniform_density = [](double y) { return (y >= 0.0 && y <= 1.0) ? 1.0 : 0.0; };

  if (name == "interval-geometric") {
    reject_unknown(params, {"epsilon", "sigma"}, name);
    const double eps = param(params, "epsilon", 0.3);
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("epsilon must lie in (0, 1]");
    return build(name, [eps](double) { return eps; }, param(params, "sigma", 0.1),
                 uniform_sampler, uniform_density);
  }
  if (name == "interval-beta") {
    reject_unknown(params, {"epsilon", "sigma", "alpha", "beta"}, name);
    const double eps = param(params, "epsilon", 0.3);
    const double a = param(params, "alpha", 2.0);
    const double b = param(params, "beta", 5.0);
    if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("epsilon must lie in (0, 1]");
    if (!(a >= 1.0 && b >= 1.0)) throw ValidationError("alpha and beta must be >= 1");
    const double log_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    auto density = [a, b, log_norm](double y) {
      if (y < 0.0 || y > 1.0) return 0.0;
      if ((y == 0.0 && a > 1.0) || (y == 1.0 && b > 1.0)) return 0.0;
      return std::exp((a - 1.0) * std::log(y) + (b - 1.0) * std::log1p(-y) - log_norm);
    };
    auto sampler = [a, b](Rng& rng) {
      std::gamma_distribution<double> ga(a, 1.0), gb(b, 1.0);
      const double u = ga(rng);
      const double v = gb(rng);
      return u / (u + v);
    };
    return build(name, [eps](double) { return eps; }, param(params, "sigma", 0.1), sampler,
                 density);
  }
  if (name == "interval-tilted") {
    reject_unknown(params, {"eps_lo", "eps_hi", "sigma"}, name);
    const double e0 = param(params, "eps_lo", 0.2);
    const double e1 = param(params, "eps_hi", 0.6);
    if (!(e0 >= 0.0 && e0 <= 1.0 && e1 >= 0.0 && e1 <= 1.0))
      throw ValidationError("eps_lo and eps_hi must lie in [0, 1]");
    return build(name, [e0, e1](double x) { return e0 + (e1 - e0) * x; },
                 param(params, "sigma", 0.1), uniform_sampler, uniform_density);
  }
  throw ValidationError("unknown catalog instance '" + name + "'");
}

}  // namespace rgfn
