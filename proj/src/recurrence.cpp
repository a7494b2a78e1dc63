#include "rgfn/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rgfn {

void ReturnTimeCounts::add(std::uint64_t sigma) {
  ++returned;
  sum += sigma;
  sum_sq += static_cast<uint128>(sigma) * sigma;
  max_observed = std::max(max_observed, sigma);
  if (sigma < histogram.size()) ++histogram[sigma];
}

void ReturnTimeCounts::merge(const ReturnTimeCounts& other) {
  returned += other.returned;
  sum += other.sum;
  sum_sq += other.sum_sq;
  max_observed = std::max(max_observed, other.max_observed);
  if (other.histogram.size() > histogram.size()) histogram.resize(other.histogram.size(), 0);
  for (std::size_t k = 0; k < other.histogram.size(); ++k) histogram[k] += other.histogram[k];
}

ReturnTimeSummary ReturnTimeCounts::summarize(std::uint64_t excursions, std::uint64_t cap) const {
  ReturnTimeSummary out;
  out.cap = cap;
  out.excursions = excursions;
  out.returned = returned;
  out.max_observed = max_observed;
  out.histogram = histogram;
  out.return_fraction =
      excursions ? static_cast<double>(returned) / static_cast<double>(excursions) : 0.0;
  if (returned > 0) {
    const double n = static_cast<double>(returned);
    out.mean = static_cast<double>(sum) / n;
    if (returned > 1) {
      const double second = static_cast<double>(sum_sq) / n;
      out.variance = std::max(0.0, second - out.mean * out.mean) * n / (n - 1.0);
    }
  }
  return out;
}

double ReturnTimeSummary::mean_stderr() const {
  return returned > 0 ? std::sqrt(variance / static_cast<double>(returned)) : 0.0;
}

double ReturnTimeSummary::fraction_stderr() const {
  if (excursions == 0) return 0.0;
  return std::sqrt(return_fraction * (1.0 - return_fraction) / static_cast<double>(excursions));
}

CounterexampleKernel::CounterexampleKernel(std::uint64_t truncation) : truncation_(truncation) {
  if (truncation < 1) throw ValidationError("truncation must be >= 1");
  return_prob_.resize(static_cast<std::size_t>(truncation));
  for (std::uint64_t n = 0; n < truncation; ++n) return_prob_[n] = return_prob(n);
}

double CounterexampleKernel::advance_prob(std::uint64_t n) {
  const double k = static_cast<double>(n) + 1.0;
  return std::exp(-1.0 / (k * k));
}

double CounterexampleKernel::return_prob(std::uint64_t n) { return 1.0 - advance_prob(n); }

std::vector<KernelEntry> CounterexampleKernel::row(std::uint64_t n) {
  return {{kInitialState, return_prob(n)}, {static_cast<StateIndex>(n + 1), advance_prob(n)}};
}

CounterexampleKernel build_counterexample_kernel(std::uint64_t truncation) {
  return CounterexampleKernel(truncation);
}

CounterexampleAnalytic counterexample_analytic(std::uint64_t n_max) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  CounterexampleAnalytic out;
  out.prob_return_at.reserve(n_max);
  out.prob_return_by.reserve(n_max);
  // sigma_0 = n means 0 -> 1 -> ... -> n-1 -> 0, with probability
  // exp(-H_{n-1}) - exp(-H_n), where H_n = sum_{j=1}^n 1/j^2.
  double h_prev = 0.0;
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    const double j = static_cast<double>(n);
    const double h = h_prev + 1.0 / (j * j);
    out.prob_return_at.push_back(std::exp(-h_prev) - std::exp(-h));
    out.prob_return_by.push_back(-std::expm1(-h));
    h_prev = h;
  }
  out.limit = -std::expm1(-std::numbers::pi * std::numbers::pi / 6.0);
  return out;
}

}  // namespace rgfn
