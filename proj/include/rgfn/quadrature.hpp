#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace rgfn {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  template <class F>
  double integrate(F&& f) const {
    double total = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) total += weights[i] * f(nodes[i]);
    return total;
  }
};

/// Composite trapezoid rule with `points` equally spaced nodes on [lo, hi].
inline QuadratureRule trapezoid_rule(double lo, double hi, std::size_t points) {
  if (points < 2) throw std::invalid_argument("trapezoid rule needs at least 2 points");
  QuadratureRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    rule.nodes[i] = (i + 1 == points) ? hi : lo + h * static_cast<double>(i);
    rule.weights[i] = (i == 0 || i + 1 == points) ? 0.5 * h : h;
  }
  return rule;
}

/// Composite Simpson rule; `points` must be odd.
inline QuadratureRule simpson_rule(double lo, double hi, std::size_t points) {
  if (points < 3 || points % 2 == 0)
    throw std::invalid_argument("Simpson rule needs an odd number of points >= 3");
  QuadratureRule rule = trapezoid_rule(lo, hi, points);
  const double h = (hi - lo) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    if (i == 0 || i + 1 == points)
      rule.weights[i] = h / 3.0;
    else
      rule.weights[i] = (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
  }
  return rule;
}

}  // namespace rgfn
