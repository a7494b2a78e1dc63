#pragma once

#include <map>
#include <string>
#include <vector>

#include "rgfn/splitchain.hpp"

namespace rgfn {

/// Built-in continuous minorized kernels on [0, 1]. Each has the form
///
///   P_F(x, dy) = (1 - eps(x)) TN(y; x, sigma) dy + eps(x) nu(dy)
///
/// where TN is a normal step truncated to [0, 1].
///
///   interval-geometric  eps = epsilon (0.3), sigma (0.1), nu uniform
///   interval-beta       eps = epsilon (0.3), sigma (0.1), nu = Beta(alpha 2, beta 5)
///   interval-tilted     eps(x) = eps_lo + (eps_hi - eps_lo) x (0.2, 0.6), sigma (0.1),
///                       nu uniform
///
/// Unknown parameter names are rejected.
ContinuousMinorizedKernel make_catalog_instance(const std::string& name,
                                                const std::map<std::string, double>& params = {});

std::vector<std::string> catalog_names();

/// Density on [lo, hi] of N(mean, sigma^2) conditioned on [lo, hi].
double truncated_normal_density(double y, double mean, double sigma, double lo, double hi);

}  // namespace rgfn
