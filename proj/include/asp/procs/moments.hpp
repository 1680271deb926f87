#pragma once

#include <vector>

#include "asp/dists/multivariate.hpp"
#include "asp/procs/process.hpp"

namespace asp::procs {

// Mean, variance and covariance of xi_t given xi_s = x, 0 <= s < t <= 1.
// The increment is Liouville with parameters m (t - s); its radial moments
// come from the terminal norm law by
//   mu1 = (t-s)/(1-s) E[R_1 - R_s | R_s]
//   mu2 = (t-s)(1+T(t-s)) / ((1-s)(1+T(1-s))) E[(R_1 - R_s)^2 | R_s].
dists::MomentSet conditional_moments(const ProcessSpec& spec, double s,
                                     const std::vector<double>& x, double t);

}  // namespace asp::procs
