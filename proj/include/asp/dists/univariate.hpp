#pragma once

#include "asp/dists/rng.hpp"

namespace asp::dists {

// log of x^{k-1} e^{-x} / Gamma(k); -inf for x <= 0 (and +inf at x = 0 when k < 1).
double log_gamma_kernel(double k, double x);

// f_t(x) = 1{x>0} x^{mt-1} e^{-x} / Gamma(mt), the gamma-process marginal.
double gamma_density(double t, double m, double x);

// log of a Gamma(shape, 1) draw; exact for shapes far below one, where the
// draw itself underflows.
double sample_log_gamma(double shape, RngStream& rng);
double sample_gamma(double shape, double scale, RngStream& rng);

struct BetaDraw {
    double value;       // B
    double complement;  // 1 - B, computed without cancellation
};
BetaDraw sample_beta_pair(double a, double b, RngStream& rng);
double sample_beta(double a, double b, RngStream& rng);

}  // namespace asp::dists
