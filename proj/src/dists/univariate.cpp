#include "asp/dists/univariate.hpp"

#include <cmath>
#include <limits>

#include "asp/errors.hpp"
#include "asp/specfun/special.hpp"

namespace asp::dists {

namespace {

void check_shape(double a) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gamma shape must be positive and finite");
}

// Marsaglia-Tsang squeeze for shape >= 1, returned in log space.
double log_gamma_mt(double shape, RngStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = rng.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = rng.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v)))
            return std::log(d) + std::log(v);
    }
}

}  // namespace

double log_gamma_kernel(double k, double x) {
    if (!(x >= 0.0)) return -std::numeric_limits<double>::infinity();
    if (x == 0.0) {
        if (k < 1.0) return std::numeric_limits<double>::infinity();
        if (k > 1.0) return -std::numeric_limits<double>::infinity();
        return 0.0;
    }
    return (k - 1.0) * std::log(x) - x - specfun::log_gamma(k);
}

double gamma_density(double t, double m, double x) {
    if (!(t > 0.0) || !(m > 0.0)) throw DomainError("gamma_density needs t > 0 and m > 0");
    if (!(x > 0.0)) return 0.0;
    return std::exp(log_gamma_kernel(m * t, x));
}

double sample_log_gamma(double shape, RngStream& rng) {
    check_shape(shape);
    if (shape >= 1.0) return log_gamma_mt(shape, rng);
    // G_a = G_{a+1} U^{1/a}
    const double lg = log_gamma_mt(shape + 1.0, rng);
    return lg + std::log(rng.uniform()) / shape;
}

double sample_gamma(double shape, double scale, RngStream& rng) {
    if (!(scale > 0.0) || !std::isfinite(scale)) throw DomainError("gamma scale must be positive");
    return scale * std::exp(sample_log_gamma(shape, rng));
}

BetaDraw sample_beta_pair(double a, double b, RngStream& rng) {
    const double la = sample_log_gamma(a, rng);
    const double lb = sample_log_gamma(b, rng);
    // G_a / (G_a + G_b) evaluated from the log ratio.
    return {1.0 / (1.0 + std::exp(lb - la)), 1.0 / (1.0 + std::exp(la - lb))};
}

double sample_beta(double a, double b, RngStream& rng) { return sample_beta_pair(a, b, rng).value; }

}  // namespace asp::dists
