#include <algorithm>
#include <cmath>
#include <sstream>

#include "asp/errors.hpp"
#include "asp/genlaw/generator.hpp"
#include "asp/specfun/quadrature.hpp"

namespace asp::genlaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

void validate(const ArchGenerator& gen, int n) {
    const double span = std::isfinite(gen.zero_point()) ? gen.zero_point()
                                                        : std::min(1e3, gen.inverse(1e-8));
    constexpr int points = 200;
    constexpr double tol = 1e-7;
    // uniform in x, plus uniform in the level h(x) so that regions where h moves
    // fast are not stepped over
    std::vector<double> xs;
    for (int i = 1; i <= points + 1; ++i) xs.push_back(span * i / (points + 1));
    for (int i = 1; i <= points; ++i) {
        const double x = gen.inverse(1.0 - static_cast<double>(i) / (points + 1));
        if (x > 0.0 && x < span) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end(), [](double a, double b) { return b - a < 1e-9 * b; }), xs.end());
    xs.insert(xs.begin(), 0.0);

    const double sign = ((n - 2) % 2) ? -1.0 : 1.0;
    std::vector<double> g(xs.size());
    double prev_h = 1.0;
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double x = xs[i];
        const double h = gen(x);
        if (h > prev_h + tol || h < -tol || h > 1.0 + tol) {
            std::ostringstream os;
            os << gen.name() << " is not a nonincreasing map into [0, 1] near x = " << x;
            throw InvalidGenerator(os.str());
        }
        prev_h = h;
        for (int k = 1; k <= n - 2; ++k) {
            const double v = ((k % 2) ? -1.0 : 1.0) * gen.derivative(x, k);
            if (v < -tol) {
                std::ostringstream os;
                os << gen.name() << " violates (-1)^" << k << " h^(" << k << ") >= 0 at x = " << x
                   << " (value " << v << "); it is not " << n << "-monotone";
                throw InvalidGenerator(os.str());
            }
        }
        g[i] = sign * gen.derivative(x, n - 2);
    }
    g[0] = sign * gen.derivative(0.0, n - 2, true);
    for (std::size_t i = 1; i + 1 < xs.size(); ++i) {
        const double left = (g[i] - g[i - 1]) / (xs[i] - xs[i - 1]);
        const double right = (g[i + 1] - g[i]) / (xs[i + 1] - xs[i]);
        // tolerances scaled to the local spacing, as a second difference would be
        const double w = xs[i + 1] - xs[i - 1];
        if ((g[i + 1] - g[i]) > tol || (right - left) * w < -tol) {
            std::ostringstream os;
            os << gen.name() << ": (-1)^" << n - 2 << " h^(" << n - 2
               << ") is not nonincreasing and convex near x = " << xs[i] << "; it is not " << n
               << "-monotone";
            throw InvalidGenerator(os.str());
        }
    }
}

}  // namespace

WilliamsonLaw::WilliamsonLaw(ArchGenerator gen, int n) : gen_(std::move(gen)), n_(n) {
    if (n < 2) throw DomainError("dimension must be at least 2");
}

double WilliamsonLaw::cdf(double x) const {
    if (std::isnan(x)) throw DomainError("cdf argument is NaN");
    if (x <= 0.0) return 0.0;
    if (x == inf) return 1.0;
    double s = gen_(x);
    double xk = 1.0;
    for (int k = 1; k <= n_ - 2; ++k) {
        xk *= x;
        s += ((k % 2) ? -1.0 : 1.0) * xk * gen_.derivative(x, k) / factorial(k);
    }
    xk *= x;
    const int top = n_ - 1;
    const double signed_top = ((top % 2) ? -1.0 : 1.0) * gen_.derivative(x, top, true);
    s += xk * std::max(0.0, signed_top) / factorial(top);
    return std::clamp(1.0 - s, 0.0, 1.0);
}

WilliamsonLaw williamson_inverse(const ArchGenerator& gen, int n) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    validate(gen, n);
    return WilliamsonLaw(gen, n);
}

double marginal_survival(const WilliamsonLaw& law, int n, double x) {
    if (n < 2) throw DomainError("dimension must be at least 2");
    if (!(x >= 0.0)) throw DomainError("marginal_survival needs x >= 0");
    if (x == 0.0) return 1.0 - law.cdf(0.0);
    const double upper = law.upper();
    if (!(upper > x)) return 0.0;
    // int_x^inf (n-1)(1 - x/r)^{n-2} (x/r^2) (1 - G(r)) dr
    auto f = [&](double r) {
        if (!(r > x)) return 0.0;
        const double base = (r - x) / r;
        return (n - 1) * (n == 2 ? 1.0 : std::pow(base, n - 2)) * x / (r * r) * (1.0 - law.cdf(r));
    };
    specfun::IntegrationOptions o{1e-15, 1e-12, 8000, 9};
    return std::clamp(specfun::integrate(f, x, upper, o), 0.0, 1.0);
}

}  // namespace asp::genlaw
