#include "asp/genlaw/generator.hpp"

#include <cmath>
#include <sstream>

#include "asp/errors.hpp"
#include "asp/genlaw/kernel.hpp"
#include "asp/specfun/quadrature.hpp"
#include "asp/specfun/special.hpp"

namespace asp::genlaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const specfun::IntegrationOptions& survival_opts() {
    static const specfun::IntegrationOptions o{1e-300, 1e-14, 4000, 10};
    return o;
}

void check_dim(int n) {
    if (n < 2) throw DomainError("dimension must be at least 2");
}

// (n-1)!/(n-1-k)! (-1/r)^k (1 - x/r)^{n-1-k}, the k-th x-derivative of (1 - x/r)^{n-1}.
double kernel_derivative(int n, int k, double x, double r) {
    if (!(r > x)) return 0.0;
    double c = 1.0;
    for (int j = 0; j < k; ++j) c *= (n - 1 - j);
    const double rest = n - 1 - k;
    const double base = (r - x) / r;
    return c * std::pow(-1.0 / r, k) * (rest == 0 ? 1.0 : std::pow(base, rest));
}

double law_survival_derivative(const GeneratingLaw& law, int n, double x, int k) {
    if (k > n - 1) throw DomainError("derivative order above n-1 is not available");
    if (law.is_atomic()) {
        double s = 0.0;
        for (const auto& a : law.atoms()) s += a.weight * kernel_derivative(n, k, x, a.location);
        return s;
    }
    const double lo = std::max(x, law.lower());
    const double hi = law.upper();
    if (!(hi > lo)) return 0.0;
    return specfun::integrate_pieces(
               [&](const specfun::Abscissa& r) {
                   const double rv = r.value();
                   if (!(rv > x)) return 0.0;
                   double c = 1.0;
                   for (int j = 0; j < k; ++j) c *= (n - 1 - j);
                   const double base = specfun::gap_above(r, x) / rv;
                   const double rest = n - 1 - k;
                   return c * std::pow(-1.0 / rv, k) * (rest == 0 ? 1.0 : std::pow(base, rest)) *
                          law.density(rv);
               },
               lo, hi, law.breakpoints(), tail_scale(law, n), survival_opts())
        .value;
}

double bisect_decreasing(const std::function<double(double)>& f, double u, double hi_hint) {
    // inf{x : f(x) <= u} for nonincreasing f with f(0) > u.
    double lo = 0.0, hi = hi_hint;
    if (!std::isfinite(hi)) {
        hi = 1.0;
        while (f(hi) > u) {
            lo = hi;
            hi *= 2.0;
            if (hi > 1e300) return inf;
        }
    }
    while (hi - lo > 1e-13 * std::max(1.0, hi)) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (f(mid) <= u) hi = mid; else lo = mid;
    }
    return hi;
}

}  // namespace

double marginal_survival(const GeneratingLaw& law, int n, double x) {
    check_dim(n);
    if (!(x >= 0.0) || std::isnan(x)) throw DomainError("marginal_survival needs x >= 0");
    if (x == 0.0) return 1.0;
    const double v = law_survival_derivative(law, n, x, 0);
    return std::clamp(v, 0.0, 1.0);
}

double survival_inverse(const GeneratingLaw& law, int n, double u) {
    check_dim(n);
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("survival_inverse needs u in [0, 1]");
    if (u == 1.0) return 0.0;
    if (u == 0.0) return law.upper();
    return bisect_decreasing([&](double x) { return marginal_survival(law, n, x); }, u, law.upper());
}

std::vector<double> fornberg_weights(const std::vector<double>& x, int m) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    double c1 = 1.0, c4 = x[0];
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < n; ++i) {
        const int mn = std::min<int>(static_cast<int>(i), m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = x[i];
        for (std::size_t j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (c4 * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

ArchGenerator::ArchGenerator(std::string name, Fn h, Fn inverse, DerivFn derivative, double zero_point)
    : name_(std::move(name)), h_(std::move(h)), inv_(std::move(inverse)), deriv_(std::move(derivative)),
      zero_(zero_point) {
    if (!h_) throw InvalidGenerator("generator function is empty");
    if (std::fabs(h_(0.0) - 1.0) > 1e-12) throw InvalidGenerator("generator must satisfy h(0) = 1");
}

ArchGenerator ArchGenerator::power(int k) {
    if (k < 1) throw InvalidGenerator("power generator needs k >= 1");
    auto h = [k](double x) { return x >= 1.0 ? 0.0 : std::pow(1.0 - std::max(0.0, x), k); };
    auto inv = [k](double u) { return u <= 0.0 ? 1.0 : 1.0 - std::pow(std::min(u, 1.0), 1.0 / k); };
    auto d = [k](double x, int j) {
        if (x >= 1.0 || j > k) return 0.0;
        double c = 1.0;
        for (int i = 0; i < j; ++i) c *= (k - i);
        return ((j % 2) ? -c : c) * std::pow(1.0 - x, k - j);
    };
    return ArchGenerator("power(" + std::to_string(k) + ")", h, inv, d, 1.0);
}

ArchGenerator ArchGenerator::exponential() {
    return ArchGenerator(
        "exponential", [](double x) { return std::exp(-x); },
        [](double u) { return u <= 0.0 ? inf : -std::log(std::min(u, 1.0)); },
        [](double x, int j) { return ((j % 2) ? -1.0 : 1.0) * std::exp(-x); }, inf);
}

ArchGenerator ArchGenerator::clayton(double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidGenerator("Clayton parameter must be positive");
    std::ostringstream os;
    os << "clayton(" << theta << ")";
    return ArchGenerator(
        os.str(), [theta](double x) { return std::pow(1.0 + theta * x, -1.0 / theta); },
        [theta](double u) { return u <= 0.0 ? inf : (std::pow(std::min(u, 1.0), -theta) - 1.0) / theta; },
        [theta](double x, int j) {
            double c = 1.0;
            for (int i = 0; i < j; ++i) c *= 1.0 + i * theta;
            return ((j % 2) ? -c : c) * std::pow(1.0 + theta * x, -1.0 / theta - j);
        },
        inf);
}

ArchGenerator ArchGenerator::from_law(const GeneratingLaw& law, int n) {
    check_dim(n);
    return ArchGenerator(
        "survival[" + law.describe() + ", n=" + std::to_string(n) + "]",
        [law, n](double x) { return marginal_survival(law, n, x); },
        [law, n](double u) { return survival_inverse(law, n, u); },
        [law, n](double x, int k) { return law_survival_derivative(law, n, x, k); }, law.upper());
}

ArchGenerator ArchGenerator::without_derivatives() const {
    ArchGenerator g = *this;
    g.deriv_ = {};
    g.name_ += " (finite differences)";
    return g;
}

double ArchGenerator::operator()(double x) const {
    if (std::isnan(x)) throw DomainError("generator argument is NaN");
    if (x == inf) return 0.0;
    if (x >= zero_) return 0.0;
    return h_(std::max(0.0, x));
}

double ArchGenerator::inverse(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("generator inverse needs u in [0, 1]");
    if (u >= 1.0) return 0.0;
    if (u <= 0.0) return zero_;
    if (inv_) return inv_(u);
    return bisect_decreasing([this](double x) { return (*this)(x); }, u, zero_);
}

double ArchGenerator::derivative(double x, int k, bool right) const {
    if (k < 0) throw DomainError("derivative order must be nonnegative");
    if (k == 0) return (*this)(x);
    if (deriv_) return deriv_(x, k);
    // Step balancing truncation (order 4 centred, 3 one-sided) against rounding.
    const double scale = std::max(1.0, std::fabs(x));
    const int half = k / 2 + 2;
    const double dc = scale * std::pow(1e-15, 1.0 / (k + 4));
    std::vector<double> offsets;
    double step;
    if (!right && x - half * dc >= 0.0) {
        step = dc;
        for (int i = -half; i <= half; ++i) offsets.push_back(i);
    } else {
        step = scale * std::pow(1e-15, 1.0 / (k + 3));
        for (int i = 0; i <= k + 2; ++i) offsets.push_back(i);
    }
    const auto w = fornberg_weights(offsets, k);
    double s = 0.0;
    for (std::size_t i = 0; i < offsets.size(); ++i) s += w[i] * (*this)(x + offsets[i] * step);
    return s / std::pow(step, k);
}

}  // namespace asp::genlaw
