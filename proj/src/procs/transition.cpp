#include "asp/procs/transition.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"
#include "asp/specfun/special.hpp"

namespace asp::procs {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using genlaw::Abscissa;

const specfun::IntegrationOptions& opts() {
    static const specfun::IntegrationOptions o{1e-300, 1e-13, 4000, 9};
    return o;
}

// log int_{z > x} (z - x)^{a-1} z^{1-K} nu(dz), evaluated directly from nu.
double log_grb_integral(const genlaw::GeneratingLaw& law, double a, double K, const Abscissa& x) {
    if (law.is_atomic()) {
        double l = -inf;
        for (const auto& at : law.atoms()) {
            const double gap = specfun::gap_below(at.location, x);
            if (gap > 0.0)
                l = specfun::log_add(l, std::log(at.weight) + (a - 1.0) * std::log(gap) +
                                            (1.0 - K) * std::log(at.location));
        }
        return l;
    }
    // integrate in the gap g = z - x so the singular factor g^{a-1} stays exact
    const double g_lo = std::max(0.0, specfun::gap_below(law.lower(), x));
    const double g_hi = std::isfinite(law.upper()) ? specfun::gap_below(law.upper(), x) : inf;
    if (!(g_hi > g_lo)) return -inf;
    auto logf = [&](const Abscissa& g) {
        const double gap = g.value();
        const double z = x.hi + (x.lo + gap);
        const double lp = law.log_density(z);
        if (lp == -inf || !(gap > 0.0)) return -inf;
        return lp + (a - 1.0) * std::log(gap) + (1.0 - K) * std::log(z);
    };
    std::vector<double> breaks;
    for (double c : law.breakpoints()) breaks.push_back(specfun::gap_below(c, x));
    const double ref = std::isfinite(g_hi) ? g_lo + 0.5 * (g_hi - g_lo) : g_lo + 1.0;
    double shift = logf(Abscissa(ref));
    if (!std::isfinite(shift)) shift = 0.0;
    const auto res = specfun::integrate_pieces(
        [&](const Abscissa& g) {
            const double l = logf(g);
            return l == -inf ? 0.0 : std::exp(l - shift);
        },
        g_lo, g_hi, breaks, genlaw::tail_scale(law, K), opts());
    return res.value > 0.0 ? std::log(res.value) + shift : -inf;
}

double checked_norm(const ProcessSpec& spec, const std::vector<double>& x, const char* what) {
    if (x.size() != static_cast<std::size_t>(spec.dim())) {
        std::ostringstream os;
        os << what << " has " << x.size() << " coordinates, expected " << spec.dim();
        throw DomainError(os.str());
    }
    for (double v : x)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be nonnegative");
    return std::accumulate(x.begin(), x.end(), 0.0);
}

void check_times(double s, double t) {
    if (!(s >= 0.0 && s < t && t <= 1.0)) throw DomainError("transition needs 0 <= s < t <= 1");
}

// log Psi_s(r_s), throwing when the state cannot be reached.
double log_psi_state(const ProcessSpec& spec, double s, double r_s) {
    if (s == 0.0 && r_s != 0.0) throw DomainError("the process starts at 0");
    const double l = genlaw::PsiKernel(spec.law(), spec.total_activity(), s).log_value(Abscissa(r_s));
    if (!(l > -inf) || (s > 0.0 && !(spec.law().survival(r_s) > 0.0))) {
        std::ostringstream os;
        os << "state norm " << r_s << " is not reachable under " << spec.law().describe();
        throw OutOfSupportError(os.str());
    }
    return l;
}

}  // namespace

double grb_transition_density(const genlaw::GeneratingLaw& law, double m, double T_end, double s,
                              double x, double t, const Abscissa& y) {
    if (!(m > 0.0) || !(T_end > 0.0)) throw DomainError("activity and horizon must be positive");
    if (!(s >= 0.0 && s < t && t <= T_end)) throw DomainError("GRB transition needs 0 <= s < t <= T");
    if (!(x >= 0.0)) throw DomainError("GRB state must be nonnegative");
    if (s == 0.0 && x != 0.0) throw DomainError("the GRB starts at 0");
    const double K = m * T_end;
    const double den = log_grb_integral(law, m * (T_end - s), K, Abscissa(x));
    if (!(den > -inf)) {
        std::ostringstream os;
        os << "GRB state " << x << " is not reachable under " << law.describe();
        throw OutOfSupportError(os.str());
    }
    const double dy = specfun::gap_above(y, x);
    if (!(dy > 0.0)) return 0.0;
    if (t == T_end) {
        double lw;
        if (law.is_atomic()) {
            lw = -inf;
            for (const auto& at : law.atoms())
                if (at.location == y.value()) lw = std::log(at.weight);
        } else {
            lw = law.log_density(y);
        }
        if (lw == -inf) return 0.0;
        return std::exp(lw + (m * (T_end - s) - 1.0) * std::log(dy) + (1.0 - K) * std::log(y.value()) - den);
    }
    const double num = log_grb_integral(law, m * (T_end - t), K, y);
    if (num == -inf) return 0.0;
    const double a = m * (T_end - t), b = m * (t - s);
    return std::exp(num - den - specfun::log_beta(a, b) + (b - 1.0) * std::log(dy));
}

double asp_log_transition_density(const ProcessSpec& spec, double s,
                                  const std::vector<double>& x, double t,
                                  const std::vector<double>& y) {
    check_times(s, t);
    const double rx = checked_norm(spec, x, "state x");
    const double ry = checked_norm(spec, y, "state y");
    for (int i = 0; i < spec.dim(); ++i)
        if (y[i] < x[i]) {
            std::ostringstream os;
            os << "coordinate " << i + 1 << " decreases (" << x[i] << " -> " << y[i] << ")";
            throw DomainError(os.str());
        }
    const double lps = log_psi_state(spec, s, rx);
    const auto& m = spec.activity();
    const double T = spec.total_activity();
    if (t < 1.0) {
        const double lpt = genlaw::PsiKernel(spec.law(), T, t).log_value(Abscissa(ry));
        if (lpt == -inf) return -inf;
        double l = lpt - lps;
        for (int i = 0; i < spec.dim(); ++i) l += dists::log_gamma_kernel(m[i] * (t - s), y[i] - x[i]);
        return l;
    }
    if (spec.law().is_atomic())
        throw UnsupportedOperation("the terminal transition of an atomic law is a measure; use terminal_transition_measure");
    const double lp = spec.law().log_density(ry);
    if (lp == -inf) return -inf;
    double l = specfun::log_gamma(T) + rx + lp - lps - (T - 1.0) * std::log(ry);
    for (int i = 0; i < spec.dim(); ++i) {
        const double a = m[i] * (1.0 - s);
        const double gap = y[i] - x[i];
        if (gap == 0.0) return a < 1.0 ? inf : (a > 1.0 ? -inf : l - specfun::log_gamma(a));
        l += (a - 1.0) * std::log(gap) - specfun::log_gamma(a);
    }
    return l;
}

double asp_transition_density(const ProcessSpec& spec, double s, const std::vector<double>& x,
                              double t, const std::vector<double>& y) {
    const double l = asp_log_transition_density(spec, s, x, t, y);
    return l == -inf ? 0.0 : std::exp(l);
}

namespace {

dists::DirichletParams terminal_alpha(const ProcessSpec& spec, double s) {
    std::vector<double> a(spec.activity());
    for (double& v : a) v *= 1.0 - s;
    return dists::DirichletParams(std::move(a));
}

double terminal_kernel_time(const ProcessSpec& spec, double s) {
    if (!(s >= 0.0 && s < 1.0)) throw DomainError("terminal transition needs s in [0, 1)");
    return 1.0 - spec.activity().back() * (1.0 - s) / spec.total_activity();
}

}  // namespace

TerminalTransitionMeasure::TerminalTransitionMeasure(const ProcessSpec& spec, double s,
                                                     std::vector<double> x)
    : spec_(spec), s_(s), x_(std::move(x)), r_s_(checked_norm(spec, x_, "state x")), log_psi_s_(0.0),
      kernel_(spec.law(), spec.total_activity(), terminal_kernel_time(spec, s)), alpha_(terminal_alpha(spec, s)) {
    if (!spec.law().is_atomic()) throw UnsupportedOperation("terminal_transition_measure needs an atomic law");
    log_psi_s_ = log_psi_state(spec, s, r_s_);
    atoms_ = genlaw::PsiKernel(spec.law(), spec.total_activity(), s).normalized_atoms(Abscissa(r_s_));
}

double TerminalTransitionMeasure::atom_density(std::size_t j, const std::vector<double>& z_head) const {
    const int n = spec_.dim();
    if (z_head.size() != static_cast<std::size_t>(n - 1)) throw DomainError("expected n - 1 coordinates");
    const double c = atoms_.at(j).location;
    const auto& m = spec_.activity();
    double y = x_[n - 1];
    double l = -log_psi_s_;
    for (int i = 0; i < n - 1; ++i) {
        if (z_head[i] < x_[i]) return 0.0;
        y += z_head[i];
        l += dists::log_gamma_kernel(m[i] * (1.0 - s_), z_head[i] - x_[i]);
    }
    const double psi = kernel_.psi(y, genlaw::Interval{c, c});
    if (!(psi > 0.0) || l == -inf) return 0.0;
    return std::exp(l + std::log(psi));
}

double TerminalTransitionMeasure::atom_density_dirichlet(std::size_t j,
                                                         const std::vector<double>& z_head) const {
    const int n = spec_.dim();
    if (z_head.size() != static_cast<std::size_t>(n - 1)) throw DomainError("expected n - 1 coordinates");
    const double c = atoms_.at(j).location;
    const double L = c - r_s_;
    std::vector<double> u(n - 1);
    double used = 0.0;
    for (int i = 0; i < n - 1; ++i) {
        if (z_head[i] < x_[i]) return 0.0;
        u[i] = (z_head[i] - x_[i]) / L;
        used += u[i];
    }
    if (used >= 1.0) return 0.0;
    return atoms_[j].weight * dists::dirichlet_density(alpha_, u) / std::pow(L, n - 1);
}

TerminalTransitionMeasure terminal_transition_measure(const ProcessSpec& spec, double s,
                                                      const std::vector<double>& x) {
    return TerminalTransitionMeasure(spec, s, x);
}

double norm_transition_density(const ProcessSpec& spec, double s, double x_norm, double t,
                               const Abscissa& r) {
    check_times(s, t);
    if (!(x_norm >= 0.0)) throw DomainError("norm state must be nonnegative");
    const double lps = log_psi_state(spec, s, x_norm);
    const double T = spec.total_activity();
    const double gap = specfun::gap_above(r, x_norm);
    if (!(gap > 0.0)) return 0.0;
    if (t < 1.0) {
        const double lpt = genlaw::PsiKernel(spec.law(), T, t).log_value(r);
        if (lpt == -inf) return 0.0;
        return std::exp(lpt - lps + dists::log_gamma_kernel(T * (t - s), gap));
    }
    const genlaw::PsiKernel psi_s(spec.law(), T, s);
    if (spec.law().is_atomic()) {
        for (const auto& a : psi_s.normalized_atoms(Abscissa(x_norm)))
            if (a.location == r.value()) return a.weight;
        return 0.0;
    }
    const double l = psi_s.log_unnormalized_density(r, x_norm);
    return l == -inf ? 0.0 : std::exp(l - lps);
}

double measure_change_density(const ProcessSpec& spec, double t, double r_t) {
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("measure change needs t in [0, 1)");
    if (!(r_t >= 0.0) || !std::isfinite(r_t)) throw DomainError("norm must be nonnegative");
    if (t == 0.0) return 1.0;
    return genlaw::big_psi(spec.law(), spec.total_activity(), t, r_t).value;
}

double coordinate_survival(const ProcessSpec& spec, int i, double t, double x) {
    if (!(t > 0.0 && t <= 1.0)) throw DomainError("the uniform map needs t in (0, 1]");
    if (i < 0 || i >= spec.dim()) throw DomainError("coordinate index out of range");
    if (!(x >= 0.0)) throw DomainError("coordinate value must be nonnegative");
    if (x == 0.0) return 1.0;
    const double b = spec.activity()[i] * t;
    const double a = spec.total_activity() - b;
    const auto& law = spec.law();
    auto f = [&](const Abscissa& y) {
        const double gap = specfun::gap_above(y, x);
        if (!(gap > 0.0)) return 0.0;
        return specfun::reg_inc_beta(gap / y.value(), a, b);
    };
    double v = 0.0;
    if (law.is_atomic()) {
        for (const auto& at : law.atoms()) v += at.weight * f(Abscissa(at.location));
    } else {
        const double lo = std::max(x, law.lower());
        if (law.upper() > lo)
            v = specfun::integrate_pieces(
                    [&](const Abscissa& y) { return f(y) * law.density(y.value()); }, lo, law.upper(),
                    law.breakpoints(), genlaw::tail_scale(law, spec.total_activity()), opts())
                    .value;
    }
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> uniform_map(const ProcessSpec& spec, double t, const std::vector<double>& x) {
    checked_norm(spec, x, "state x");
    std::vector<double> u(x.size());
    for (int i = 0; i < spec.dim(); ++i) u[i] = coordinate_survival(spec, i, t, x[i]);
    return u;
}

}  // namespace asp::procs
