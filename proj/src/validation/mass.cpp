#include "asp/validation/mass.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "asp/errors.hpp"
#include "asp/genlaw/kernel.hpp"
#include "asp/procs/transition.hpp"
#include "asp/specfun/quadrature.hpp"

namespace asp::validation {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

using Fn = std::function<double(double)>;

const specfun::IntegrationOptions& nested_opts() {
    static const specfun::IntegrationOptions o{1e-13, 1e-10, 4000, 9};
    return o;
}

// int_l^r f where f ~ (y - l)^{pl - 1} near l and ~ (r - y)^{pr - 1} near r.
// y = l + w^{1/p} flattens each end.
double flattened_piece(const Fn& f, double l, double r, double pl, double pr) {
    const auto& o = nested_opts();
    if (!std::isfinite(r)) {
        const double mid = l + 1.0;
        return flattened_piece(f, l, mid, pl, 1.0) + specfun::integrate(f, mid, inf, o);
    }
    const double mid = 0.5 * (l + r);
    auto left = [&](double w) {
        const double y = l + std::pow(w, 1.0 / pl);
        return y > l ? f(y) * std::pow(w, 1.0 / pl - 1.0) / pl : 0.0;
    };
    auto right = [&](double w) {
        const double y = r - std::pow(w, 1.0 / pr);
        return y < r ? f(y) * std::pow(w, 1.0 / pr - 1.0) / pr : 0.0;
    };
    return specfun::integrate(left, 0.0, std::pow(mid - l, pl), o) +
           specfun::integrate(right, 0.0, std::pow(r - mid, pr), o);
}

// Pieces split at the breakpoints; the start a uses power pa, every other end pb.
double flattened(const Fn& f, double a, double b, const std::vector<double>& breaks, double pa,
                 double pb) {
    std::vector<double> cuts{a};
    for (double c : breaks)
        if (c > a && c < b) cuts.push_back(c);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(b);
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
        total += flattened_piece(f, cuts[k], cuts[k + 1], k == 0 ? pa : 1.0, pb);
    return total;
}

const specfun::IntegrationOptions& pieces_opts() {
    static const specfun::IntegrationOptions o{1e-300, 1e-13, 4000, 9};
    return o;
}

}  // namespace

double grb_transition_mass(const genlaw::GeneratingLaw& law, double m, double T_end, double s,
                           double x, double t) {
    if (t == T_end && law.is_atomic()) {
        double total = 0.0;
        for (const auto& a : law.atoms()) total += procs::grb_transition_density(law, m, T_end, s, x, t, a.location);
        return total;
    }
    return specfun::integrate_pieces(
               [&](const genlaw::Abscissa& y) {
                   return procs::grb_transition_density(law, m, T_end, s, x, t, y);
               },
               x, law.upper(), law.breakpoints(), genlaw::tail_scale(law, m * T_end), pieces_opts())
        .value;
}

double norm_transition_mass(const procs::ProcessSpec& spec, double s, double x_norm, double t) {
    const auto& law = spec.law();
    if (t == 1.0 && law.is_atomic()) {
        double total = 0.0;
        for (const auto& a : law.atoms())
            if (a.location > x_norm) total += procs::norm_transition_density(spec, s, x_norm, t, a.location);
        return total;
    }
    return specfun::integrate_pieces(
               [&](const genlaw::Abscissa& r) { return procs::norm_transition_density(spec, s, x_norm, t, r); },
               x_norm, law.upper(), law.breakpoints(), genlaw::tail_scale(law, spec.total_activity()),
               pieces_opts())
        .value;
}

double asp_transition_mass(const procs::ProcessSpec& spec, double s, const std::vector<double>& x,
                           double t) {
    if (spec.dim() != 2) throw UnsupportedOperation("the transition mass check covers two-dimensional processes");
    if (x.size() != 2) throw DomainError("state must have two coordinates");
    const auto& law = spec.law();
    if (t == 1.0 && law.is_atomic())
        throw UnsupportedOperation("the terminal transition of an atomic law is a measure");
    const auto& m = spec.activity();
    const double T = spec.total_activity();
    const double a1 = std::min(1.0, t < 1.0 ? m[0] * (t - s) : m[0] * (1.0 - s));
    const double a2 = std::min(1.0, t < 1.0 ? m[1] * (t - s) : m[1] * (1.0 - s));
    const bool atomic = law.is_atomic();
    const double tail = atomic ? std::min(1.0, T * (1.0 - t)) : 1.0;
    const double upper = law.upper();
    const auto nodes = law.breakpoints();

    auto density = [&](double y1, double y2) {
        if (!(y1 > x[0] && y2 > x[1])) return 0.0;
        return procs::asp_transition_density(spec, s, x, t, {y1, y2});
    };
    auto inner = [&](double y1) {
        std::vector<double> br;
        for (double c : nodes) br.push_back(c - y1);
        const double hi = std::isfinite(upper) ? upper - y1 : inf;
        if (!(hi > x[1])) return 0.0;
        return flattened([&](double y2) { return density(y1, y2); }, x[1], hi, br, a2, tail);
    };
    std::vector<double> br;
    for (double c : nodes) br.push_back(c - x[1]);
    const double hi = std::isfinite(upper) ? upper - x[1] : inf;
    return flattened(inner, x[0], hi, br, a1, std::min(1.0, a2 + tail));
}

}  // namespace asp::validation
