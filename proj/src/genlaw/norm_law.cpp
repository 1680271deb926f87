#include "asp/genlaw/norm_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"

namespace asp::genlaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const specfun::IntegrationOptions& norm_opts() {
    static const specfun::IntegrationOptions o{1e-300, 1e-12, 4000, 9};
    return o;
}

// Pieces of a CDF of order one; tiny brackets near a quantile need an absolute floor.
const specfun::IntegrationOptions& piece_opts() {
    static const specfun::IntegrationOptions o{1e-16, 1e-12, 4000, 9};
    return o;
}

}  // namespace

ConditionalNormLaw::ConditionalNormLaw(const GeneratingLaw& law, double total_activity, double s,
                                       double t, double r_s)
    : law_(law), T_(total_activity), s_(s), t_(t), r_s_(r_s), psi_s_(law, total_activity, s) {
    if (!(s >= 0.0 && s < t && t <= 1.0)) throw DomainError("conditional norm law needs 0 <= s < t <= 1");
    if (!(r_s >= 0.0) || !std::isfinite(r_s)) throw DomainError("norm state must be nonnegative");
    if (s == 0.0 && r_s != 0.0) throw DomainError("the norm process starts at 0");
    if (!(law.survival(r_s) > 0.0)) {
        std::ostringstream os;
        os << "norm state " << r_s << " is not reachable under " << law.describe();
        throw OutOfSupportError(os.str());
    }
    log_psi_s_ = psi_s_.log_value(Abscissa(r_s));
    if (!(log_psi_s_ > -inf)) throw OutOfSupportError("Psi_s vanishes at the norm state");
    if (t < 1.0) psi_t_.emplace(law, total_activity, t);

    if (t == 1.0 && law.is_atomic()) {
        atoms_ = psi_s_.normalized_atoms(Abscissa(r_s));
        return;
    }
    cuts_.push_back(r_s);
    for (double b : law.breakpoints())
        if (b > r_s && b < law.upper()) cuts_.push_back(b);
    if (std::isfinite(law.upper())) {
        cuts_.push_back(law.upper());
    } else {
        cuts_.push_back(cuts_.back() + tail_scale(law, T_));
        tail_ = true;
    }
    cum_.assign(cuts_.size(), 0.0);
    for (std::size_t i = 0; i + 1 < cuts_.size(); ++i) cum_[i + 1] = cum_[i] + partial(cuts_[i], cuts_[i + 1]);
    if (tail_) {
        const double start = cuts_.back();
        const double scale = tail_scale(law, T_);
        cum_.push_back(cum_.back() + specfun::integrate(
                                         [&](double v) { return scale * density(start + scale * v); }, 0.0,
                                         inf, norm_opts()));
    }
}

double ConditionalNormLaw::log_density(const Abscissa& r) const {
    if (is_atomic()) throw UnsupportedOperation("terminal law of an atomic nu has no density");
    if (t_ == 1.0) return psi_s_.log_unnormalized_density(r, r_s_) - log_psi_s_;
    const double gap = specfun::gap_above(r, r_s_);
    if (!(gap > 0.0)) return -inf;
    const double lt = psi_t_->log_value(r);
    if (lt == -inf) return -inf;
    return lt - log_psi_s_ + dists::log_gamma_kernel(T_ * (t_ - s_), gap);
}

double ConditionalNormLaw::density(double r) const {
    const double l = log_density(Abscissa(r));
    return l == -inf ? 0.0 : std::exp(l);
}

double ConditionalNormLaw::partial(double a, double b) const {
    if (!(b > a)) return 0.0;
    return specfun::integrate_tanh_sinh(
               [&](double, double gl, double gr) {
                   const double l = log_density(specfun::anchored(a, b, gl, gr));
                   return l == -inf ? 0.0 : std::exp(l);
               },
               a, b, piece_opts())
        .value;
}

double ConditionalNormLaw::total_mass() const {
    if (is_atomic()) {
        double m = 0.0;
        for (const auto& a : atoms_) m += a.weight;
        return m;
    }
    return cum_.back();
}

double ConditionalNormLaw::cdf(double r) const {
    if (is_atomic()) {
        double c = 0.0;
        for (const auto& a : atoms_)
            if (a.location <= r) c += a.weight;
        return std::min(1.0, c);
    }
    if (r <= r_s_) return 0.0;
    const auto it = std::upper_bound(cuts_.begin(), cuts_.end(), r);
    const std::size_t j = static_cast<std::size_t>(it - cuts_.begin()) - 1;
    if (j + 1 >= cuts_.size() && !tail_) return std::min(1.0, cum_.back());
    return std::min(1.0, cum_[j] + partial(cuts_[j], r));
}

double ConditionalNormLaw::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    if (is_atomic()) {
        double c = 0.0;
        for (const auto& a : atoms_) {
            c += a.weight;
            if (c >= u) return a.location;
        }
        return atoms_.back().location;
    }
    // Work against the quadrature mass so u = 1 stays inside the support.
    const double target = u * cum_.back();
    std::size_t j = 0;
    while (j + 2 < cum_.size() && cum_[j + 1] < target) ++j;
    double lo = cuts_[std::min(j, cuts_.size() - 1)];
    double f_lo = cum_[j];
    double hi;
    if (j + 1 < cuts_.size()) {
        hi = cuts_[j + 1];
    } else {
        // Tail piece: grow the bracket.
        const double scale = tail_scale(law_, T_);
        hi = lo + scale;
        while (f_lo + partial(lo, hi) < target) hi += 2.0 * (hi - lo);
    }
    const double seg_mass = (j + 1 < cum_.size() ? cum_[j + 1] : cum_.back()) - f_lo;
    double r = seg_mass > 0.0 ? lo + (target - f_lo) / seg_mass * (hi - lo) : 0.5 * (lo + hi);
    if (!(r > lo && r < hi)) r = 0.5 * (lo + hi);
    // Newton with bisection fallback; the CDF is carried along and only the
    // stretch between successive iterates is integrated.
    double f = f_lo + partial(lo, r);
    for (int it = 0; it < 200; ++it) {
        if (std::fabs(f - target) <= 1e-12) return r;
        if (f < target) {
            lo = r;
        } else {
            hi = r;
        }
        const double d = density(r);
        double next = d > 0.0 ? r - (f - target) / d : 0.5 * (lo + hi);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == r || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::fabs(hi)) return r;
        f += next > r ? partial(r, next) : -partial(next, r);
        r = next;
    }
    return r;
}

double ConditionalNormLaw::sample(dists::RngStream& rng) const {
    if (is_atomic()) {
        const double u = rng.uniform();
        double c = 0.0;
        for (const auto& a : atoms_) {
            c += a.weight;
            if (u < c) return a.location;
        }
        return atoms_.back().location;
    }
    return quantile(rng.uniform());
}

double ConditionalNormLaw::increment_moment(int k) const {
    if (k < 0 || k > 2) throw DomainError("increment moment order must be 0, 1 or 2");
    if (is_atomic()) {
        double m = 0.0;
        for (const auto& a : atoms_) m += a.weight * std::pow(a.location - r_s_, k);
        return m;
    }
    const double upper = tail_ ? inf : cuts_.back();
    const std::vector<double> inner(cuts_.begin() + 1, cuts_.end());
    return specfun::integrate_pieces(
               [&](const Abscissa& r) {
                   const double l = log_density(r);
                   return l == -inf ? 0.0 : std::pow(specfun::gap_above(r, r_s_), k) * std::exp(l);
               },
               r_s_, upper, inner, tail_ ? tail_scale(law_, T_) : 1.0, norm_opts())
        .value;
}

ConditionalNormLaw conditional_norm_law(const GeneratingLaw& law, double total_activity, double s,
                                        double t, double r_s) {
    return ConditionalNormLaw(law, total_activity, s, t, r_s);
}

}  // namespace asp::genlaw
