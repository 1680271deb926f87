#include "asp/genlaw/kernel.hpp"

#include <cmath>
#include <sstream>

#include "asp/errors.hpp"
#include "asp/specfun/special.hpp"

namespace asp::genlaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const specfun::IntegrationOptions& kernel_opts() {
    static const specfun::IntegrationOptions o{1e-300, 1e-12, 4000, 9};
    return o;
}

double atom_mass_in(const GeneratingLaw& law, const Interval& b) {
    double m = 0.0;
    for (const auto& a : law.atoms())
        if (a.location >= b.lo && a.location <= b.hi) m += a.weight;
    return m;
}

}  // namespace

double tail_scale(const GeneratingLaw& law, double total_activity) {
    if (const auto* g = std::get_if<GammaLaw>(&law.variant()))
        return g->scale * std::max(1.0, g->shape + 2.0 * std::sqrt(g->shape));
    return std::max(1.0, total_activity);
}

PsiKernel::PsiKernel(GeneratingLaw law, double total_activity, double t)
    : law_(std::move(law)), T_(total_activity), t_(t), a_(total_activity * (1.0 - t)), lg_(0.0) {
    if (!(T_ > 0.0) || !std::isfinite(T_)) throw DomainError("total activity must be positive");
    if (!(t >= 0.0 && t < 1.0)) throw DomainError("kernel time must lie in [0, 1)");
    if (t_ > 0.0) {
        lg_ = specfun::log_gamma(T_) - specfun::log_gamma(a_);
        for (const auto& at : law_.atoms())
            atom_base_.push_back(std::log(at.weight) + lg_ - (T_ - 1.0) * std::log(at.location));
    }
}

double PsiKernel::log_value(const Abscissa& x) const {
    if (t_ == 0.0) return 0.0;
    if (law_.is_atomic()) {
        double l = -inf;
        const auto& atoms = law_.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const double gap = specfun::gap_below(atoms[i].location, x);
            if (gap > 0.0) l = specfun::log_add(l, atom_base_[i] + (a_ - 1.0) * std::log(gap));
        }
        return l == -inf ? l : l + x.value();
    }
    return log_integral_continuous(x.value(), Interval{});
}

double PsiKernel::log_unnormalized_density(const Abscissa& z, double x) const {
    const double lp = law_.log_density(z);
    if (t_ == 0.0) return lp;
    const double gap = specfun::gap_above(z, x);
    if (!(gap > 0.0) || lp == -inf) return -inf;
    return lg_ + x + (a_ - 1.0) * std::log(gap) + (1.0 - T_) * std::log(z.value()) + lp;
}

double PsiKernel::log_integral_continuous(double x, const Interval& b) const {
    const double lo = std::max(x, b.lo);
    const double hi = std::min(b.hi, law_.upper());
    if (!(hi > lo)) return -inf;
    // Scale the integrand by its value near the lower end so the quadrature
    // sees O(1) numbers whatever the size of e^x.
    const double ref_len = std::isfinite(hi) ? std::min(1.0, 0.5 * (hi - lo)) : 1.0;
    double shift = log_unnormalized_density(Abscissa(lo + ref_len), x);
    if (!std::isfinite(shift)) shift = 0.0;
    const auto res = specfun::integrate_pieces(
        [&](const Abscissa& z) {
            const double l = log_unnormalized_density(z, x);
            return l == -inf ? 0.0 : std::exp(l - shift);
        },
        lo, hi, law_.breakpoints(), tail_scale(law_, T_), kernel_opts());
    if (!(res.value > 0.0)) return -inf;
    return std::log(res.value) + shift;
}

KernelEval PsiKernel::eval(double x) const {
    if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("kernel argument must be nonnegative");
    const double lv = log_value(Abscissa(x));
    if (!(lv > -inf)) {
        std::ostringstream os;
        os << "Psi_" << t_ << "(" << x << ") vanishes: x is beyond the support of " << law_.describe();
        throw OutOfSupportError(os.str());
    }
    return {t_, x, T_, &law_, std::exp(lv), lv};
}

double PsiKernel::psi(double x, const Interval& b) const {
    if (!(x >= 0.0)) throw DomainError("kernel argument must be nonnegative");
    if (t_ == 0.0) {
        if (law_.is_atomic()) return atom_mass_in(law_, b);
        const double lo = std::max(0.0, b.lo);
        return b.hi > lo ? law_.cdf(b.hi) - law_.cdf(lo) : 0.0;
    }
    if (law_.is_atomic()) {
        double l = -inf;
        const auto& atoms = law_.atoms();
        for (std::size_t i = 0; i < atoms.size(); ++i) {
            const double c = atoms[i].location;
            if (c > x && c >= b.lo && c <= b.hi)
                l = specfun::log_add(l, atom_base_[i] + (a_ - 1.0) * std::log(c - x));
        }
        return l == -inf ? 0.0 : std::exp(l + x);
    }
    const double l = log_integral_continuous(x, b);
    return l == -inf ? 0.0 : std::exp(l);
}

std::vector<Atom> PsiKernel::normalized_atoms(const Abscissa& x) const {
    if (!law_.is_atomic()) throw UnsupportedOperation("normalized_atoms needs an atomic law");
    if (t_ == 0.0) return law_.atoms();
    std::vector<Atom> out;
    std::vector<double> logs;
    double total = -inf;
    const auto& atoms = law_.atoms();
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        const double gap = specfun::gap_below(atoms[i].location, x);
        if (!(gap > 0.0)) continue;
        const double l = atom_base_[i] + (a_ - 1.0) * std::log(gap);
        out.push_back({atoms[i].location, 0.0});
        logs.push_back(l);
        total = specfun::log_add(total, l);
    }
    if (out.empty()) throw OutOfSupportError("no atom of " + law_.describe() + " lies above the state");
    for (std::size_t i = 0; i < out.size(); ++i) out[i].weight = std::exp(logs[i] - total);
    return out;
}

double PsiKernel::expectation(double x, const std::function<double(const Abscissa&)>& g,
                              const Interval& b) const {
    if (law_.is_atomic()) {
        double e = 0.0;
        for (const auto& a : normalized_atoms(Abscissa(x)))
            if (a.location >= b.lo && a.location <= b.hi) e += a.weight * g(Abscissa(a.location));
        return e;
    }
    const double lpsi = log_value(Abscissa(x));
    if (!(lpsi > -inf)) throw OutOfSupportError("expectation beyond the support of " + law_.describe());
    const double lo = t_ == 0.0 ? std::max(0.0, b.lo) : std::max(x, b.lo);
    const double hi = std::min(b.hi, law_.upper());
    if (!(hi > lo)) return 0.0;
    const auto res = specfun::integrate_pieces(
        [&](const Abscissa& z) {
            const double l = log_unnormalized_density(z, x);
            return l == -inf ? 0.0 : g(z) * std::exp(l - lpsi);
        },
        lo, hi, law_.breakpoints(), tail_scale(law_, T_), kernel_opts());
    return res.value;
}

double psi_kernel(const GeneratingLaw& law, double total_activity, double t, double x,
                  const Interval& b) {
    return PsiKernel(law, total_activity, t).psi(x, b);
}

KernelEval big_psi(const GeneratingLaw& law, double total_activity, double t, double x) {
    KernelEval e = PsiKernel(law, total_activity, t).eval(x);
    e.law = &law;
    return e;
}

}  // namespace asp::genlaw
