#include "asp/genlaw/law.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"

namespace asp::genlaw {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool finite_positive(double v) { return v > 0.0 && std::isfinite(v); }

std::size_t table_segment(const TabulatedDensity& t, double r) {
    const auto it = std::upper_bound(t.grid.begin(), t.grid.end(), r);
    const std::size_t k = static_cast<std::size_t>(it - t.grid.begin());
    return std::min(k == 0 ? 0 : k - 1, t.grid.size() - 2);
}

double table_cdf(const TabulatedDensity& t, double r) {
    if (r <= t.grid.front()) return 0.0;
    if (r >= t.grid.back()) return 1.0;
    const std::size_t k = table_segment(t, r);
    const double h = t.grid[k + 1] - t.grid[k];
    const double s = r - t.grid[k];
    const double v0 = t.values[k], v1 = t.values[k + 1];
    return std::min(1.0, t.cumulative[k] + v0 * s + (v1 - v0) * s * s / (2.0 * h));
}

double table_quantile(const TabulatedDensity& t, double u) {
    if (u <= 0.0) {
        // First point carrying mass.
        for (std::size_t k = 0; k + 1 < t.grid.size(); ++k)
            if (t.cumulative[k + 1] > 0.0) return t.grid[k];
        return t.grid.front();
    }
    if (u >= 1.0) return t.grid.back();
    const auto it = std::lower_bound(t.cumulative.begin(), t.cumulative.end(), u);
    std::size_t k = static_cast<std::size_t>(it - t.cumulative.begin());
    k = k == 0 ? 0 : k - 1;
    k = std::min(k, t.grid.size() - 2);
    const double h = t.grid[k + 1] - t.grid[k];
    const double v0 = t.values[k], v1 = t.values[k + 1];
    const double c = u - t.cumulative[k];
    const double a = (v1 - v0) / (2.0 * h);
    // Root of a s^2 + v0 s - c = 0 in the cancellation-free form.
    const double disc = std::sqrt(std::max(0.0, v0 * v0 + 4.0 * a * c));
    const double s = (v0 + disc) > 0.0 ? 2.0 * c / (v0 + disc) : 0.0;
    return std::clamp(t.grid[k] + s, t.grid[k], t.grid[k + 1]);
}

}  // namespace

GeneratingLaw::GeneratingLaw(Variant v) : v_(std::move(v)) {
    if (const auto* p = std::get_if<PointMass>(&v_)) atoms_ = {{p->r, 1.0}};
    if (const auto* m = std::get_if<FiniteMixture>(&v_))
        for (std::size_t i = 0; i < m->atoms.size(); ++i) atoms_.push_back({m->atoms[i], m->weights[i]});
}

GeneratingLaw GeneratingLaw::point(double r) {
    if (!finite_positive(r)) throw DomainError("point mass location must be positive and finite");
    return GeneratingLaw(PointMass{r});
}

GeneratingLaw GeneratingLaw::mixture(std::vector<double> atoms, std::vector<double> weights) {
    if (atoms.empty() || atoms.size() != weights.size())
        throw DomainError("mixture needs matching, non-empty atoms and weights");
    std::map<double, double> merged;
    double total = 0.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        if (!finite_positive(atoms[i])) throw DomainError("mixture atoms must be positive and finite");
        if (!(weights[i] >= 0.0) || !std::isfinite(weights[i]))
            throw DomainError("mixture weights must be nonnegative");
        total += weights[i];
        if (weights[i] > 0.0) merged[atoms[i]] += weights[i];
    }
    if (std::fabs(total - 1.0) > 1e-12) throw DomainError("mixture weights must sum to 1");
    FiniteMixture m;
    for (const auto& [a, w] : merged) {
        m.atoms.push_back(a);
        m.weights.push_back(w / total);
    }
    return GeneratingLaw(std::move(m));
}

GeneratingLaw GeneratingLaw::gamma(double shape, double scale) {
    if (!finite_positive(shape) || !finite_positive(scale))
        throw DomainError("gamma law needs positive shape and scale");
    return GeneratingLaw(GammaLaw{shape, scale});
}

GeneratingLaw GeneratingLaw::table(std::vector<double> grid, std::vector<double> values) {
    if (grid.size() < 2 || grid.size() != values.size())
        throw DomainError("tabulated density needs at least two matching grid/value entries");
    if (!(grid.front() >= 0.0)) throw DomainError("tabulated density grid must be nonnegative");
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(grid[i]) || (i > 0 && !(grid[i] > grid[i - 1])))
            throw DomainError("tabulated density grid must be strictly increasing and finite");
        if (!(values[i] >= 0.0) || !std::isfinite(values[i]))
            throw DomainError("tabulated density values must be nonnegative and finite");
    }
    TabulatedDensity t{std::move(grid), std::move(values), {}};
    t.cumulative.assign(t.grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < t.grid.size(); ++k)
        t.cumulative[k + 1] =
            t.cumulative[k] + 0.5 * (t.grid[k + 1] - t.grid[k]) * (t.values[k] + t.values[k + 1]);
    const double mass = t.cumulative.back();
    if (std::fabs(mass - 1.0) > 1e-8) {
        std::ostringstream os;
        os << "tabulated density integrates to " << mass << ", not 1";
        throw DomainError(os.str());
    }
    for (auto& v : t.values) v /= mass;
    for (auto& c : t.cumulative) c /= mass;
    return GeneratingLaw(std::move(t));
}

bool GeneratingLaw::is_atomic() const { return !atoms_.empty(); }

double GeneratingLaw::log_density(double r) const {
    return std::visit(
        overloaded{[](const PointMass&) -> double {
                       throw UnsupportedOperation("point mass has no density");
                   },
                   [](const FiniteMixture&) -> double {
                       throw UnsupportedOperation("finite mixture has no density");
                   },
                   [r](const GammaLaw& g) {
                       return dists::log_gamma_kernel(g.shape, r / g.scale) - std::log(g.scale);
                   },
                   [r](const TabulatedDensity& t) {
                       if (r < t.grid.front() || r > t.grid.back()) return -inf;
                       const std::size_t k = table_segment(t, r);
                       const double w = (r - t.grid[k]) / (t.grid[k + 1] - t.grid[k]);
                       return std::log((1.0 - w) * t.values[k] + w * t.values[k + 1]);
                   }},
        v_);
}

double GeneratingLaw::log_density(const specfun::Abscissa& r) const {
    const auto* t = std::get_if<TabulatedDensity>(&v_);
    if (!t) return log_density(r.value());
    const double v = r.value();
    if (v < t->grid.front() || v > t->grid.back()) return -inf;
    const std::size_t k = table_segment(*t, v);
    const double gl = std::max(0.0, specfun::gap_above(r, t->grid[k]));
    const double gr = std::max(0.0, specfun::gap_below(t->grid[k + 1], r));
    return std::log((t->values[k] * gr + t->values[k + 1] * gl) / (gl + gr));
}

double GeneratingLaw::density(double r) const { return std::exp(log_density(r)); }

double GeneratingLaw::cdf(double r) const {
    if (is_atomic()) {
        double c = 0.0;
        for (const auto& a : atoms_)
            if (a.location <= r) c += a.weight;
        return std::min(1.0, c);
    }
    if (const auto* g = std::get_if<GammaLaw>(&v_))
        return r <= 0.0 ? 0.0 : boost::math::gamma_p(g->shape, r / g->scale);
    return table_cdf(std::get<TabulatedDensity>(v_), r);
}

double GeneratingLaw::survival(double r) const {
    if (is_atomic()) {
        double s = 0.0;
        for (const auto& a : atoms_)
            if (a.location > r) s += a.weight;
        return std::min(1.0, s);
    }
    if (const auto* g = std::get_if<GammaLaw>(&v_))
        return r <= 0.0 ? 1.0 : boost::math::gamma_q(g->shape, r / g->scale);
    return 1.0 - table_cdf(std::get<TabulatedDensity>(v_), r);
}

double GeneratingLaw::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
    if (is_atomic()) {
        double c = 0.0;
        for (const auto& a : atoms_) {
            c += a.weight;
            if (c >= u) return a.location;
        }
        return atoms_.back().location;
    }
    if (const auto* g = std::get_if<GammaLaw>(&v_)) {
        if (u == 0.0) return 0.0;
        if (u == 1.0) return inf;
        return g->scale * boost::math::gamma_p_inv(g->shape, u);
    }
    return table_quantile(std::get<TabulatedDensity>(v_), u);
}

double GeneratingLaw::sample(dists::RngStream& rng) const {
    return std::visit(overloaded{[](const PointMass& p) { return p.r; },
                                 [&rng](const FiniteMixture& m) {
                                     const double u = rng.uniform();
                                     double c = 0.0;
                                     for (std::size_t i = 0; i < m.atoms.size(); ++i) {
                                         c += m.weights[i];
                                         if (u < c) return m.atoms[i];
                                     }
                                     return m.atoms.back();
                                 },
                                 [&rng](const GammaLaw& g) {
                                     return dists::sample_gamma(g.shape, g.scale, rng);
                                 },
                                 [&rng](const TabulatedDensity& t) {
                                     return table_quantile(t, rng.uniform());
                                 }},
                      v_);
}

double GeneratingLaw::lower() const {
    if (is_atomic()) return atoms_.front().location;
    if (std::holds_alternative<GammaLaw>(v_)) return 0.0;
    const auto& t = std::get<TabulatedDensity>(v_);
    for (std::size_t k = 0; k + 1 < t.grid.size(); ++k)
        if (t.cumulative[k + 1] > 0.0) return t.grid[k];
    return t.grid.front();
}

double GeneratingLaw::upper() const {
    if (is_atomic()) return atoms_.back().location;
    if (std::holds_alternative<GammaLaw>(v_)) return inf;
    const auto& t = std::get<TabulatedDensity>(v_);
    for (std::size_t k = t.grid.size() - 1; k > 0; --k)
        if (t.cumulative[k - 1] < 1.0) return t.grid[k];
    return t.grid.back();
}

std::vector<double> GeneratingLaw::breakpoints() const {
    std::vector<double> out;
    if (is_atomic()) {
        for (const auto& a : atoms_) out.push_back(a.location);
    } else if (const auto* t = std::get_if<TabulatedDensity>(&v_)) {
        out = t->grid;
    }
    return out;
}

double GeneratingLaw::moment(int k) const {
    if (k < 0 || k > 2) throw DomainError("moment order must be 0, 1 or 2");
    if (is_atomic()) {
        double m = 0.0;
        for (const auto& a : atoms_) m += a.weight * std::pow(a.location, k);
        return m;
    }
    if (const auto* g = std::get_if<GammaLaw>(&v_)) {
        if (k == 0) return 1.0;
        if (k == 1) return g->shape * g->scale;
        return g->shape * (g->shape + 1.0) * g->scale * g->scale;
    }
    // Piecewise-linear density: two-point Gauss is exact up to cubic integrands.
    const auto& t = std::get<TabulatedDensity>(v_);
    const double q = 1.0 / std::sqrt(3.0);
    double m = 0.0;
    for (std::size_t i = 0; i + 1 < t.grid.size(); ++i) {
        const double h = t.grid[i + 1] - t.grid[i];
        for (double node : {0.5 - 0.5 * q, 0.5 + 0.5 * q}) {
            const double r = t.grid[i] + node * h;
            const double dens = (1.0 - node) * t.values[i] + node * t.values[i + 1];
            m += 0.5 * h * dens * std::pow(r, k);
        }
    }
    return m;
}

std::string GeneratingLaw::describe() const {
    std::ostringstream os;
    std::visit(overloaded{[&os](const PointMass& p) { os << "point(" << p.r << ")"; },
                          [&os](const FiniteMixture& m) {
                              os << "mixture{";
                              for (std::size_t i = 0; i < m.atoms.size(); ++i)
                                  os << (i ? ", " : "") << m.atoms[i] << ":" << m.weights[i];
                              os << "}";
                          },
                          [&os](const GammaLaw& g) { os << "gamma(" << g.shape << ", " << g.scale << ")"; },
                          [&os](const TabulatedDensity& t) {
                              os << "table(" << t.grid.size() << " nodes on [" << t.grid.front() << ", "
                                 << t.grid.back() << "])";
                          }},
               v_);
    return os.str();
}

}  // namespace asp::genlaw
