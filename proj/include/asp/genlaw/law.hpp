#pragma once

#include <string>
#include <variant>
#include <vector>

#include "asp/dists/rng.hpp"
#include "asp/specfun/quadrature.hpp"

namespace asp::genlaw {

struct PointMass {
    double r;
};

// Atoms sorted ascending, duplicates merged.
struct FiniteMixture {
    std::vector<double> atoms;
    std::vector<double> weights;
};

struct GammaLaw {
    double shape;
    double scale;
};

// Density linear between grid points; its CDF is the Hermite cubic through the
// cumulative trapezoid masses with slopes equal to the tabulated values, which
// for this choice of slopes is always monotone.
struct TabulatedDensity {
    std::vector<double> grid;
    std::vector<double> values;
    std::vector<double> cumulative;  // CDF at grid points
};

struct Atom {
    double location;
    double weight;
};

// The law nu of the terminal norm. Immutable after construction.
class GeneratingLaw {
public:
    using Variant = std::variant<PointMass, FiniteMixture, GammaLaw, TabulatedDensity>;

    static GeneratingLaw point(double r);
    static GeneratingLaw mixture(std::vector<double> atoms, std::vector<double> weights);
    static GeneratingLaw gamma(double shape, double scale = 1.0);
    static GeneratingLaw table(std::vector<double> grid, std::vector<double> values);

    const Variant& variant() const { return v_; }

    bool is_atomic() const;
    bool has_density() const { return !is_atomic(); }
    // Atoms in increasing order; empty for laws with a density.
    const std::vector<Atom>& atoms() const { return atoms_; }

    double density(double r) const;
    double log_density(double r) const;
    // Same, with table interpolation done on the exact offsets of r.
    double log_density(const specfun::Abscissa& r) const;
    double cdf(double r) const;       // nu([0, r])
    double survival(double r) const;  // nu((r, inf))
    double quantile(double u) const;  // inf{r : cdf(r) >= u}
    double sample(dists::RngStream& rng) const;

    double lower() const;  // inf of the support
    double upper() const;  // sup of the support, +inf for the gamma law
    // Points where integrands against nu lose smoothness (atoms, table nodes).
    std::vector<double> breakpoints() const;

    // E[R^k] for k = 1, 2.
    double moment(int k) const;

    std::string describe() const;

private:
    explicit GeneratingLaw(Variant v);
    Variant v_;
    std::vector<Atom> atoms_;
};

}  // namespace asp::genlaw
