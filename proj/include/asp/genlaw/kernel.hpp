#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "asp/genlaw/law.hpp"
#include "asp/specfun/quadrature.hpp"

namespace asp::genlaw {

using specfun::Abscissa;

// Closed interval [lo, hi]; hi may be +inf.
struct Interval {
    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
};

struct KernelEval {
    double t;
    double x;
    double total_activity;
    const GeneratingLaw* law;
    double value;      // Psi_t(x)
    double log_value;
};

// psi_t(B; x) = int_B f_{T(1-t)}(z - x) / f_T(z) nu(dz), with psi_0 = nu by definition.
// Construction fixes (law, T, t) and precomputes the per-atom weights, so one
// object serves every x along a path. Immutable and shareable across threads.
class PsiKernel {
public:
    PsiKernel(GeneratingLaw law, double total_activity, double t);

    const GeneratingLaw& law() const { return law_; }
    double total_activity() const { return T_; }
    double t() const { return t_; }

    // log Psi_t(x); -inf when nu((x, inf)) = 0.
    double log_value(const Abscissa& x) const;
    // Throws OutOfSupportError when Psi_t(x) vanishes.
    KernelEval eval(double x) const;

    double psi(double x, const Interval& b) const;

    // Atoms of psi_t(.; x) / Psi_t(x) (atomic laws only).
    std::vector<Atom> normalized_atoms(const Abscissa& x) const;
    // log of the Lebesgue density of psi_t(dz; x) at z (laws with a density only).
    double log_unnormalized_density(const Abscissa& z, double x) const;
    // int_B g d psi_t(.; x) / Psi_t(x).
    double expectation(double x, const std::function<double(const Abscissa&)>& g,
                       const Interval& b = {}) const;

private:
    double log_integral_continuous(double x, const Interval& b) const;

    GeneratingLaw law_;
    double T_;
    double t_;
    double a_;       // T (1 - t)
    double lg_;      // log Gamma(T) - log Gamma(a)
    std::vector<double> atom_base_;
};

double psi_kernel(const GeneratingLaw& law, double total_activity, double t, double x,
                  const Interval& b = {});
KernelEval big_psi(const GeneratingLaw& law, double total_activity, double t, double x);

// Tail length used when splitting semi-infinite integrals against nu.
double tail_scale(const GeneratingLaw& law, double total_activity);

}  // namespace asp::genlaw
