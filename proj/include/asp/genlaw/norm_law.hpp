#pragma once

#include <optional>
#include <vector>

#include "asp/dists/rng.hpp"
#include "asp/genlaw/kernel.hpp"

namespace asp::genlaw {

// Law of R_t given R_s = r_s. For t < 1 it has the density
// Psi_t(r) / Psi_s(r_s) f_{T(t-s)}(r - r_s); for t = 1 it is psi_s(dr; r_s) / Psi_s(r_s),
// which is atomic when nu is.
class ConditionalNormLaw {
public:
    ConditionalNormLaw(const GeneratingLaw& law, double total_activity, double s, double t,
                       double r_s);

    double s() const { return s_; }
    double t() const { return t_; }
    double r_s() const { return r_s_; }

    bool is_atomic() const { return !atoms_.empty(); }
    const std::vector<Atom>& atoms() const { return atoms_; }

    double log_density(const Abscissa& r) const;
    double density(double r) const;
    double cdf(double r) const;
    double quantile(double u) const;
    double sample(dists::RngStream& rng) const;

    // E[(R_t - r_s)^k]
    double increment_moment(int k) const;
    double mean() const { return r_s_ + increment_moment(1); }
    // Mass recovered by quadrature (1 up to quadrature error).
    double total_mass() const;

private:
    double partial(double a, double b) const;

    GeneratingLaw law_;
    double T_, s_, t_, r_s_;
    PsiKernel psi_s_;
    std::optional<PsiKernel> psi_t_;
    double log_psi_s_;
    std::vector<Atom> atoms_;
    std::vector<double> cuts_;  // last piece runs to +inf when tail_ is set
    bool tail_ = false;
    std::vector<double> cum_;   // mass below each cut
};

ConditionalNormLaw conditional_norm_law(const GeneratingLaw& law, double total_activity, double s,
                                        double t, double r_s);

}  // namespace asp::genlaw
