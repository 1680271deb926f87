#pragma once

#include <vector>

#include "asp/dists/multivariate.hpp"
#include "asp/genlaw/kernel.hpp"
#include "asp/procs/process.hpp"

namespace asp::procs {

// GRB with activity m on [0, T_end]. For t < T_end, the density of Gamma_t at y
// given Gamma_s = x. For t = T_end the terminal law is a reweighting of nu:
// its Lebesgue density at y when nu has one, else its mass at y.
// y may carry its exact offset from a quadrature endpoint (see Abscissa).
double grb_transition_density(const genlaw::GeneratingLaw& law, double m, double T_end, double s,
                              double x, double t, const genlaw::Abscissa& y);

// Density of xi_t at y given xi_s = x, for 0 <= s < t <= 1. At t = 1 the law
// needs a density (use terminal_transition_measure for atomic laws). Zero when
// |y| is beyond the support of nu.
double asp_transition_density(const ProcessSpec& spec, double s, const std::vector<double>& x,
                              double t, const std::vector<double>& y);
double asp_log_transition_density(const ProcessSpec& spec, double s,
                                  const std::vector<double>& x, double t,
                                  const std::vector<double>& y);

// Law of xi_1 given xi_s = x for an atomic nu: the norm R_1 sits on finitely many
// atoms, and given R_1 = c the increment is (c - |x|) D with D ~ Dirichlet((1 - s) m).
class TerminalTransitionMeasure {
public:
    TerminalTransitionMeasure(const ProcessSpec& spec, double s, std::vector<double> x);

    // Atoms of the conditional law of R_1 with their probabilities.
    const std::vector<genlaw::Atom>& norm_atoms() const { return atoms_; }
    const dists::DirichletParams& dirichlet() const { return alpha_; }
    // Kernel time tau with T (1 - tau) = m_n (1 - s).
    double kernel_time() const { return kernel_.t(); }

    // Density in (z_1, ..., z_{n-1}) of the part of the law with R_1 = atom j,
    // evaluated from the psi kernel form; xi^(n) = c_j - z_1 - ... - z_{n-1}.
    double atom_density(std::size_t j, const std::vector<double>& z_head) const;
    // The same density written as weight_j times the scaled Dirichlet density.
    double atom_density_dirichlet(std::size_t j, const std::vector<double>& z_head) const;

private:
    ProcessSpec spec_;
    double s_;
    std::vector<double> x_;
    double r_s_;
    double log_psi_s_;
    genlaw::PsiKernel kernel_;
    std::vector<genlaw::Atom> atoms_;
    dists::DirichletParams alpha_;
};

TerminalTransitionMeasure terminal_transition_measure(const ProcessSpec& spec, double s,
                                                      const std::vector<double>& x);

// Density of R_t at r given R_s = x_norm (t < 1, or t = 1 with a density);
// for t = 1 and an atomic law, the mass at r.
double norm_transition_density(const ProcessSpec& spec, double s, double x_norm, double t,
                               const genlaw::Abscissa& r);

// Psi_t(r_t), the density of the process law against n independent gamma
// processes (activities m) on F_t.
double measure_change_density(const ProcessSpec& spec, double t, double r_t);

// F_t^(i)(x) = int_x^inf I_{1-x/y}[T - m_i t, m_i t] nu(dy), the survival
// function of coordinate i at time t.
double coordinate_survival(const ProcessSpec& spec, int i, double t, double x);
// (F_t^(1)(x_1), ..., F_t^(n)(x_n)); uniform marginals for t in (0, 1].
std::vector<double> uniform_map(const ProcessSpec& spec, double t, const std::vector<double>& x);

}  // namespace asp::procs
