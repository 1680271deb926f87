#pragma once

#include <vector>

#include "asp/genlaw/generator.hpp"
#include "asp/procs/process.hpp"

namespace asp::copula {

// C(u) = h(h^{-1}(u_1) + ... + h^{-1}(u_n)), with h^{-1}(0) the zero point of h
// and h(inf) = 0.
double copula_eval(const genlaw::ArchGenerator& gen, const std::vector<double>& u);

// F(F^{-1}(u_1) + ... + F^{-1}(u_n)) with F = marginal_survival(nu, n): the
// survival copula of the terminal value of an ASP.
double asp_terminal_copula(const procs::ProcessSpec& spec, const std::vector<double>& u);

// C-volume of the box [lo, hi] by inclusion-exclusion over its 2^n corners.
double n_increasing_check(const genlaw::ArchGenerator& gen, int n, const std::vector<double>& lo,
                          const std::vector<double>& hi);

}  // namespace asp::copula
