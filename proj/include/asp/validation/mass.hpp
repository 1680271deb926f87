#pragma once

#include <vector>

#include "asp/genlaw/law.hpp"
#include "asp/procs/process.hpp"

namespace asp::validation {

// Total mass of a transition law recovered by quadrature of its density
// (or by summing atoms where the law is atomic).
double grb_transition_mass(const genlaw::GeneratingLaw& law, double m, double T_end, double s,
                           double x, double t);
double norm_transition_mass(const procs::ProcessSpec& spec, double s, double x_norm, double t);
// Two-dimensional processes only; at t = 1 the law needs a density.
double asp_transition_mass(const procs::ProcessSpec& spec, double s, const std::vector<double>& x,
                           double t);

}  // namespace asp::validation
