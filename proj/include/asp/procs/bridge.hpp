#pragma once

#include <complex>
#include <vector>

#include "asp/dists/rng.hpp"
#include "asp/genlaw/law.hpp"
#include "asp/procs/process.hpp"

namespace asp::procs {

// Paths below are sampled at T_end * grid[k]; the bridge starts at 0 at the
// first grid time and ends at 1 at T_end.

// Sequential construction: each step covers a Beta(m(t-s), m(T-t)) fraction of
// the remaining distance. Last value is exactly 1.
std::vector<double> sample_gamma_bridge(double m, double T_end, const TimeGrid& grid,
                                        dists::RngStream& rng);
// gamma_t / gamma_T built from independent gamma increments.
std::vector<double> sample_gamma_bridge_ratio(double m, double T_end, const TimeGrid& grid,
                                              dists::RngStream& rng);

// Gamma process with activity m (unit scale), started at 0.
std::vector<double> sample_gamma_process(double m, double T_end, const TimeGrid& grid,
                                         dists::RngStream& rng);

// R gamma_{tT} with R ~ law.
std::vector<double> sample_grb(const genlaw::GeneratingLaw& law, double m, double T_end,
                               const TimeGrid& grid, dists::RngStream& rng);

// Density of gamma_{tT} at y given gamma_{sT} = x.
double gamma_bridge_transition_density(double m, double T_end, double s, double x, double t,
                                       double y);

// E[exp(i lambda gamma_{tT}) | gamma_{sT} = x].
std::complex<double> gamma_bridge_cf(double m, double T_end, double s, double x, double t,
                                     double lambda);

}  // namespace asp::procs
