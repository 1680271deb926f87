#pragma once

#include <cstdint>
#include <vector>

#include "asp/dists/rng.hpp"
#include "asp/genlaw/norm_law.hpp"
#include "asp/procs/process.hpp"

namespace asp::procs {

// Splits a master GRB (activity 1, horizon T) at u_i = m_1 + ... + m_i;
// coordinate i runs on master time u_{i-1} + m_i t.
MultiPath sample_asp_split(const ProcessSpec& spec, const TimeGrid& grid, dists::RngStream& rng);
MultiPath sample_liouville_split(const ProcessSpec& spec, const TimeGrid& grid,
                                 dists::RngStream& rng);

// Steps through the grid: R_t from the conditional norm law by inversion, then
// the increment R_t - R_s allocated by Dirichlet(m (t - s)).
MultiPath sample_transition_stepping(const ProcessSpec& spec, const TimeGrid& grid,
                                     dists::RngStream& rng);

// Increments xi_t - xi_s = R* D o gamma_t on a grid starting at s, given
// xi_s = x_s. R* = R_1 - |x_s| with R_1 from the conditional terminal norm law,
// D ~ Dirichlet((1 - s) m), and independent gamma bridges of activity m_i.
MultiPath sample_increment_representation(const ProcessSpec& spec, double s,
                                          const std::vector<double>& x_s, const TimeGrid& grid,
                                          dists::RngStream& rng);
// Same, reusing a prebuilt terminal norm law (t = 1, r_s = |x_s|).
MultiPath sample_increment_representation(const ProcessSpec& spec,
                                          const genlaw::ConditionalNormLaw& terminal,
                                          const TimeGrid& grid, dists::RngStream& rng);

enum class SamplerKind { split, stepping, representation };

// Path p uses RngStream(seed, p); results do not depend on threads.
// The representation sampler here starts from 0 at time 0.
std::vector<MultiPath> sample_paths(const ProcessSpec& spec, const TimeGrid& grid,
                                    std::size_t paths, std::uint64_t seed, unsigned threads = 1,
                                    SamplerKind sampler = SamplerKind::split);

}  // namespace asp::procs
