#pragma once

#include <vector>

#include "asp/dists/rng.hpp"

namespace asp::procs::detail {

// Increments of a gamma bridge with activity m between consecutive master
// times (bridge runs from times.front() to times.back()). They sum to 1 up to
// rounding; the last one is the remaining distance.
std::vector<double> bridge_increments(double m, const std::vector<double>& times,
                                      dists::RngStream& rng);

}  // namespace asp::procs::detail
