#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace asp::validation {

struct CheckResult {
    std::string suite;
    std::string name;
    double statistic;
    double threshold;
    bool pass;  // statistic <= threshold
    double seconds;
};

struct ValidationOptions {
    double scale = 1.0;            // multiplies every Monte Carlo sample size
    std::uint64_t seed = 20110817;
    std::optional<double> tolerance;  // replaces every threshold when set
    unsigned threads = 1;
};

// l1_symmetry, oracle_triangle, bridge_equivalence, kernel_martingale,
// gamma_degeneracy, williamson, moments, uniform_process, normalization,
// terminal_copula, determinism
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);

// Throws std::invalid_argument for an unknown suite. A suite that throws
// reports a single failed check carrying the message.
std::vector<CheckResult> run_suite(const std::string& name, const ValidationOptions& opts);

}  // namespace asp::validation
