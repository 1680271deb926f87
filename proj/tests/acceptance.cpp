// Runs the ten acceptance criteria at desk scale and prints one line each.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "asp/validation/suites.hpp"
#include "cli/commands.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    std::string title;
    std::vector<std::string> suites;
    double budget;  // seconds
};

std::string read_file(const std::string& name) {
    std::ifstream in(name, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// cmd_sample through the command line: two runs on one thread, one on four.
bool sample_files_identical(std::string& detail) {
    const std::vector<std::pair<std::string, std::string>> configs = {
        {"point", R"({"process": {"kind": "asp", "dim": 3, "law": {"kind": "point", "r": 1.0}},
 "grid": {"steps": 6}, "paths": 400, "seed": 7})"},
        {"gamma_stepping", R"({"process": {"kind": "asp", "dim": 2, "law": {"kind": "gamma", "shape": 2.5}},
 "grid": {"steps": 3}, "paths": 10, "seed": 8, "sampler": "stepping"})"},
        {"liouville", R"({"process": {"kind": "liouville", "activity": [2.0, 1.0], "law": {"kind": "mixture", "atoms": [0.8, 1.2], "weights": [0.5, 0.5]}},
 "grid": {"times": [0.0, 0.3, 0.7, 1.0]}, "paths": 300, "seed": 9, "sampler": "representation"})"},
    };
    for (const auto& [tag, text] : configs) {
        const std::string cfg = "acceptance_" + tag + ".json";
        std::ofstream(cfg) << text;
        std::vector<std::string> files;
        for (const char* threads : {"1", "1", "4"}) {
            for (const char* format : {"csv", "json"}) {
                const std::string out = "acceptance_" + tag + "_" + std::to_string(files.size()) + "." + format;
                std::ostringstream o, e;
                const int code = aspcli::run({"sample", "--config", cfg, "--out", out, "--threads", threads, "--format", format}, o, e);
                if (code != 0) {
                    detail = tag + ": sample exited " + std::to_string(code) + ": " + e.str();
                    return false;
                }
                files.push_back(out);
            }
        }
        for (std::size_t k = 2; k < files.size(); ++k) {
            if (read_file(files[k]).empty() || read_file(files[k]) != read_file(files[k % 2])) {
                detail = tag + ": " + files[k] + " differs from " + files[k % 2];
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "terminal l1-symmetry", {"l1_symmetry"}, 30},
        {2, "oracle triangle", {"oracle_triangle"}, 30},
        {3, "gamma bridge construction equivalence", {"bridge_equivalence"}, 10},
        {4, "kernel martingale", {"kernel_martingale"}, 30},
        {5, "gamma generating law degeneracy", {"gamma_degeneracy"}, 300},
        {6, "Williamson round trips", {"williamson"}, 5},
        {7, "conditional moments", {"moments"}, 60},
        {8, "uniform process", {"uniform_process"}, 300},
        {9, "transition density normalizations", {"normalization"}, 300},
        {10, "determinism", {"determinism"}, 300},
    };
    asp::validation::ValidationOptions opts;
    opts.threads = 4;

    const auto start = Clock::now();
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        std::size_t checks = 0, passed = 0;
        std::string detail;
        for (const auto& suite : c.suites) {
            for (const auto& r : asp::validation::run_suite(suite, opts)) {
                ++checks;
                if (r.pass) ++passed;
                else if (detail.empty()) detail = r.name + ": " + aspcli::format_real(r.statistic) + " > " + aspcli::format_real(r.threshold);
            }
        }
        bool ok = checks > 0 && passed == checks;
        if (c.id == 10) {
            ++checks;
            if (sample_files_identical(detail)) ++passed;
            else ok = false;
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (secs > c.budget) {
            ok = false;
            if (detail.empty()) detail = "over the " + aspcli::format_real(c.budget) + " s budget";
        }
        std::printf("AC%-2d %s  %s  (%zu/%zu checks, %.1f s)%s%s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str(),
                    passed, checks, secs, detail.empty() ? "" : "  ", detail.c_str());
        std::fflush(stdout);
        failed += !ok;
    }
    const double total = std::chrono::duration<double>(Clock::now() - start).count();
    std::printf("total %.1f s, %d of %zu criteria failed\n", total, failed, criteria.size());
    if (total > 300) {
        std::printf("total wall time over 300 s\n");
        return 1;
    }
    return failed ? 1 : 0;
}
