#include "asp/procs/bridge.hpp"

#include <algorithm>
#include <cmath>

#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"
#include "asp/specfun/special.hpp"
#include "internal.hpp"

namespace asp::procs {

namespace {

std::vector<double> master_times(double T_end, const TimeGrid& grid) {
    if (!(T_end > 0.0) || !std::isfinite(T_end)) throw DomainError("bridge horizon must be positive");
    std::vector<double> t(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) t[k] = T_end * grid[k];
    t.back() = T_end;
    return t;
}

void check_activity(double m) {
    if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("activity parameter must be positive");
}

std::vector<double> cumulate(const std::vector<double>& inc) {
    std::vector<double> path(inc.size() + 1, 0.0);
    for (std::size_t k = 0; k < inc.size(); ++k) path[k + 1] = path[k] + inc[k];
    return path;
}

// Pins the bridge at 1; rounding in the running sum can leave earlier values an
// ulp above it.
void pin_end(std::vector<double>& path) {
    path.back() = 1.0;
    for (std::size_t k = path.size() - 1; k-- > 0;) path[k] = std::min(path[k], path[k + 1]);
}

}  // namespace

namespace detail {

std::vector<double> bridge_increments(double m, const std::vector<double>& times,
                                      dists::RngStream& rng) {
    const std::size_t steps = times.size() - 1;
    const double T = times.back();
    std::vector<double> inc(steps);
    double rem = 1.0;
    for (std::size_t k = 0; k + 1 < steps; ++k) {
        const auto b = dists::sample_beta_pair(m * (times[k + 1] - times[k]), m * (T - times[k + 1]), rng);
        inc[k] = rem * b.value;
        rem *= b.complement;
    }
    inc[steps - 1] = rem;
    return inc;
}

}  // namespace detail

std::vector<double> sample_gamma_bridge(double m, double T_end, const TimeGrid& grid,
                                        dists::RngStream& rng) {
    check_activity(m);
    auto path = cumulate(detail::bridge_increments(m, master_times(T_end, grid), rng));
    pin_end(path);
    return path;
}

std::vector<double> sample_gamma_bridge_ratio(double m, double T_end, const TimeGrid& grid,
                                              dists::RngStream& rng) {
    check_activity(m);
    const auto t = master_times(T_end, grid);
    // Normalize in log space so tiny shapes cannot underflow the total.
    std::vector<double> lg(t.size() - 1);
    double total = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lg.size(); ++k) {
        lg[k] = dists::sample_log_gamma(m * (t[k + 1] - t[k]), rng);
        total = specfun::log_add(total, lg[k]);
    }
    std::vector<double> inc(lg.size());
    for (std::size_t k = 0; k < lg.size(); ++k) inc[k] = std::exp(lg[k] - total);
    auto path = cumulate(inc);
    pin_end(path);
    return path;
}

std::vector<double> sample_gamma_process(double m, double T_end, const TimeGrid& grid,
                                         dists::RngStream& rng) {
    check_activity(m);
    const auto t = master_times(T_end, grid);
    std::vector<double> inc(t.size() - 1);
    for (std::size_t k = 0; k < inc.size(); ++k) inc[k] = dists::sample_gamma(m * (t[k + 1] - t[k]), 1.0, rng);
    return cumulate(inc);
}

std::vector<double> sample_grb(const genlaw::GeneratingLaw& law, double m, double T_end,
                               const TimeGrid& grid, dists::RngStream& rng) {
    const double r = law.sample(rng);
    auto path = sample_gamma_bridge(m, T_end, grid, rng);
    for (double& v : path) v *= r;
    return path;
}

double gamma_bridge_transition_density(double m, double T_end, double s, double x, double t,
                                       double y) {
    check_activity(m);
    if (!(0.0 <= s && s < t && t < T_end)) throw DomainError("gamma bridge density needs 0 <= s < t < T");
    if (!(x >= 0.0 && x < 1.0)) throw DomainError("gamma bridge state must lie in [0, 1)");
    if (!(y > x && y < 1.0)) return 0.0;
    const double a = m * (t - s), b = m * (T_end - t);
    const double z = (y - x) / (1.0 - x);
    const double lz = (a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z) - specfun::log_beta(a, b);
    return std::exp(lz) / (1.0 - x);
}

std::complex<double> gamma_bridge_cf(double m, double T_end, double s, double x, double t,
                                     double lambda) {
    check_activity(m);
    if (!(0.0 <= s && s < t && t <= T_end)) throw DomainError("gamma bridge cf needs 0 <= s < t <= T");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("gamma bridge state must lie in [0, 1]");
    const std::complex<double> i(0.0, 1.0);
    if (t == T_end) return std::exp(i * lambda);
    return std::exp(i * lambda * x) *
           specfun::kummer_m(m * (t - s), m * (T_end - s), i * ((1.0 - x) * lambda));
}

}  // namespace asp::procs
