#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numeric>

#include "asp/copula/stats.hpp"
#include "asp/dists/rng.hpp"
#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"
#include "asp/genlaw/kernel.hpp"
#include "asp/procs/bridge.hpp"
#include "asp/procs/moments.hpp"
#include "asp/procs/samplers.hpp"
#include "asp/procs/transition.hpp"
#include "asp/specfun/quadrature.hpp"
#include "asp/validation/mass.hpp"
#include "generators.hpp"

using namespace asp::procs;
using asp::dists::RngStream;
using asp::genlaw::GeneratingLaw;
using doctest::Approx;

namespace {

GeneratingLaw mix() { return GeneratingLaw::mixture({0.8, 1.2}, {0.5, 0.5}); }

bool within3(double est, double target, double se) { return std::abs(est - target) <= 3.0 * se; }

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double var_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

}  // namespace

TEST_CASE("time grids") {
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5, 0.5, 1.0}), asp::DomainError);
    CHECK_THROWS_AS(TimeGrid({0.0, 0.5}), asp::DomainError);
    CHECK_THROWS_AS(TimeGrid::uniform(0), asp::DomainError);
    CHECK_THROWS_AS(TimeGrid::uniform(TimeGrid::max_steps + 1), asp::DomainError);
    const auto g = TimeGrid::uniform(4);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == 0.0);
    CHECK(g[4] == 1.0);
    const auto h = TimeGrid::uniform(0.25, 3);
    CHECK(h.start() == 0.25);
    CHECK(h[3] == 1.0);
}

TEST_CASE("process specs") {
    const auto a = ProcessSpec::asp(3, mix());
    CHECK(a.total_activity() == 3.0);
    CHECK(a.activity() == std::vector<double>{1, 1, 1});
    const auto l = ProcessSpec::liouville({2.0, 0.5}, mix());
    CHECK(l.total_activity() == 2.5);
    CHECK(l.dim() == 2);
    CHECK_THROWS_AS(ProcessSpec::asp(1, mix()), asp::DomainError);
    CHECK_THROWS_AS(ProcessSpec::liouville({1.0, -1.0}, mix()), asp::DomainError);
}

TEST_CASE("gamma bridge sampling") {
    const auto grid = TimeGrid({0.0, 0.25, 0.5, 0.75, 1.0});
    RngStream rng(1, 0);
    std::vector<double> at25;
    for (int i = 0; i < 100000; ++i) {
        const auto b = sample_gamma_bridge(1.0, 1.0, grid, rng);
        REQUIRE(b.front() == 0.0);
        REQUIRE(b.back() == 1.0);
        for (std::size_t k = 1; k < b.size(); ++k) REQUIRE(b[k] >= b[k - 1]);
        at25.push_back(b[1]);
    }
    // Beta(0.25, 0.75)
    CHECK(within3(mean_of(at25), 0.25, std::sqrt(0.1875 / 2.0 / at25.size())));
    const auto r = sample_gamma_bridge_ratio(0.3, 2.0, grid, rng);
    CHECK(r.back() == 1.0);
}

TEST_CASE("ratio and sequential bridges agree") {
    const auto grid = TimeGrid({0.0, 0.25, 0.5, 0.75, 1.0});
    for (double m : {0.5, 1.0, 3.0}) {
        RngStream a(2, 0), b(2, 1);
        std::vector<std::vector<double>> x(3), y(3);
        for (int i = 0; i < 10000; ++i) {
            const auto p = sample_gamma_bridge(m, 1.0, grid, a);
            const auto q = sample_gamma_bridge_ratio(m, 1.0, grid, b);
            for (int k = 0; k < 3; ++k) {
                x[k].push_back(p[k + 1]);
                y[k].push_back(q[k + 1]);
            }
        }
        for (int k = 0; k < 3; ++k) CHECK(asp::copula::ks_two_sample(x[k], y[k]).pass_1pct);
    }
}

TEST_CASE("bridge increments are Dirichlet") {
    // increments over (0, .2, .5, 1) with m = 2 on [0, 1]: Dirichlet(0.4, 0.6, 1.0)
    const auto grid = TimeGrid({0.0, 0.2, 0.5, 1.0});
    const std::vector<double> alpha = {0.4, 0.6, 1.0};
    const double A = 2.0;
    RngStream rng(3, 0);
    const int N = 200000;
    std::vector<std::vector<double>> d(3);
    for (int i = 0; i < N; ++i) {
        const auto b = sample_gamma_bridge(2.0, 1.0, grid, rng);
        for (int k = 0; k < 3; ++k) d[k].push_back(b[k + 1] - b[k]);
    }
    for (int k = 0; k < 3; ++k) {
        const double mean = alpha[k] / A;
        const double var = alpha[k] * (A - alpha[k]) / (A * A * (A + 1));
        CHECK(within3(mean_of(d[k]), mean, std::sqrt(var / N)));
    }
    const double m0 = mean_of(d[0]), m1 = mean_of(d[1]);
    std::vector<double> prod;
    for (int i = 0; i < N; ++i) prod.push_back((d[0][i] - m0) * (d[1][i] - m1));
    CHECK(within3(mean_of(prod), -alpha[0] * alpha[1] / (A * A * (A + 1)), std::sqrt(var_of(prod) / N)));
}

TEST_CASE("bridge transition density and characteristic function") {
    // mpmath quadrature of the beta step
    const auto cf = gamma_bridge_cf(2.0, 1.0, 0.2, 0.3, 0.6, 1.7);
    CHECK(cf.real() == Approx(0.41913968373549143462).epsilon(1e-10));
    CHECK(cf.imag() == Approx(0.83379556493973492754).epsilon(1e-10));
    // a Beta(m(t-s), m(T-t)) step scaled to the remaining distance
    const double d = gamma_bridge_transition_density(1.5, 2.0, 0.5, 0.2, 1.2, 0.6);
    const double u = (0.6 - 0.2) / 0.8;
    const double a = 1.5 * 0.7, b = 1.5 * 0.8;
    CHECK(d == Approx(std::pow(u, a - 1) * std::pow(1 - u, b - 1) / std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b)) /
                      0.8)
                   .epsilon(1e-12));
}

TEST_CASE("grb sampling") {
    const auto grid = TimeGrid::uniform(4);
    RngStream rng(4, 0);
    for (int i = 0; i < 100; ++i) CHECK(sample_grb(GeneratingLaw::point(2.5), 1.3, 2.0, grid, rng).back() == 2.5);

    // gamma law Gamma(m T, kappa): a gamma process with mean m kappa t, variance m kappa^2 t
    const double m = 1.5, Tend = 2.0, kappa = 0.7;
    const auto law = GeneratingLaw::gamma(m * Tend, kappa);
    std::vector<double> mid, term;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const auto p = sample_grb(law, m, Tend, grid, rng);
        mid.push_back(p[2]);  // master time 1
        if (i < 10000) term.push_back(p.back());
    }
    CHECK(within3(mean_of(mid), m * kappa, std::sqrt(m * kappa * kappa / N)));
    // fourth central moment of Gamma(k, c): c^4 (3k^2 + 6k)
    const double k = m;
    CHECK(within3(var_of(mid), m * kappa * kappa, std::sqrt(std::pow(kappa, 4) * (2 * k * k + 6 * k) / N)));
    CHECK(asp::copula::ks_statistic(term, [&](double r) { return law.cdf(r); }).pass_1pct);
}

TEST_CASE("grb transition density") {
    testgen::Gen g(5);
    for (int i = 0; i < 30; ++i) {
        const auto [s, t] = g.times();
        const double x = g.uniform(0.0, 0.5);
        const double y = g.uniform(x + 1e-3, 0.999);
        CHECK(grb_transition_density(GeneratingLaw::point(1.0), 1.0, 1.0, s, x, t, y) ==
              Approx(gamma_bridge_transition_density(1.0, 1.0, s, x, t, y)).epsilon(1e-10));
        const double m = g.uniform(0.5, 3.0), Tend = g.uniform(0.5, 2.0);
        const double yy = g.uniform(x + 1e-3, 5.0);
        CHECK(grb_transition_density(GeneratingLaw::gamma(m * Tend), m, Tend, s * Tend, x, t * Tend, yy) ==
              Approx(asp::dists::gamma_density(t * Tend - s * Tend, m, yy - x)).epsilon(1e-10));
    }
    // posterior-over-terminal construction in mpmath
    CHECK(grb_transition_density(mix(), 1.0, 1.0, 0.3, 0.2, 0.7, 0.5) == Approx(0.67084824004797762152).epsilon(1e-12));
    CHECK(grb_transition_density(mix(), 2.0, 1.5, 0.4, 0.3, 1.1, 0.9) == Approx(0.59455885633266719039).epsilon(1e-12));
    CHECK(grb_transition_density(mix(), 1.0, 1.0, 0.3, 0.2, 0.7, 1.3) == 0.0);
    CHECK_THROWS_AS(grb_transition_density(mix(), 1.0, 1.0, 0.3, 1.3, 0.7, 1.4), asp::OutOfSupportError);

    CHECK(asp::validation::grb_transition_mass(mix(), 1.0, 1.0, 0.3, 0.2, 0.7) == Approx(1.0).epsilon(1e-8));
    CHECK(asp::validation::grb_transition_mass(mix(), 1.0, 1.0, 0.3, 0.2, 1.0) == Approx(1.0).epsilon(1e-12));
    CHECK(asp::validation::grb_transition_mass(GeneratingLaw::gamma(2.0), 1.0, 2.0, 0.3, 0.2, 2.0) ==
          Approx(1.0).epsilon(1e-8));
}

TEST_CASE("norm transition density") {
    testgen::Gen g(6);
    for (int i = 0; i < 20; ++i) {
        const auto law = g.law();
        const int n = g.integer(2, 4);
        const auto [s, t] = g.times();
        const double x = g.uniform(0.0, 0.5 * law.quantile(0.2));
        const double r = g.uniform(x + 1e-3, x + 1.0);
        const auto spec = ProcessSpec::asp(n, law);
        CHECK(norm_transition_density(spec, s, x, t, r) ==
              Approx(grb_transition_density(law, n, 1.0, s, x, t, r)).epsilon(1e-10));
    }
    const auto d1 = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    for (double r : {0.1, 0.5, 0.9}) CHECK(norm_transition_density(d1, 0.0, 0.0, 0.5, r) == Approx(1.0).epsilon(1e-12));
    CHECK(norm_transition_density(ProcessSpec::asp(3, mix()), 0.2, 0.3, 0.6, 0.7) ==
          Approx(1.6377374651547012477).epsilon(1e-12));
    CHECK(asp::validation::norm_transition_mass(ProcessSpec::asp(3, mix()), 0.2, 0.3, 0.6) == Approx(1.0).epsilon(1e-8));
}

TEST_CASE("asp transition density") {
    const auto ga = ProcessSpec::asp(3, GeneratingLaw::gamma(3.0));
    const auto lv = ProcessSpec::liouville({2.0, 0.5}, GeneratingLaw::gamma(2.5));
    testgen::Gen g(7);
    for (int i = 0; i < 20; ++i) {
        const auto [s, t] = g.times();
        const auto x = g.uniforms(3, 0.0, 1.0);
        auto y = x;
        for (double& v : y) v += g.uniform(1e-3, 1.0);
        double prod = 1.0;
        for (int j = 0; j < 3; ++j) prod *= asp::dists::gamma_density(t - s, 1.0, y[j] - x[j]);
        CHECK(asp_transition_density(ga, s, x, t, y) == Approx(prod).epsilon(1e-10));
        const double p2 = asp::dists::gamma_density(t - s, 2.0, y[0] - x[0]) * asp::dists::gamma_density(t - s, 0.5, y[1] - x[1]);
        CHECK(asp_transition_density(lv, s, {x[0], x[1]}, t, {y[0], y[1]}) == Approx(p2).epsilon(1e-10));
    }
    const auto d1 = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    CHECK(asp_transition_density(d1, 0.25, {0.1, 0.15}, 0.75, {0.3, 0.4}) == Approx(1.5005271935951767826).epsilon(1e-12));
    CHECK(asp_transition_density(d1, 0.25, {0.1, 0.15}, 0.75, {0.6, 0.5}) == 0.0);
    CHECK_THROWS_AS(asp_transition_density(d1, 0.25, {0.1, 0.15}, 0.75, {0.05, 0.4}), asp::DomainError);
    CHECK(asp::validation::asp_transition_mass(d1, 0.25, {0.1, 0.15}, 0.75) == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("transition depends on the state only through its norm") {
    testgen::Gen g(8);
    for (int i = 0; i < 50; ++i) {
        const auto law = g.law();
        const auto spec = ProcessSpec::asp(3, law);
        const auto [s, t] = g.times();
        const double room = 0.3 * law.quantile(0.1);
        auto x = g.uniforms(3, 0.0, room);
        const auto inc = g.uniforms(3, 1e-3, room);
        auto perm = x;
        std::rotate(perm.begin(), perm.begin() + 1, perm.end());
        std::vector<double> y(3), yp(3);
        for (int j = 0; j < 3; ++j) {
            y[j] = x[j] + inc[j];
            yp[j] = perm[j] + inc[j];
        }
        CHECK(asp_transition_density(spec, s, x, t, y) == Approx(asp_transition_density(spec, s, perm, t, yp)).epsilon(1e-12));
    }
}

TEST_CASE("chapman-kolmogorov for the two-dimensional point-mass process") {
    const auto d1 = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    struct Case {
        double s;
        std::vector<double> x;
        double t, u;
        std::vector<double> z;
    };
    const std::vector<Case> cases = {{0.0, {0.0, 0.0}, 0.4, 0.9, {0.3, 0.35}},
                                     {0.1, {0.05, 0.1}, 0.6, 0.8, {0.35, 0.3}}};
    for (const auto& c : cases) {
        // Each axis splits at its midpoint; the lower half uses y = x + (L/2) w^(1/p) and the
        // upper half y = z - (L/2) w^(1/q), which absorb the (y - x)^(p-1) and (z - y)^(q-1)
        // factors. Gaps below 1e-9 L would round away, so y sits at the clamped gap and the
        // power factor is restored from the exact log gap.
        const double p = c.t - c.s, q = c.u - c.t;
        const auto axis = [&](int i, int half, double w, double& y) {
            const double h = 0.5 * (c.z[i] - c.x[i]);
            const double e = half == 0 ? p : q;
            const double log_gap = std::log(h) + std::log(w) / e;
            const double gap = std::max(std::exp(log_gap), 1e-9 * h);
            y = half == 0 ? c.x[i] + gap : c.z[i] - gap;
            const double used = half == 0 ? y - c.x[i] : c.z[i] - y;
            return std::log(h / e) + (1.0 / e - 1.0) * std::log(w) + (e - 1.0) * (log_gap - std::log(used));
        };
        const asp::specfun::IntegrationOptions o{1e-14, 1e-9, 2000, 9};
        double lhs = 0.0;
        for (int h1 = 0; h1 < 2; ++h1)
            for (int h2 = 0; h2 < 2; ++h2)
                lhs += asp::specfun::integrate_tanh_sinh(
                           [&](double w1, double, double) {
                               return asp::specfun::integrate_tanh_sinh(
                                          [&](double w2, double, double) {
                                              std::vector<double> y(2);
                                              const double lj = axis(0, h1, w1, y[0]) + axis(1, h2, w2, y[1]);
                                              if (y[0] <= c.x[0] || y[1] <= c.x[1] || y[0] >= c.z[0] || y[1] >= c.z[1])
                                                  return 0.0;
                                              return std::exp(asp_log_transition_density(d1, c.s, c.x, c.t, y) +
                                                              asp_log_transition_density(d1, c.t, y, c.u, c.z) + lj);
                                          },
                                          0.0, 1.0, o)
                                   .value;
                           },
                           0.0, 1.0, o)
                           .value;
        const double rhs = asp_transition_density(d1, c.s, c.x, c.u, c.z);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * rhs);
    }
}

TEST_CASE("terminal transition measure for atomic laws") {
    const auto spec = ProcessSpec::asp(3, mix());
    const auto tm = terminal_transition_measure(spec, 0.4, {0.1, 0.2, 0.15});
    double w = 0.0;
    for (const auto& a : tm.norm_atoms()) w += a.weight;
    CHECK(w == Approx(1.0).epsilon(1e-14));
    CHECK(tm.dirichlet().alpha() == std::vector<double>{0.6, 0.6, 0.6});
    // kernel time tau with T (1 - tau) = 1 - s
    CHECK(tm.kernel_time() == Approx(1.0 - 0.6 / 3.0).epsilon(1e-14));
    for (std::size_t j = 0; j < tm.norm_atoms().size(); ++j)
        CHECK(tm.atom_density(j, {0.25, 0.35}) == Approx(tm.atom_density_dirichlet(j, {0.25, 0.35})).epsilon(1e-12));
}

TEST_CASE("conditional moments") {
    // mpmath Dirichlet mixture over the terminal atom
    const auto m = conditional_moments(ProcessSpec::asp(3, mix()), 0.25, {0.1, 0.05, 0.2}, 0.5);
    CHECK(m.mean[0] == Approx(0.17204506755503698068).epsilon(1e-10));
    CHECK(m.mean[1] == Approx(0.12204506755503698068).epsilon(1e-10));
    CHECK(m.mean[2] == Approx(0.27204506755503698068).epsilon(1e-10));
    for (int i = 0; i < 3; ++i) CHECK(m.var[i] == Approx(0.014485888172354801957).epsilon(1e-10));
    CHECK(m.cov[0][1] == Approx(-0.001255215772736913392).epsilon(1e-10));

    const auto l = conditional_moments(ProcessSpec::liouville({2.0, 1.0}, GeneratingLaw::point(1.0)), 0.3, {0.2, 0.1}, 1.0);
    CHECK(l.mean[0] == Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(l.var[0] == Approx(0.035125448028673835125).epsilon(1e-10));
    CHECK(l.cov[0][1] == Approx(-0.035125448028673835125).epsilon(1e-10));

    testgen::Gen g(9);
    for (int i = 0; i < 10; ++i) {
        const auto [s, t] = g.times();
        const auto x = g.uniforms(3, 0.0, 0.2);
        const auto ga = conditional_moments(ProcessSpec::asp(3, GeneratingLaw::gamma(3.0)), s, x, t);
        const double c = g.uniform(0.7, 2.0);
        const auto pt = conditional_moments(ProcessSpec::asp(3, GeneratingLaw::point(c)), s, x, 1.0);
        const double rs = x[0] + x[1] + x[2];
        for (int j = 0; j < 3; ++j) {
            CHECK(ga.mean[j] == Approx(x[j] + (t - s)).epsilon(1e-9));
            CHECK(ga.var[j] == Approx(t - s).epsilon(1e-8));
            CHECK(pt.mean[j] == Approx(x[j] + (c - rs) / 3.0).epsilon(1e-12));
        }
        CHECK(std::abs(ga.cov[0][1]) <= 1e-9);
    }
    CHECK_THROWS_AS(conditional_moments(ProcessSpec::asp(2, mix()), 0.5, {0.1}, 0.7), asp::DomainError);
}

TEST_CASE("measure change") {
    testgen::Gen g(10);
    for (int i = 0; i < 10; ++i) {
        const auto law = g.law();
        CHECK(measure_change_density(ProcessSpec::asp(2, law), 0.0, 0.0) == 1.0);
        CHECK(measure_change_density(ProcessSpec::asp(3, GeneratingLaw::gamma(3.0)), g.uniform(0.0, 0.99),
                                     g.uniform(0.0, 5.0)) == Approx(1.0).epsilon(1e-10));
    }
    // martingale mean one under independent gamma coordinates
    const auto spec = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    RngStream rng(11, 0);
    const int N = 200000;
    for (double t : {0.25, 0.5, 0.75}) {
        std::vector<double> w;
        for (int i = 0; i < N; ++i) {
            const double r = asp::dists::sample_gamma(2.0 * t, 1.0, rng);
            w.push_back(r < 1.0 ? measure_change_density(spec, t, r) : 0.0);
        }
        CHECK(within3(mean_of(w), 1.0, std::sqrt(var_of(w) / N)));
    }
}

TEST_CASE("reweighted reference paths reproduce event probabilities") {
    const auto spec = ProcessSpec::asp(2, mix());
    const double t = 0.5;
    const auto in_a = [](double a, double b) { return a <= 0.2 && b >= 0.1 && b <= 0.4; };
    RngStream q(12, 0);
    const int N = 200000;
    std::vector<double> w;
    for (int i = 0; i < N; ++i) {
        const double a = asp::dists::sample_gamma(t, 1.0, q), b = asp::dists::sample_gamma(t, 1.0, q);
        w.push_back(in_a(a, b) && a + b < 1.2 ? measure_change_density(spec, t, a + b) : 0.0);
    }
    const auto paths = sample_paths(spec, TimeGrid({0.0, 0.5, 1.0}), N, 13);
    std::vector<double> hit;
    for (const auto& p : paths) hit.push_back(in_a(p.at(1, 0), p.at(1, 1)) ? 1.0 : 0.0);
    const double se = std::sqrt(var_of(w) / N + var_of(hit) / N);
    CHECK(within3(mean_of(w), mean_of(hit), se));
}

TEST_CASE("uniform map") {
    const auto d2 = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    for (double x : {0.0, 0.3, 0.7}) {
        const auto y = uniform_map(d2, 1.0, {x, x});
        CHECK(y[0] == Approx(1.0 - x).epsilon(1e-12));
    }
    for (const auto& y : uniform_map(ProcessSpec::asp(3, mix()), 0.4, {0.0, 0.0, 0.0})) CHECK(y == Approx(1.0));
    CHECK(uniform_map(ProcessSpec::asp(3, GeneratingLaw::point(1.0)), 0.5, {0.1, 0.1, 0.1})[0] ==
          Approx(0.48958974456442750367).epsilon(1e-10));
    const auto lv = ProcessSpec::liouville({2.0, 1.0}, mix());
    const auto y = uniform_map(lv, 0.5, {0.3, 0.3});
    CHECK(y[0] == Approx(0.4765625).epsilon(1e-10));
    CHECK(y[1] == Approx(0.19849040190596325551).epsilon(1e-10));
    CHECK_THROWS_AS(uniform_map(d2, 0.0, {0.1, 0.1}), asp::DomainError);
}

TEST_CASE("uniform map of sampled paths is uniform") {
    const auto spec = ProcessSpec::asp(3, GeneratingLaw::point(1.0));
    const auto paths = sample_paths(spec, TimeGrid({0.0, 0.5, 1.0}), 10000, 14);
    std::vector<double> y;
    for (const auto& p : paths) y.push_back(uniform_map(spec, 0.5, p.row(1))[0]);
    CHECK(asp::copula::ks_statistic(y, [](double v) { return std::clamp(v, 0.0, 1.0); }).pass_1pct);
}

TEST_CASE("sampled paths are nondecreasing and end in the support") {
    testgen::Gen g(15);
    const std::vector<SamplerKind> kinds = {SamplerKind::split, SamplerKind::stepping, SamplerKind::representation};
    for (int rep = 0; rep < 6; ++rep) {
        const auto law = g.law();
        const auto spec = rep % 2 ? ProcessSpec::asp(g.integer(2, 4), law)
                                  : ProcessSpec::liouville(g.uniforms(g.integer(2, 3), 0.3, 2.0), law);
        for (auto kind : kinds) {
            // stepping runs a quadrature per step for continuous laws; fewer paths
            const std::size_t count = kind == SamplerKind::stepping ? 8 : 50;
            const auto paths = sample_paths(spec, TimeGrid::uniform(g.integer(1, 12)), count, rep, 1, kind);
            INFO(law.describe(), " sampler ", static_cast<int>(kind), " dim ", spec.dim());
            for (const auto& p : paths) {
                for (int i = 0; i < p.dim; ++i) {
                    REQUIRE(p.at(0, i) == 0.0);
                    for (std::size_t k = 1; k < p.grid.size(); ++k) REQUIRE(p.at(k, i) >= p.at(k - 1, i));
                }
                for (std::size_t k = 0; k < p.grid.size(); ++k) {
                    const auto r = p.row(k);
                    REQUIRE(std::abs(p.norm[k] - std::accumulate(r.begin(), r.end(), 0.0)) <= 1e-12 * (1 + p.norm[k]));
                }
                const double R = p.norm.back();
                if (law.is_atomic()) {
                    bool on_atom = false;
                    for (const auto& a : law.atoms()) on_atom = on_atom || std::abs(a.location - R) <= 1e-12 * a.location;
                    REQUIRE(on_atom);
                } else {
                    REQUIRE(R > 0.0);
                }
            }
        }
    }
}

TEST_CASE("terminal norm follows the generating law") {
    const auto law = GeneratingLaw::gamma(2.5, 0.8);
    for (auto kind : {SamplerKind::split, SamplerKind::representation}) {
        const auto paths = sample_paths(ProcessSpec::asp(3, law), TimeGrid::uniform(3), 10000, 16, 2, kind);
        std::vector<double> r;
        for (const auto& p : paths) r.push_back(p.norm.back());
        CHECK(asp::copula::ks_statistic(r, [&](double v) { return law.cdf(v); }).pass_1pct);
    }
    const auto lpaths = sample_paths(ProcessSpec::liouville({2.0, 1.0}, law), TimeGrid::uniform(3), 10000, 17);
    std::vector<double> r;
    for (const auto& p : lpaths) r.push_back(p.norm.back());
    CHECK(asp::copula::ks_statistic(r, [&](double v) { return law.cdf(v); }).pass_1pct);
}

TEST_CASE("liouville split sampler first coordinate") {
    const auto spec = ProcessSpec::liouville({2.0, 1.0}, GeneratingLaw::point(1.0));
    const auto paths = sample_paths(spec, TimeGrid::uniform(2), 100000, 18);
    std::vector<double> x1;
    for (const auto& p : paths) {
        REQUIRE(std::abs(p.norm.back() - 1.0) <= 1e-14);
        x1.push_back(p.at(2, 0));
    }
    // Beta(2, 1): variance 1/18
    CHECK(within3(mean_of(x1), 2.0 / 3.0, std::sqrt(1.0 / 18.0 / x1.size())));
}

TEST_CASE("increment representation") {
    const auto spec = ProcessSpec::asp(3, GeneratingLaw::point(1.0));
    RngStream rng(19, 0);
    const auto grid = TimeGrid::uniform(0.3, 4);
    const std::vector<double> xs = {0.1, 0.2, 0.05};
    for (int i = 0; i < 200; ++i) {
        const auto p = sample_increment_representation(spec, 0.3, xs, grid, rng);
        // increments, so the first row is zero and the last norm is R* = 1 - |x_s|
        REQUIRE(p.norm.front() == 0.0);
        REQUIRE(std::abs(p.norm.back() - 0.65) <= 1e-14);
    }
    // conditioning at s = 0 from the origin gives an l1-symmetric terminal with R = 1
    const auto g0 = TimeGrid::uniform(2);
    std::vector<double> a, b;
    RngStream r1(20, 0);
    const auto split = sample_paths(spec, g0, 10000, 21);
    for (int i = 0; i < 10000; ++i) {
        const auto p = sample_increment_representation(spec, 0.0, {0.0, 0.0, 0.0}, g0, r1);
        REQUIRE(std::abs(p.norm.back() - 1.0) <= 1e-14);
        a.push_back(p.at(1, 0));
        b.push_back(split[i].at(1, 0));
    }
    CHECK(asp::copula::ks_two_sample(a, b).pass_1pct);
    CHECK_THROWS_AS(sample_increment_representation(spec, 0.3, {0.5, 0.4, 0.2}, grid, rng), asp::OutOfSupportError);
}

TEST_CASE("sample_paths is independent of the thread count") {
    const auto spec = ProcessSpec::liouville({1.5, 0.5, 1.0}, mix());
    const auto grid = TimeGrid::uniform(5);
    for (auto kind : {SamplerKind::split, SamplerKind::stepping, SamplerKind::representation}) {
        const auto a = sample_paths(spec, grid, 64, 99, 1, kind);
        const auto b = sample_paths(spec, grid, 64, 99, 4, kind);
        REQUIRE(a.size() == b.size());
        for (std::size_t p = 0; p < a.size(); ++p) {
            REQUIRE(std::memcmp(a[p].values.data(), b[p].values.data(), a[p].values.size() * sizeof(double)) == 0);
            REQUIRE(std::memcmp(a[p].norm.data(), b[p].norm.data(), a[p].norm.size() * sizeof(double)) == 0);
        }
    }
}
