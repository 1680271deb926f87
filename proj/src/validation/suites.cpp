#include "asp/validation/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "asp/copula/copula.hpp"
#include "asp/copula/stats.hpp"
#include "asp/dists/multivariate.hpp"
#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"
#include "asp/genlaw/generator.hpp"
#include "asp/genlaw/kernel.hpp"
#include "asp/procs/bridge.hpp"
#include "asp/procs/moments.hpp"
#include "asp/procs/samplers.hpp"
#include "asp/procs/transition.hpp"
#include "asp/specfun/quadrature.hpp"
#include "asp/validation/mass.hpp"

namespace asp::validation {

namespace {

using genlaw::GeneratingLaw;
using procs::MultiPath;
using procs::ProcessSpec;
using procs::TimeGrid;
using Clock = std::chrono::steady_clock;

template <class... A>
std::string label(const A&... parts) {
    std::ostringstream os;
    os.precision(4);
    (os << ... << parts);
    return os.str();
}

class Recorder {
public:
    Recorder(std::string suite, const ValidationOptions& opts, std::uint64_t offset)
        : suite_(std::move(suite)), opts_(opts), seed_(opts.seed + 7919 * offset), last_(Clock::now()) {}

    void add(const std::string& name, double stat, double threshold) {
        const auto now = Clock::now();
        const double thr = opts_.tolerance ? *opts_.tolerance : threshold;
        // NaN fails
        out_.push_back({suite_, name, stat, thr, stat <= thr,
                        std::chrono::duration<double>(now - last_).count()});
        last_ = now;
    }
    // stat = 0 when f throws E, 1 otherwise
    template <class E, class F>
    void expect_throw(const std::string& name, F&& f) {
        double stat = 1.0;
        try {
            f();
        } catch (const E&) {
            stat = 0.0;
        }
        add(name, stat, 0.0);
    }

    std::size_t scaled(std::size_t base) const {
        return std::max<std::size_t>(100, static_cast<std::size_t>(std::llround(base * opts_.scale)));
    }
    std::uint64_t seed(std::uint64_t k = 0) const { return seed_ + k; }
    unsigned threads() const { return opts_.threads; }
    std::vector<CheckResult> take() { return std::move(out_); }

private:
    std::string suite_;
    const ValidationOptions& opts_;
    std::uint64_t seed_;
    Clock::time_point last_;
    std::vector<CheckResult> out_;
};

// Sample mean with its standard error.
struct Mean {
    double sum = 0.0, sq = 0.0;
    std::size_t n = 0;
    void add(double v) {
        sum += v;
        sq += v * v;
        ++n;
    }
    double mean() const { return sum / n; }
    double se() const {
        const double m = mean();
        return std::sqrt(std::max(0.0, sq / n - m * m) / (n - 1));
    }
    double z(double target) const { return std::abs(mean() - target) / se(); }
};

GeneratingLaw two_point() { return GeneratingLaw::mixture({0.8, 1.2}, {0.5, 0.5}); }

std::vector<double> column(const std::vector<MultiPath>& paths, std::size_t k, int i) {
    std::vector<double> c(paths.size());
    for (std::size_t p = 0; p < paths.size(); ++p) c[p] = paths[p].at(k, i);
    return c;
}

std::vector<std::vector<double>> terminals(const ProcessSpec& spec, std::size_t N,
                                           std::uint64_t seed, unsigned threads) {
    const auto paths = procs::sample_paths(spec, TimeGrid({0.0, 1.0}), N, seed, threads);
    std::vector<std::vector<double>> rows;
    rows.reserve(N);
    for (const auto& p : paths) rows.push_back(p.row(1));
    return rows;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// ---------------------------------------------------------------------------

std::vector<CheckResult> l1_symmetry(const ValidationOptions& opts) {
    Recorder rec("l1_symmetry", opts, 1);
    struct Case {
        int n;
        GeneratingLaw law;
        const char* tag;
    };
    const std::vector<Case> cases{{2, GeneratingLaw::point(1.0), "point"},
                                  {3, GeneratingLaw::point(1.0), "point"},
                                  {2, GeneratingLaw::gamma(2.0), "gamma2"},
                                  {3, two_point(), "mix"}};
    const std::vector<double> levels{0.8, 0.6, 0.4, 0.2, 0.1};
    const std::size_t N = rec.scaled(100000);
    for (std::size_t c = 0; c < cases.size(); ++c) {
        const auto& [n, law, tag] = cases[c];
        const auto spec = ProcessSpec::asp(n, law);
        const copula::EmpiricalSample sample(terminals(spec, N, rec.seed(c), rec.threads()));
        for (std::size_t k = 0; k < levels.size(); ++k) {
            const double r = genlaw::survival_inverse(law, n, levels[k]);
            std::vector<double> w(n, 1.0 / n);
            if (k % 2 == 1) {
                w.assign(n, 0.0);
                for (int i = 0; i < n; ++i) w[i] = (n - i) * 2.0 / (n * (n + 1));
            }
            std::vector<double> x(n);
            for (int i = 0; i < n; ++i) x[i] = r * w[i];
            double norm = 0.0;
            for (double v : x) norm += v;
            const double F = genlaw::marginal_survival(law, n, norm);
            const auto est = copula::empirical_joint_survival(sample, x);
            const double sigma = std::sqrt(F * (1.0 - F) / N);
            rec.add(label("n=", n, " ", tag, " |x|=", norm, k % 2 ? " skewed" : " equal"),
                    std::abs(est.value - F) / sigma, 3.0);
        }
    }
    return rec.take();
}

std::vector<CheckResult> oracle_triangle(const ValidationOptions& opts) {
    Recorder rec("oracle_triangle", opts, 2);
    const auto spec = ProcessSpec::asp(2, GeneratingLaw::point(1.0));
    const TimeGrid grid({0.0, 0.25, 0.5, 1.0});
    const std::size_t N = rec.scaled(10000);
    using procs::SamplerKind;
    const std::vector<std::pair<const char*, SamplerKind>> kinds{
        {"split", SamplerKind::split},
        {"stepping", SamplerKind::stepping},
        {"representation", SamplerKind::representation}};
    std::vector<std::vector<MultiPath>> draws;
    for (std::size_t j = 0; j < kinds.size(); ++j)
        draws.push_back(procs::sample_paths(spec, grid, N, rec.seed(j), rec.threads(), kinds[j].second));
    for (std::size_t a = 0; a < kinds.size(); ++a)
        for (std::size_t b = a + 1; b < kinds.size(); ++b)
            for (std::size_t k = 1; k < grid.size(); ++k)
                for (int i = 0; i < 2; ++i) {
                    const auto ks = copula::ks_two_sample(column(draws[a], k, i), column(draws[b], k, i));
                    rec.add(label(kinds[a].first, " vs ", kinds[b].first, " t=", grid[k], " coord=", i + 1),
                            ks.statistic, ks.critical);
                }
    return rec.take();
}

std::vector<CheckResult> bridge_equivalence(const ValidationOptions& opts) {
    Recorder rec("bridge_equivalence", opts, 3);
    const TimeGrid grid({0.0, 0.25, 0.5, 0.75, 1.0});
    const std::size_t N = rec.scaled(10000);
    const std::vector<double> ms{0.5, 1.0, 3.0};
    for (std::size_t c = 0; c < ms.size(); ++c) {
        const double m = ms[c];
        std::vector<std::vector<double>> seq(grid.size() - 2), ratio(grid.size() - 2);
        dists::RngStream ra(rec.seed(2 * c), 0), rb(rec.seed(2 * c + 1), 0);
        Mean beta_mean;
        for (std::size_t p = 0; p < N; ++p) {
            const auto x = procs::sample_gamma_bridge(m, 1.0, grid, ra);
            const auto y = procs::sample_gamma_bridge_ratio(m, 1.0, grid, rb);
            for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
                seq[k - 1].push_back(x[k]);
                ratio[k - 1].push_back(y[k]);
            }
            beta_mean.add(x[1]);
        }
        for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
            const auto ks = copula::ks_two_sample(seq[k - 1], ratio[k - 1]);
            rec.add(label("m=", m, " t=", grid[k]), ks.statistic, ks.critical);
        }
        // gamma_t ~ Beta(m t, m (1 - t)) with mean t
        rec.add(label("m=", m, " beta mean t=0.25"), beta_mean.z(0.25), 3.0);
    }

    // increments on {0, .2, .5, 1} with m = 3: Dirichlet(0.6, 0.9, 1.5)
    const TimeGrid g2({0.0, 0.2, 0.5, 1.0});
    const std::vector<double> alpha{0.6, 0.9, 1.5};
    const double A = 3.0;
    dists::RngStream rng(rec.seed(100), 0);
    Mean d1, d2, v1, c12;
    const double mu1 = alpha[0] / A, mu2 = alpha[1] / A;
    for (std::size_t p = 0; p < N; ++p) {
        const auto x = procs::sample_gamma_bridge(3.0, 1.0, g2, rng);
        const double a = x[1] - x[0], b = x[2] - x[1];
        d1.add(a);
        d2.add(b);
        v1.add((a - mu1) * (a - mu1));
        c12.add((a - mu1) * (b - mu2));
    }
    rec.add("dirichlet mean 1", d1.z(mu1), 3.0);
    rec.add("dirichlet mean 2", d2.z(mu2), 3.0);
    rec.add("dirichlet var 1", v1.z(mu1 * (1.0 - mu1) / (A + 1.0)), 3.0);
    rec.add("dirichlet cov 12", c12.z(-mu1 * mu2 / (A + 1.0)), 3.0);
    return rec.take();
}

std::vector<CheckResult> kernel_martingale(const ValidationOptions& opts) {
    Recorder rec("kernel_martingale", opts, 4);
    const specfun::IntegrationOptions qo{1e-300, 1e-13, 4000, 9};
    const std::vector<std::pair<const char*, GeneratingLaw>> laws{{"point", GeneratingLaw::point(1.0)},
                                                                 {"mix", two_point()}};
    const std::vector<std::pair<double, double>> st{{0.0, 0.3}, {0.0, 0.8}, {0.2, 0.5},
                                                    {0.2, 0.9}, {0.5, 0.7}, {0.6, 0.95}};
    for (const auto& [tag, law] : laws)
        for (double T : {2.0, 3.0})
            for (const auto& [s, t] : st) {
                const genlaw::PsiKernel ks(law, T, s), kt(law, T, t);
                const std::vector<double> xs = s == 0.0 ? std::vector<double>{0.0}
                                                        : std::vector<double>{0.1, 0.5, 0.75};
                for (double x : xs) {
                    const double a = T * (t - s);
                    auto f = [&](const genlaw::Abscissa& r) {
                        const double lp = kt.log_value(r);
                        if (!(lp > -INFINITY)) return 0.0;
                        return std::exp(lp + dists::log_gamma_kernel(a, specfun::gap_above(r, x)));
                    };
                    const double lhs = specfun::integrate_pieces(f, x, law.upper(), law.breakpoints(),
                                                                 genlaw::tail_scale(law, T), qo)
                                           .value;
                    const double rhs = std::exp(ks.log_value(x));
                    rec.add(label(tag, " T=", T, " s=", s, " t=", t, " x=", x), rel_err(lhs, rhs), 1e-8);
                }
            }

    // Under Q the norm is a gamma process: E_Q[Psi_t(R_t)] = 1.
    const std::size_t N = rec.scaled(1000000);
    const double T = 3.0;
    const auto law = GeneratingLaw::point(1.0);
    const std::vector<double> times{0.25, 0.5, 0.75};
    for (std::size_t j = 0; j < times.size(); ++j) {
        const genlaw::PsiKernel k(law, T, times[j]);
        dists::RngStream rng(rec.seed(j), 0);
        Mean acc;
        for (std::size_t p = 0; p < N; ++p) {
            const double r = dists::sample_gamma(T * times[j], 1.0, rng);
            const double lp = k.log_value(r);
            acc.add(lp > -INFINITY ? std::exp(lp) : 0.0);
        }
        rec.add(label("monte carlo point T=3 t=", times[j]), acc.z(1.0), 3.0);
    }
    return rec.take();
}

std::vector<CheckResult> gamma_degeneracy(const ValidationOptions& opts) {
    Recorder rec("gamma_degeneracy", opts, 5);
    for (double T : {2.0, 3.0, 4.5}) {
        const auto law = GeneratingLaw::gamma(T);
        double worst = 0.0;
        for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            const genlaw::PsiKernel k(law, T, t);
            for (double x : {0.0, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
                worst = std::max(worst, std::abs(std::exp(k.log_value(x)) - 1.0));
        }
        rec.add(label("psi identically 1 T=", T), worst, 1e-10);
    }

    struct Spot {
        double s;
        std::vector<double> x;
        double t;
        std::vector<double> y;
    };
    auto density_check = [&](const std::string& name, const ProcessSpec& spec, const std::vector<Spot>& spots) {
        double worst = 0.0;
        for (const auto& sp : spots) {
            double prod = 1.0;
            for (std::size_t i = 0; i < sp.x.size(); ++i)
                prod *= dists::gamma_density(sp.t - sp.s, spec.activity()[i], sp.y[i] - sp.x[i]);
            worst = std::max(worst, rel_err(procs::asp_transition_density(spec, sp.s, sp.x, sp.t, sp.y), prod));
        }
        rec.add(name, worst, 1e-10);
    };
    density_check("density product n=2", ProcessSpec::asp(2, GeneratingLaw::gamma(2.0)),
                  {{0.0, {0.0, 0.0}, 0.4, {0.3, 0.7}},
                   {0.3, {0.2, 0.5}, 0.6, {0.9, 0.6}},
                   {0.3, {0.2, 0.5}, 1.0, {1.4, 2.5}},
                   {0.7, {1.0, 0.1}, 0.75, {1.001, 0.4}}});
    density_check("density product n=3", ProcessSpec::asp(3, GeneratingLaw::gamma(3.0)),
                  {{0.0, {0.0, 0.0, 0.0}, 0.5, {0.2, 0.4, 1.3}},
                   {0.25, {0.1, 0.2, 0.3}, 0.8, {0.5, 0.25, 2.0}},
                   {0.5, {0.4, 0.4, 0.4}, 1.0, {0.9, 3.0, 0.45}}});
    density_check("density product liouville (1.5, 0.5)",
                  ProcessSpec::liouville({1.5, 0.5}, GeneratingLaw::gamma(2.0)),
                  {{0.0, {0.0, 0.0}, 0.3, {0.4, 0.05}},
                   {0.2, {0.3, 0.1}, 0.7, {1.1, 0.35}},
                   {0.2, {0.3, 0.1}, 1.0, {2.0, 0.9}}});

    // sampled coordinates are independent gamma processes with unit activity
    const auto spec = ProcessSpec::asp(3, GeneratingLaw::gamma(3.0));
    const TimeGrid grid({0.0, 0.25, 1.0});
    const std::size_t N = rec.scaled(100000);
    Mean mean[2], var[2], cov[2], inc;
    for (std::size_t p = 0; p < N; ++p) {
        dists::RngStream rng(rec.seed(10), p);
        const auto path = procs::sample_asp_split(spec, grid, rng);
        for (int k = 0; k < 2; ++k) {
            const double t = grid[k + 1];
            double m = 0.0, v = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double d = path.at(k + 1, i) - t;
                m += d / 3.0;
                v += d * d / 3.0;
            }
            mean[k].add(m);
            var[k].add(v);
            const double d0 = path.at(k + 1, 0) - t, d1 = path.at(k + 1, 1) - t, d2 = path.at(k + 1, 2) - t;
            cov[k].add((d0 * d1 + d0 * d2 + d1 * d2) / 3.0);
        }
        double c = 0.0;
        for (int i = 0; i < 3; ++i) c += (path.at(1, i) - 0.25) * (path.at(2, i) - path.at(1, i) - 0.75) / 3.0;
        inc.add(c);
    }
    for (int k = 0; k < 2; ++k) {
        const double t = grid[k + 1];
        rec.add(label("sampled mean t=", t), mean[k].z(0.0), 3.0);
        rec.add(label("sampled variance t=", t), var[k].z(t), 3.0);
        rec.add(label("sampled covariance t=", t), cov[k].z(0.0), 3.0);
    }
    rec.add("sampled increment covariance", inc.z(0.0), 3.0);
    return rec.take();
}

std::vector<CheckResult> williamson(const ValidationOptions& opts) {
    Recorder rec("williamson", opts, 6);
    using genlaw::ArchGenerator;
    std::vector<double> xs;
    for (int k = 0; k < 30; ++k) xs.push_back(0.05 + 0.1 * k);

    const std::vector<std::pair<ArchGenerator, int>> gens{{ArchGenerator::power(1), 2},
                                                          {ArchGenerator::power(2), 3},
                                                          {ArchGenerator::exponential(), 2},
                                                          {ArchGenerator::exponential(), 3}};
    for (const auto& [h, n] : gens) {
        const auto law = genlaw::williamson_inverse(h, n);
        double worst = 0.0;
        for (double x : xs) worst = std::max(worst, std::abs(genlaw::marginal_survival(law, n, x) - h(x)));
        rec.add(label("h to nu to h ", h.name(), " n=", n), worst, 1e-6);
    }
    rec.expect_throw<InvalidGenerator>("(1 - x)_+ is not 3-monotone",
                                       [] { genlaw::williamson_inverse(ArchGenerator::power(1), 3); });

    const std::vector<std::pair<const char*, GeneratingLaw>> laws{{"point", GeneratingLaw::point(1.0)},
                                                                 {"gamma2", GeneratingLaw::gamma(2.0)}};
    for (const auto& [tag, law] : laws)
        for (int n : {2, 3})
            for (bool numeric : {false, true}) {
                auto gen = ArchGenerator::from_law(law, n);
                if (numeric) gen = gen.without_derivatives();
                const auto back = genlaw::williamson_inverse(gen, n);
                double worst = 0.0;
                for (double x : xs) {
                    // finite differences straddle the jump of a point mass
                    if (law.is_atomic() && numeric && std::abs(x - 1.0) < 1e-2) continue;
                    worst = std::max(worst, std::abs(back.cdf(x) - law.cdf(x)));
                }
                rec.add(label("nu to h to nu ", tag, " n=", n, numeric ? " numeric" : " analytic"), worst, 1e-6);
            }
    return rec.take();
}

// Tower property: residuals of xi_t against the conditional moments given xi_s
// have mean zero.
std::vector<CheckResult> moments(const ValidationOptions& opts) {
    Recorder rec("moments", opts, 7);
    const std::vector<std::pair<const char*, ProcessSpec>> specs{
        {"asp n=3 mix", ProcessSpec::asp(3, two_point())},
        {"liouville (2, 1) point", ProcessSpec::liouville({2.0, 1.0}, GeneratingLaw::point(1.0))}};
    const TimeGrid grid({0.0, 0.25, 0.5, 1.0});
    const std::size_t N = rec.scaled(1000000);
    for (std::size_t c = 0; c < specs.size(); ++c) {
        const auto& [tag, spec] = specs[c];
        const int n = spec.dim();
        std::vector<std::vector<Mean>> mean(2, std::vector<Mean>(n)), var(2, std::vector<Mean>(n));
        std::vector<std::vector<Mean>> cov(2, std::vector<Mean>(n * (n - 1) / 2));
        for (std::size_t p = 0; p < N; ++p) {
            dists::RngStream rng(rec.seed(c), p);
            const auto path = procs::sample_liouville_split(spec, grid, rng);
            const auto xs = path.row(1);
            for (int k = 0; k < 2; ++k) {
                const auto mo = procs::conditional_moments(spec, 0.25, xs, grid[k + 2]);
                std::vector<double> d(n);
                for (int i = 0; i < n; ++i) {
                    d[i] = path.at(k + 2, i) - mo.mean[i];
                    mean[k][i].add(d[i]);
                    var[k][i].add(d[i] * d[i] - mo.var[i]);
                }
                int q = 0;
                for (int i = 0; i < n; ++i)
                    for (int j = i + 1; j < n; ++j) cov[k][q++].add(d[i] * d[j] - mo.cov[i][j]);
            }
        }
        for (int k = 0; k < 2; ++k) {
            const double t = grid[k + 2];
            for (int i = 0; i < n; ++i) {
                rec.add(label(tag, " t=", t, " mean ", i + 1), mean[k][i].z(0.0), 3.0);
                rec.add(label(tag, " t=", t, " var ", i + 1), var[k][i].z(0.0), 3.0);
            }
            int q = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    rec.add(label(tag, " t=", t, " cov ", i + 1, j + 1), cov[k][q++].z(0.0), 3.0);
        }
    }
    return rec.take();
}

std::vector<CheckResult> uniform_process(const ValidationOptions& opts) {
    Recorder rec("uniform_process", opts, 8);
    const std::size_t N = rec.scaled(10000);
    auto uniform_cdf = [](double u) { return std::clamp(u, 0.0, 1.0); };
    auto run = [&](const char* tag, const ProcessSpec& spec, const TimeGrid& grid, std::uint64_t seed) {
        const auto paths = procs::sample_paths(spec, grid, N, seed, rec.threads());
        const int n = spec.dim();
        for (std::size_t k = 1; k < grid.size(); ++k) {
            std::vector<std::vector<double>> u(n, std::vector<double>(N));
            for (std::size_t p = 0; p < N; ++p) {
                const auto y = procs::uniform_map(spec, grid[k], paths[p].row(k));
                for (int i = 0; i < n; ++i) u[i][p] = y[i];
            }
            for (int i = 0; i < n; ++i) {
                const auto ks = copula::ks_statistic(u[i], uniform_cdf);
                rec.add(label(tag, " t=", grid[k], " coord=", i + 1), ks.statistic, ks.critical);
            }
        }
    };
    run("asp n=3 point", ProcessSpec::asp(3, GeneratingLaw::point(1.0)), TimeGrid({0.0, 0.25, 0.5, 1.0}),
        rec.seed(0));
    run("liouville (2, 1) mix", ProcessSpec::liouville({2.0, 1.0}, two_point()), TimeGrid({0.0, 0.5, 1.0}),
        rec.seed(1));
    return rec.take();
}

std::vector<CheckResult> normalization(const ValidationOptions& opts) {
    Recorder rec("normalization", opts, 9);
    const auto point = GeneratingLaw::point(1.0);
    rec.add("asp n=2 point s=0.25 x=(0.1, 0.15) t=0.75",
            std::abs(asp_transition_mass(ProcessSpec::asp(2, point), 0.25, {0.1, 0.15}, 0.75) - 1.0), 1e-6);
    rec.add("asp n=2 gamma2 s=0.3 x=(0.2, 0.3) t=1",
            std::abs(asp_transition_mass(ProcessSpec::asp(2, GeneratingLaw::gamma(2.0)), 0.3, {0.2, 0.3}, 1.0) -
                     1.0),
            1e-6);
    rec.add("grb mix m=1 T=1 s=0.3 x=0.2 t=0.7",
            std::abs(grb_transition_mass(two_point(), 1.0, 1.0, 0.3, 0.2, 0.7) - 1.0), 1e-8);
    rec.add("grb mix m=1 T=1 s=0.3 x=0.2 t=1",
            std::abs(grb_transition_mass(two_point(), 1.0, 1.0, 0.3, 0.2, 1.0) - 1.0), 1e-8);
    rec.add("grb gamma2 m=2 T=1 s=0.4 x=0.5 t=0.9",
            std::abs(grb_transition_mass(GeneratingLaw::gamma(2.0), 2.0, 1.0, 0.4, 0.5, 0.9) - 1.0), 1e-8);
    rec.add("norm asp n=3 mix s=0.2 x=0.3 t=0.6",
            std::abs(norm_transition_mass(ProcessSpec::asp(3, two_point()), 0.2, 0.3, 0.6) - 1.0), 1e-8);
    rec.add("norm asp n=3 point s=0.2 x=0.4 t=0.6",
            std::abs(norm_transition_mass(ProcessSpec::asp(3, point), 0.2, 0.4, 0.6) - 1.0), 1e-8);
    rec.add("norm asp n=2 gamma2 s=0.3 x=0.5 t=1",
            std::abs(norm_transition_mass(ProcessSpec::asp(2, GeneratingLaw::gamma(2.0)), 0.3, 0.5, 1.0) - 1.0),
            1e-8);
    return rec.take();
}

std::vector<CheckResult> terminal_copula(const ValidationOptions& opts) {
    Recorder rec("terminal_copula", opts, 10);
    const std::size_t N = rec.scaled(100000);
    const std::vector<std::vector<double>> u2{{0.5, 0.5}, {0.3, 0.7}, {0.8, 0.6}, {0.2, 0.2}};
    std::uint64_t c = 0;
    for (int n : {2, 3}) {
        const std::vector<std::pair<const char*, GeneratingLaw>> laws{
            {"point", GeneratingLaw::point(1.0)}, {"gamma", GeneratingLaw::gamma(n)}, {"mix", two_point()}};
        for (const auto& [tag, law] : laws) {
            const auto spec = ProcessSpec::asp(n, law);
            const copula::EmpiricalSample sample(terminals(spec, N, rec.seed(c++), rec.threads()));
            const auto pseudo = copula::survival_pseudo_observations(sample);
            const auto gen = genlaw::ArchGenerator::from_law(law, n);
            double ident = 0.0;
            for (auto u : u2) {
                if (n == 3) u.push_back(0.6);
                const double C = copula::asp_terminal_copula(spec, u);
                ident = std::max(ident, std::abs(C - copula::copula_eval(gen, u)));
                const auto est = copula::empirical_copula(pseudo, u);
                const double sigma = std::max(std::sqrt(C * (1.0 - C) / N), 1.0 / N);
                std::ostringstream us;
                for (double v : u) us << ' ' << v;
                rec.add(label("n=", n, " ", tag, " u=", us.str()), std::abs(est.value - C) / sigma, 3.0);
            }
            rec.add(label("n=", n, " ", tag, " archimedean form"), ident, 1e-10);

            std::vector<std::vector<double>> mirrored = sample.rows();
            for (auto& r : mirrored)
                for (double& v : r) v = std::exp(-v);
            const auto a = pseudo.rows();
            const auto b = copula::pseudo_observations(copula::EmpiricalSample(std::move(mirrored))).rows();
            double mismatches = 0.0;
            for (std::size_t k = 0; k < a.size(); ++k) mismatches += a[k] != b[k];
            rec.add(label("n=", n, " ", tag, " rank invariance"), mismatches, 0.0);
        }
    }
    return rec.take();
}

std::vector<CheckResult> determinism(const ValidationOptions& opts) {
    Recorder rec("determinism", opts, 11);
    const auto spec = ProcessSpec::asp(3, two_point());
    const auto grid = TimeGrid::uniform(8);
    const std::size_t N = rec.scaled(500);
    using procs::SamplerKind;
    for (auto [tag, kind] : {std::pair{"split", SamplerKind::split}, std::pair{"stepping", SamplerKind::stepping},
                             std::pair{"representation", SamplerKind::representation}}) {
        const auto a = procs::sample_paths(spec, grid, N, rec.seed(), 1, kind);
        const auto b = procs::sample_paths(spec, grid, N, rec.seed(), 4, kind);
        const auto c = procs::sample_paths(spec, grid, N, rec.seed(), 1, kind);
        double mismatches = 0.0;
        for (std::size_t p = 0; p < N; ++p) {
            mismatches += a[p].values != b[p].values || a[p].norm != b[p].norm;
            mismatches += a[p].values != c[p].values || a[p].norm != c[p].norm;
        }
        rec.add(label(tag, " threads 1/4/1"), mismatches, 0.0);
    }
    return rec.take();
}

using SuiteFn = std::vector<CheckResult> (*)(const ValidationOptions&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"l1_symmetry", l1_symmetry},
        {"oracle_triangle", oracle_triangle},
        {"bridge_equivalence", bridge_equivalence},
        {"kernel_martingale", kernel_martingale},
        {"gamma_degeneracy", gamma_degeneracy},
        {"williamson", williamson},
        {"moments", moments},
        {"uniform_process", uniform_process},
        {"normalization", normalization},
        {"terminal_copula", terminal_copula},
        {"determinism", determinism}};
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, fn] : registry()) v.push_back(name);
        return v;
    }();
    return names;
}

bool is_suite(const std::string& name) {
    const auto& v = suite_names();
    return std::find(v.begin(), v.end(), name) != v.end();
}

std::vector<CheckResult> run_suite(const std::string& name, const ValidationOptions& opts) {
    for (const auto& [n, fn] : registry())
        if (n == name) {
            try {
                return fn(opts);
            } catch (const std::exception& e) {
                return {{name, std::string("aborted: ") + e.what(), INFINITY, 0.0, false, 0.0}};
            }
        }
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace asp::validation
