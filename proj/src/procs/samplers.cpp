#include "asp/procs/samplers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <optional>
#include <numeric>
#include <thread>

#include "asp/dists/multivariate.hpp"
#include "asp/errors.hpp"
#include "asp/procs/bridge.hpp"
#include "internal.hpp"

namespace asp::procs {

namespace {

void check_start_zero(const TimeGrid& grid) {
    if (grid.start() != 0.0) throw DomainError("this sampler needs a grid starting at 0");
}

MultiPath empty_path(const TimeGrid& grid, int n) {
    return MultiPath{grid, n, std::vector<double>(grid.size() * n, 0.0), std::vector<double>(grid.size(), 0.0)};
}

void fill_norms(MultiPath& p) {
    for (std::size_t k = 0; k < p.grid.size(); ++k) {
        double s = 0.0;
        for (int i = 0; i < p.dim; ++i) s += p.at(k, i);
        p.norm[k] = s;
    }
}

MultiPath split_impl(const ProcessSpec& spec, const TimeGrid& grid, dists::RngStream& rng) {
    check_start_zero(grid);
    const int n = spec.dim();
    const auto& m = spec.activity();
    const std::size_t K = grid.size() - 1;
    std::vector<double> master;
    master.reserve(n * K + 1);
    master.push_back(0.0);
    double u = 0.0;
    for (int i = 0; i < n; ++i) {
        for (std::size_t j = 1; j <= K; ++j) master.push_back(u + m[i] * grid[j]);
        u += m[i];
        master.back() = u;
    }
    master.back() = spec.total_activity();

    const double r = spec.law().sample(rng);
    const auto inc = detail::bridge_increments(1.0, master, rng);
    MultiPath p = empty_path(grid, n);
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 1; j <= K; ++j) {
            acc += inc[i * K + j - 1];
            p.values[j * n + i] = r * acc;
        }
    }
    fill_norms(p);
    p.norm.back() = r;
    return p;
}

}  // namespace

MultiPath sample_asp_split(const ProcessSpec& spec, const TimeGrid& grid, dists::RngStream& rng) {
    if (spec.kind() != ProcessKind::asp) throw DomainError("sample_asp_split needs an ASP process");
    return split_impl(spec, grid, rng);
}

MultiPath sample_liouville_split(const ProcessSpec& spec, const TimeGrid& grid,
                                 dists::RngStream& rng) {
    return split_impl(spec, grid, rng);
}

MultiPath sample_transition_stepping(const ProcessSpec& spec, const TimeGrid& grid,
                                     dists::RngStream& rng) {
    check_start_zero(grid);
    const int n = spec.dim();
    const auto& m = spec.activity();
    MultiPath p = empty_path(grid, n);
    double r_s = 0.0;
    std::vector<double> alpha(n);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const double s = grid[k - 1], t = grid[k];
        const genlaw::ConditionalNormLaw nu_st(spec.law(), spec.total_activity(), s, t, r_s);
        const double r_t = nu_st.sample(rng);
        for (int i = 0; i < n; ++i) alpha[i] = m[i] * (t - s);
        const auto d = dists::sample_dirichlet(dists::DirichletParams(alpha), rng);
        const double step = r_t - r_s;
        double acc = 0.0;
        for (int i = 0; i < n; ++i) {
            p.values[k * n + i] = p.values[(k - 1) * n + i] + step * d[i];
            acc += p.values[k * n + i];
        }
        p.norm[k] = acc;
        r_s = acc;
    }
    return p;
}

MultiPath sample_increment_representation(const ProcessSpec& spec,
                                          const genlaw::ConditionalNormLaw& terminal,
                                          const TimeGrid& grid, dists::RngStream& rng) {
    if (terminal.t() != 1.0) throw DomainError("the representation needs the terminal norm law");
    if (grid.start() != terminal.s()) throw DomainError("grid must start at the conditioning time");
    const int n = spec.dim();
    const auto& m = spec.activity();
    const double s = terminal.s();
    const double r_star = terminal.sample(rng) - terminal.r_s();
    std::vector<double> alpha(n);
    for (int i = 0; i < n; ++i) alpha[i] = (1.0 - s) * m[i];
    const auto d = dists::sample_dirichlet(dists::DirichletParams(alpha), rng);
    MultiPath p = empty_path(grid, n);
    for (int i = 0; i < n; ++i) {
        const auto g = sample_gamma_bridge(m[i], 1.0, grid, rng);
        for (std::size_t k = 0; k < grid.size(); ++k) p.values[k * n + i] = r_star * d[i] * g[k];
    }
    fill_norms(p);
    p.norm.back() = r_star;
    return p;
}

MultiPath sample_increment_representation(const ProcessSpec& spec, double s,
                                          const std::vector<double>& x_s, const TimeGrid& grid,
                                          dists::RngStream& rng) {
    if (x_s.size() != static_cast<std::size_t>(spec.dim())) throw DomainError("state has the wrong dimension");
    for (double v : x_s)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("state coordinates must be nonnegative");
    const double r_s = std::accumulate(x_s.begin(), x_s.end(), 0.0);
    const genlaw::ConditionalNormLaw terminal(spec.law(), spec.total_activity(), s, 1.0, r_s);
    return sample_increment_representation(spec, terminal, grid, rng);
}

std::vector<MultiPath> sample_paths(const ProcessSpec& spec, const TimeGrid& grid,
                                    std::size_t paths, std::uint64_t seed, unsigned threads,
                                    SamplerKind sampler) {
    check_start_zero(grid);
    std::optional<genlaw::ConditionalNormLaw> terminal;
    if (sampler == SamplerKind::representation)
        terminal.emplace(spec.law(), spec.total_activity(), 0.0, 1.0, 0.0);

    std::vector<MultiPath> out(paths, MultiPath{grid, spec.dim(), {}, {}});
    auto one = [&](std::size_t id) {
        dists::RngStream rng(seed, id);
        switch (sampler) {
            case SamplerKind::split: out[id] = sample_liouville_split(spec, grid, rng); break;
            case SamplerKind::stepping: out[id] = sample_transition_stepping(spec, grid, rng); break;
            case SamplerKind::representation:
                out[id] = sample_increment_representation(spec, *terminal, grid, rng);
                break;
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(paths, 1))));
    if (threads == 1) {
        for (std::size_t id = 0; id < paths; ++id) one(id);
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t id = next++; id < paths; id = next++) {
                try {
                    one(id);
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    next = paths;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
    return out;
}

}  // namespace asp::procs
