#include "cli/commands.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>

#include <CLI11.hpp>
#include <json.hpp>

#include "asp/copula/copula.hpp"
#include "asp/errors.hpp"
#include "asp/genlaw/generator.hpp"
#include "asp/procs/moments.hpp"
#include "asp/procs/samplers.hpp"
#include "asp/procs/transition.hpp"
#include "asp/validation/mass.hpp"
#include "asp/validation/suites.hpp"
#include "cli/config.hpp"

namespace aspcli {

using json = nlohmann::ordered_json;
namespace procs = asp::procs;
namespace genlaw = asp::genlaw;

std::string format_real(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Flags {
    std::string config;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out;
    std::string format;
    unsigned threads = 0;
    bool per_path = false;
    bool check_mass = false;
    bool roundtrip = false;
    std::vector<std::string> suites;
    double scale = 0.0;
    double tolerance = 0.0;
    bool has_tolerance = false;
};

json real(double v) { return std::isfinite(v) ? json(v) : json(format_real(v)); }

void write_row(std::ostream& os, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
}

// Sends data to the configured file, or to out.
void emit(const RunConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (cfg.out_path.empty()) {
        body(out);
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ConfigError("/output/path", 0, "cannot open " + cfg.out_path + " for writing");
    body(f);
    if (!f) throw ConfigError("/output/path", 0, "writing " + cfg.out_path + " failed");
}

const procs::ProcessSpec& need_process(const RunConfig& cfg) {
    if (!cfg.process) cfg.root.fail("missing required field \"process\"");
    return *cfg.process;
}

std::vector<double> state(const Node& node, int n) {
    const auto v = node.numbers();
    if (static_cast<int>(v.size()) != n) node.fail("expected " + std::to_string(n) + " coordinates");
    for (double c : v)
        if (!(c >= 0.0) || !std::isfinite(c)) node.fail("coordinates must be nonnegative and finite");
    return v;
}

void check_times(const Node& block, double s, double t, double horizon) {
    if (!(s >= 0.0 && s < t && t <= horizon))
        block.fail("times need 0 <= s < t <= " + format_real(horizon));
}

// ---------------------------------------------------------------------------

int cmd_sample(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err) {
    const auto& spec = need_process(cfg);
    if (!cfg.grid) cfg.root.fail("missing required field \"grid\"");
    if (!cfg.paths) cfg.root.fail("missing required field \"paths\"");
    const auto& grid = *cfg.grid;
    const std::size_t N = *cfg.paths;
    const auto paths = procs::sample_paths(spec, grid, N, cfg.seed.value_or(0), cfg.threads, cfg.sampler);
    const int n = spec.dim();

    std::vector<std::string> header{"t"};
    for (int i = 1; i <= n; ++i) header.push_back("xi_" + std::to_string(i));
    header.push_back("R");
    auto rows = [&](std::ostream& os, std::size_t p, bool with_id) {
        for (std::size_t k = 0; k < grid.size(); ++k) {
            std::vector<std::string> cells;
            if (with_id) cells.push_back(std::to_string(p));
            cells.push_back(format_real(grid[k]));
            for (int i = 0; i < n; ++i) cells.push_back(format_real(paths[p].at(k, i)));
            cells.push_back(format_real(paths[p].norm[k]));
            write_row(os, cells);
        }
    };

    if (fl.per_path) {
        if (cfg.out_path.empty()) cfg.root.fail("--per-path needs an output path");
        if (cfg.format != "csv") cfg.root.fail("--per-path writes csv only");
        const std::filesystem::path base(cfg.out_path);
        for (std::size_t p = 0; p < N; ++p) {
            auto file = base.parent_path() / (base.stem().string() + "_" + std::to_string(p) + base.extension().string());
            std::ofstream f(file, std::ios::binary);
            if (!f) throw ConfigError("/output/path", 0, "cannot open " + file.string() + " for writing");
            write_row(f, header);
            rows(f, p, false);
        }
    } else if (cfg.format == "csv") {
        emit(cfg, out, [&](std::ostream& os) {
            auto h = header;
            h.insert(h.begin(), "path_id");
            write_row(os, h);
            for (std::size_t p = 0; p < N; ++p) rows(os, p, true);
        });
    } else {
        emit(cfg, out, [&](std::ostream& os) {
            json doc{{"dim", n}, {"times", grid.times()}, {"paths", json::array()}};
            for (std::size_t p = 0; p < N; ++p) {
                json xi = json::array();
                for (std::size_t k = 0; k < grid.size(); ++k) xi.push_back(paths[p].row(k));
                doc["paths"].push_back({{"path_id", p}, {"xi", xi}, {"R", paths[p].norm}});
            }
            os << doc.dump() << '\n';
        });
    }

    double sum = 0.0;
    for (const auto& p : paths) sum += p.norm.back();
    const double mean = sum / N;
    auto& sink = cfg.out_path.empty() ? err : out;
    sink << "paths=" << N << " grid=" << grid.size() << " mean_terminal_norm=" << format_real(mean) << '\n';
    return exit_ok;
}

// ---------------------------------------------------------------------------

struct DensityQuery {
    std::string type;
    double s, t;
    std::vector<double> x;  // one entry for norm and grb
    std::optional<genlaw::GeneratingLaw> law;  // grb
    double m = 1.0, T_end = 1.0;
};

int cmd_density(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err) {
    const Node b = cfg.block("density");
    b.only({"type", "s", "t", "x", "queries", "m", "T_end", "law", "tolerance"});
    DensityQuery q;
    q.type = b.has("type") ? b["type"].str() : "asp";
    q.s = b["s"].number();
    q.t = b["t"].number();
    int dim = 1;
    if (q.type == "asp") {
        const auto& spec = need_process(cfg);
        dim = spec.dim();
        check_times(b, q.s, q.t, 1.0);
        q.x = state(b["x"], dim);
        if (q.t == 1.0 && spec.law().is_atomic())
            b["t"].fail("at t = 1 an atomic law gives a measure, not a density; use t < 1 or a law with a density");
    } else if (q.type == "norm") {
        need_process(cfg);
        check_times(b, q.s, q.t, 1.0);
        q.x = {b["x"].number()};
    } else if (q.type == "grb") {
        q.m = b.number_or("m", 1.0);
        q.T_end = b.number_or("T_end", 1.0);
        if (!(q.m > 0.0) || !std::isfinite(q.m)) b["m"].fail("activity must be positive");
        if (!(q.T_end > 0.0) || !std::isfinite(q.T_end)) b["T_end"].fail("horizon must be positive");
        check_times(b, q.s, q.t, q.T_end);
        q.law = b.has("law") ? parse_law(b["law"]) : need_process(cfg).law();
        q.x = {b["x"].number()};
    } else {
        b["type"].fail("density type must be asp, norm or grb");
    }
    for (double v : q.x)
        if (!(v >= 0.0) || !std::isfinite(v)) b["x"].fail("state must be nonnegative and finite");
    if (q.s == 0.0)
        for (double v : q.x)
            if (v != 0.0) b["x"].fail("the process starts at 0, so s = 0 needs x = 0");

    if (fl.check_mass) {
        double mass;
        double tol;
        if (q.type == "asp") {
            if (dim != 2) b["x"].fail("--check-mass covers two-dimensional processes");
            mass = asp::validation::asp_transition_mass(*cfg.process, q.s, q.x, q.t);
            tol = 1e-6;
        } else if (q.type == "norm") {
            mass = asp::validation::norm_transition_mass(*cfg.process, q.s, q.x[0], q.t);
            tol = 1e-8;
        } else {
            mass = asp::validation::grb_transition_mass(*q.law, q.m, q.T_end, q.s, q.x[0], q.t);
            tol = 1e-8;
        }
        tol = b.number_or("tolerance", tol);
        const double e = std::abs(mass - 1.0);
        emit(cfg, out, [&](std::ostream& os) {
            write_row(os, {"mass", "error", "tolerance"});
            write_row(os, {format_real(mass), format_real(e), format_real(tol)});
        });
        err << "mass=" << format_real(mass) << (e <= tol ? " within " : " outside ") << format_real(tol) << '\n';
        return e <= tol ? exit_ok : exit_validation;
    }

    const Node qs = b["queries"];
    const std::size_t Q = qs.size();
    if (Q == 0) qs.fail("at least one query is needed");
    std::vector<std::vector<double>> ys;
    for (std::size_t k = 0; k < Q; ++k) {
        if (q.type == "asp") ys.push_back(qs[k].numbers());
        else ys.push_back({qs[k].number()});
        if (static_cast<int>(ys.back().size()) != dim) qs[k].fail("expected " + std::to_string(dim) + " coordinates");
    }

    std::vector<double> logs(Q), vals(Q);
    std::size_t failed = 0;
    for (std::size_t k = 0; k < Q; ++k) {
        try {
            const auto& y = ys[k];
            if (q.type == "asp") {
                logs[k] = procs::asp_log_transition_density(*cfg.process, q.s, q.x, q.t, y);
                vals[k] = std::exp(logs[k]);
            } else {
                vals[k] = q.type == "norm"
                              ? procs::norm_transition_density(*cfg.process, q.s, q.x[0], q.t, y[0])
                              : procs::grb_transition_density(*q.law, q.m, q.T_end, q.s, q.x[0], q.t, y[0]);
                logs[k] = std::log(vals[k]);
            }
        } catch (const asp::DomainError& e) {
            logs[k] = vals[k] = std::nan("");
            ++failed;
            err << "warning: query " << k << ": " << e.what() << '\n';
        } catch (const asp::NumericError& e) {
            logs[k] = vals[k] = std::nan("");
            ++failed;
            err << "warning: query " << k << ": " << e.what() << '\n';
        }
    }

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < Q; ++k)
                rows.push_back({{"query", k}, {"y", ys[k]}, {"log_density", real(logs[k])}, {"density", real(vals[k])}});
            os << rows.dump() << '\n';
            return;
        }
        std::vector<std::string> h{"query"};
        if (dim == 1) h.push_back("y");
        else
            for (int i = 1; i <= dim; ++i) h.push_back("y_" + std::to_string(i));
        h.push_back("log_density");
        h.push_back("density");
        write_row(os, h);
        for (std::size_t k = 0; k < Q; ++k) {
            std::vector<std::string> cells{std::to_string(k)};
            for (double v : ys[k]) cells.push_back(format_real(v));
            cells.push_back(format_real(logs[k]));
            cells.push_back(format_real(vals[k]));
            write_row(os, cells);
        }
    });
    if (failed) err << "warning: " << failed << " of " << Q << " queries failed\n";
    return failed == Q ? exit_numeric : exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_moments(const RunConfig& cfg, std::ostream& out) {
    const auto& spec = need_process(cfg);
    const Node b = cfg.block("moments");
    b.only({"s", "x", "t"});
    const double s = b["s"].number();
    const auto x = state(b["x"], spec.dim());
    const auto ts = b["t"].is_array() ? b["t"].numbers() : std::vector<double>{b["t"].number()};
    for (double t : ts) check_times(b, s, t, 1.0);
    if (s == 0.0)
        for (double v : x)
            if (v != 0.0) b["x"].fail("the process starts at 0, so s = 0 needs x = 0");
    std::vector<asp::dists::MomentSet> res;
    for (double t : ts) res.push_back(procs::conditional_moments(spec, s, x, t));
    const int n = spec.dim();

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < ts.size(); ++k)
                rows.push_back({{"t", ts[k]}, {"mean", res[k].mean}, {"var", res[k].var}, {"cov", res[k].cov}});
            os << rows.dump() << '\n';
            return;
        }
        write_row(os, {"t", "kind", "i", "j", "value"});
        for (std::size_t k = 0; k < ts.size(); ++k) {
            const auto t = format_real(ts[k]);
            for (int i = 0; i < n; ++i) write_row(os, {t, "mean", std::to_string(i + 1), "", format_real(res[k].mean[i])});
            for (int i = 0; i < n; ++i)
                write_row(os, {t, "var", std::to_string(i + 1), std::to_string(i + 1), format_real(res[k].var[i])});
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    write_row(os, {t, "cov", std::to_string(i + 1), std::to_string(j + 1), format_real(res[k].cov[i][j])});
        }
    });
    return exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_copula(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const Node b = cfg.block("copula");
    b.only({"generator", "u", "boxes"});
    const Node un = b["u"];
    std::vector<std::vector<double>> us;
    for (std::size_t k = 0; k < un.size(); ++k) {
        us.push_back(un[k].numbers());
        for (double v : us.back())
            if (!(v >= 0.0 && v <= 1.0)) un[k].fail("copula arguments must lie in [0, 1]");
    }
    if (us.empty()) un.fail("at least one point is needed");

    std::optional<genlaw::ArchGenerator> gen;
    int n;
    if (b.has("generator")) {
        gen = parse_generator(b["generator"]);
        n = static_cast<int>(us[0].size());
        if (n < 2) un[0].fail("copula points need at least two coordinates");
    } else {
        const auto& spec = need_process(cfg);
        if (spec.kind() != procs::ProcessKind::asp)
            cfg.root["process"]["kind"].fail("the terminal copula is Archimedean for ASPs only; give a generator");
        n = spec.dim();
    }
    for (std::size_t k = 0; k < us.size(); ++k)
        if (static_cast<int>(us[k].size()) != n) un[k].fail("expected " + std::to_string(n) + " coordinates");

    std::vector<double> vals;
    for (const auto& u : us)
        vals.push_back(gen ? asp::copula::copula_eval(*gen, u) : asp::copula::asp_terminal_copula(*cfg.process, u));

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < us.size(); ++k) rows.push_back({{"u", us[k]}, {"value", vals[k]}});
            os << rows.dump() << '\n';
            return;
        }
        std::vector<std::string> h;
        for (int i = 1; i <= n; ++i) h.push_back("u_" + std::to_string(i));
        h.push_back("value");
        write_row(os, h);
        for (std::size_t k = 0; k < us.size(); ++k) {
            std::vector<std::string> cells;
            for (double v : us[k]) cells.push_back(format_real(v));
            cells.push_back(format_real(vals[k]));
            write_row(os, cells);
        }
    });

    if (!b.has("boxes")) return exit_ok;
    if (!gen) gen = genlaw::ArchGenerator::from_law(cfg.process->law(), n);
    const Node bx = b["boxes"];
    int bad = 0;
    for (std::size_t k = 0; k < bx.size(); ++k) {
        bx[k].only({"lo", "hi"});
        const auto lo = bx[k]["lo"].numbers(), hi = bx[k]["hi"].numbers();
        if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
            bx[k].fail("box corners need " + std::to_string(n) + " coordinates");
        for (int i = 0; i < n; ++i)
            if (!(0.0 <= lo[i] && lo[i] <= hi[i] && hi[i] <= 1.0)) bx[k].fail("box needs 0 <= lo <= hi <= 1");
        const double v = asp::copula::n_increasing_check(*gen, n, lo, hi);
        err << "box " << k << ": volume " << format_real(v) << '\n';
        bad += v < -1e-12;
    }
    return bad ? exit_validation : exit_ok;
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err) {
    asp::validation::ValidationOptions opts;
    std::vector<std::string> names = asp::validation::suite_names();
    if (cfg.has("validate")) {
        const Node b = cfg.block("validate");
        b.only({"suites", "scale", "tolerance"});
        if (b.has("suites") && !(b["suites"].is_string() && b["suites"].str() == "all")) {
            const Node s = b["suites"];
            names.clear();
            for (std::size_t k = 0; k < s.size(); ++k) {
                names.push_back(s[k].str());
                if (!asp::validation::is_suite(names.back())) s[k].fail("unknown suite \"" + names.back() + "\"");
            }
        }
        if (b.has("scale")) {
            opts.scale = b["scale"].number();
            if (!(opts.scale > 0.0) || !std::isfinite(opts.scale)) b["scale"].fail("scale must be positive");
        }
        if (b.has("tolerance")) opts.tolerance = b["tolerance"].number();
    }
    if (!fl.suites.empty()) {
        names.clear();
        for (const auto& s : fl.suites) {
            if (s == "all") names = asp::validation::suite_names();
            else if (!asp::validation::is_suite(s)) throw ConfigError("", 0, "unknown suite \"" + s + "\"");
            else names.push_back(s);
        }
    }
    if (fl.scale > 0.0) opts.scale = fl.scale;
    if (fl.has_tolerance) opts.tolerance = fl.tolerance;
    if (cfg.seed) opts.seed = *cfg.seed;
    opts.threads = cfg.threads;

    json report = json::array();
    bool all = true;
    for (const auto& name : names) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto checks = asp::validation::run_suite(name, opts);
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        int passed = 0;
        for (const auto& c : checks) {
            report.push_back({{"suite", c.suite},
                              {"name", c.name},
                              {"statistic", real(c.statistic)},
                              {"threshold", real(c.threshold)},
                              {"pass", c.pass},
                              {"seconds", c.seconds}});
            passed += c.pass;
            if (!c.pass) err << "FAIL " << c.suite << ": " << c.name << ": " << format_real(c.statistic) << " > "
                             << format_real(c.threshold) << '\n';
        }
        all = all && passed == static_cast<int>(checks.size());
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.1f", secs);
        err << name << ": " << passed << "/" << checks.size() << " passed in " << buf << " s\n";
    }
    emit(cfg, out, [&](std::ostream& os) { os << report.dump(1) << '\n'; });
    return all ? exit_ok : exit_validation;
}

// ---------------------------------------------------------------------------

int cmd_transform(const RunConfig& cfg, const Flags& fl, std::ostream& out, std::ostream& err) {
    const Node b = cfg.block("transform");
    b.only({"direction", "n", "law", "generator", "x", "tolerance"});
    const std::string dir = b["direction"].str();
    const long long nn = b["n"].integer();
    if (nn < 2 || nn > 64) b["n"].fail("n must lie in [2, 64]");
    const int n = static_cast<int>(nn);
    const auto xs = b["x"].numbers(true);
    for (std::size_t k = 0; k < xs.size(); ++k)
        if (!(xs[k] >= 0.0)) b["x"][k].fail("x must be nonnegative");
    const double tol = b.number_or("tolerance", 1e-6);

    std::vector<double> vals;
    double sup = 0.0;
    if (dir == "nu-to-h") {
        if (b.has("generator")) b["generator"].fail("nu-to-h takes a law");
        const auto law = b.has("law") ? parse_law(b["law"]) : need_process(cfg).law();
        for (double x : xs) vals.push_back(std::isfinite(x) ? genlaw::marginal_survival(law, n, x) : 0.0);
        if (fl.roundtrip) {
            const auto back = genlaw::williamson_inverse(genlaw::ArchGenerator::from_law(law, n), n);
            for (double x : xs)
                if (std::isfinite(x)) sup = std::max(sup, std::abs(back.cdf(x) - law.cdf(x)));
        }
    } else if (dir == "h-to-nu") {
        if (b.has("law")) b["law"].fail("h-to-nu takes a generator");
        const auto gen = parse_generator(b["generator"]);
        std::optional<genlaw::WilliamsonLaw> law;
        try {
            law.emplace(genlaw::williamson_inverse(gen, n));
        } catch (const asp::InvalidGenerator& e) {
            b["generator"].fail(e.what());
        }
        for (double x : xs) vals.push_back(law->cdf(x));
        if (fl.roundtrip)
            for (double x : xs)
                if (std::isfinite(x)) sup = std::max(sup, std::abs(genlaw::marginal_survival(*law, n, x) - gen(x)));
    } else {
        b["direction"].fail("direction must be nu-to-h or h-to-nu");
    }

    emit(cfg, out, [&](std::ostream& os) {
        if (cfg.format == "json") {
            json rows = json::array();
            for (std::size_t k = 0; k < xs.size(); ++k) rows.push_back({{"x", real(xs[k])}, {"value", vals[k]}});
            os << rows.dump() << '\n';
            return;
        }
        write_row(os, {"x", "value"});
        for (std::size_t k = 0; k < xs.size(); ++k) write_row(os, {format_real(xs[k]), format_real(vals[k])});
    });
    if (!fl.roundtrip) return exit_ok;
    err << "roundtrip_sup_error=" << format_real(sup) << " tolerance=" << format_real(tol) << '\n';
    return sup <= tol ? exit_ok : exit_validation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulation and numerics for Archimedean survival processes", "aspsim"};
    Flags fl;
    app.add_option("--config", fl.config, "JSON configuration file");
    auto* seed_opt = app.add_option("--seed", fl.seed, "random seed (overrides the config)");
    app.add_option("--out", fl.out, "output path (overrides the config)");
    app.add_option("--format", fl.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", fl.threads, "worker threads")->check(CLI::Range(1u, 1024u));
    app.require_subcommand(1);
    app.fallthrough();

    auto* sample = app.add_subcommand("sample", "sample process paths");
    sample->add_flag("--per-path", fl.per_path, "one csv file per path");
    auto* density = app.add_subcommand("density", "evaluate transition densities");
    density->add_flag("--check-mass", fl.check_mass, "integrate the density and compare with 1");
    auto* moments = app.add_subcommand("moments", "conditional moments");
    auto* copula = app.add_subcommand("copula", "evaluate copulas");
    auto* validate = app.add_subcommand("validate", "run the validation suites");
    validate->add_option("--suite", fl.suites, "suite name (repeatable; default all)");
    validate->add_option("--scale", fl.scale, "multiplies every Monte Carlo sample size")->check(CLI::PositiveNumber);
    auto* tol_opt = validate->add_option("--tolerance", fl.tolerance, "replaces every pass threshold");
    auto* transform = app.add_subcommand("transform", "Williamson transform in either direction");
    transform->add_flag("--roundtrip", fl.roundtrip, "report the round-trip sup error");

    std::vector<const char*> argv{"aspsim"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config;
    }
    fl.has_seed = seed_opt->count() > 0;
    fl.has_tolerance = tol_opt->count() > 0;

    const std::string where = fl.config.empty() ? "aspsim" : fl.config;
    try {
        if (fl.config.empty() && !validate->parsed()) throw ConfigError("", 0, "--config is required");
        RunConfig cfg = fl.config.empty() ? parse_config("{}") : load_config(fl.config);
        if (fl.has_seed) cfg.seed = fl.seed;
        if (!fl.out.empty()) cfg.out_path = fl.out;
        if (!fl.format.empty()) cfg.format = fl.format;
        if (fl.threads) cfg.threads = fl.threads;

        if (sample->parsed()) return cmd_sample(cfg, fl, out, err);
        if (density->parsed()) return cmd_density(cfg, fl, out, err);
        if (moments->parsed()) return cmd_moments(cfg, out);
        if (copula->parsed()) return cmd_copula(cfg, out, err);
        if (validate->parsed()) return cmd_validate(cfg, fl, out, err);
        return cmd_transform(cfg, fl, out, err);
    } catch (const ConfigError& e) {
        err << where << (e.line() ? ":" + std::to_string(e.line()) : std::string()) << ": "
            << (e.pointer().empty() ? "" : e.pointer() + ": ") << e.what() << '\n';
        return exit_config;
    } catch (const asp::NumericError& e) {
        err << "numeric error: " << e.what() << '\n';
        return exit_numeric;
    } catch (const asp::DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_config;
    } catch (const asp::UnsupportedOperation& e) {
        err << "unsupported: " << e.what() << '\n';
        return exit_config;
    } catch (const asp::InvalidGenerator& e) {
        err << "invalid generator: " << e.what() << '\n';
        return exit_config;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}

}  // namespace aspcli
