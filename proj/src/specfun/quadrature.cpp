#include "asp/specfun/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>

#include "asp/errors.hpp"

namespace asp::specfun {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel apply_rule(const std::function<double(double)>& f, const QuadratureRule& rule, double a,
                 double b, int& evals) {
    const double c = 0.5 * (a + b), half = 0.5 * (b - a);
    double hi = 0.0, lo = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double fx = f(c + half * rule.nodes[i]);
        hi += rule.weights[i] * fx;
        if (!rule.embedded_weights.empty()) lo += rule.embedded_weights[i] * fx;
    }
    evals += static_cast<int>(rule.nodes.size());
    return {a, b, hi * half, std::fabs(hi - lo) * half};
}

double tolerance(const IntegrationOptions& o, double value) {
    return std::max(o.abs_tol, o.rel_tol * std::fabs(value));
}

[[noreturn]] void fail(const char* what, double value, double err) {
    std::ostringstream os;
    os << what << ": estimate " << value << " with error " << err << " above tolerance";
    throw NumericError(os.str(), err);
}

IntegrationResult adaptive(const std::function<double(double)>& f, const QuadratureRule& rule,
                           double a, double b, const IntegrationOptions& opts) {
    IntegrationResult res;
    std::priority_queue<Panel> heap;
    Panel first = apply_rule(f, rule, a, b, res.evaluations);
    double total = first.value, err = first.error;
    heap.push(first);
    int splits = 0;
    while (err > tolerance(opts, total)) {
        if (splits++ >= opts.max_subdivisions) fail("adaptive quadrature", total, err);
        const Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b)) fail("adaptive quadrature (interval exhausted)", total, err);
        const Panel l = apply_rule(f, rule, p.a, mid, res.evaluations);
        const Panel r = apply_rule(f, rule, mid, p.b, res.evaluations);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
    }
    // Re-sum to drop the drift of the running updates.
    total = 0.0;
    err = 0.0;
    while (!heap.empty()) {
        total += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    res.value = total;
    res.abs_error = err;
    return res;
}

IntegrationResult fixed(const std::function<double(double)>& f, const QuadratureRule& rule,
                        double a, double b, const IntegrationOptions& opts) {
    IntegrationResult res;
    const Panel whole = apply_rule(f, rule, a, b, res.evaluations);
    const double mid = 0.5 * (a + b);
    const double halves = apply_rule(f, rule, a, mid, res.evaluations).value +
                          apply_rule(f, rule, mid, b, res.evaluations).value;
    res.value = halves;
    res.abs_error = std::fabs(halves - whole.value);
    if (res.abs_error > tolerance(opts, res.value)) fail("fixed-grid quadrature", halves, res.abs_error);
    return res;
}

struct TanhSinhNode {
    double gap_left;   // (x - a) / half
    double gap_right;  // (b - x) / half
    double weight;
};

// Abscissae for t = k h with h = 2^-level, odd k only for level > 0.
const std::vector<std::vector<TanhSinhNode>>& tanh_sinh_levels() {
    static const std::vector<std::vector<TanhSinhNode>> levels = [] {
        constexpr double t_max = 6.0;
        constexpr int max_level = 12;
        std::vector<std::vector<TanhSinhNode>> out(max_level + 1);
        for (int level = 0; level <= max_level; ++level) {
            const double h = std::ldexp(1.0, -level);
            const int step = level == 0 ? 1 : 2;
            const int start = level == 0 ? 0 : 1;
            for (int k = start; k * h <= t_max; k += step) {
                const double t = k * h;
                const double u = 0.5 * std::numbers::pi * std::sinh(t);
                const double ch = std::cosh(u);
                const double w = 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch);
                const double gl = 2.0 / (1.0 + std::exp(-2.0 * u));
                const double gr = 2.0 / (1.0 + std::exp(2.0 * u));
                if (!(w > 0.0)) break;
                out[level].push_back({gl, gr, w});
                if (k > 0) out[level].push_back({gr, gl, w});
            }
        }
        return out;
    }();
    return levels;
}

}  // namespace

QuadratureRule QuadratureRule::gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre needs at least one node");
    QuadratureRule r;
    r.kind = RuleKind::fixed_grid;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-16) break;
        }
        r.nodes[n - 1 - i] = x;
        r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

QuadratureRule QuadratureRule::gauss_kronrod15() {
    static const double xgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                                  0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                                  0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                                  0.207784955007898467600689403773245, 0.0};
    static const double wgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                                  0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                                  0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                                  0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    static const double wg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                 0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
    QuadratureRule r;
    r.kind = RuleKind::adaptive_subdivision;
    for (int i = 0; i < 7; ++i) {
        r.nodes.push_back(-xgk[i]);
        r.weights.push_back(wgk[i]);
        r.embedded_weights.push_back(i % 2 == 1 ? wg[i / 2] : 0.0);
    }
    r.nodes.push_back(0.0);
    r.weights.push_back(wgk[7]);
    r.embedded_weights.push_back(wg[3]);
    for (int i = 6; i >= 0; --i) {
        r.nodes.push_back(xgk[i]);
        r.weights.push_back(wgk[i]);
        r.embedded_weights.push_back(i % 2 == 1 ? wg[i / 2] : 0.0);
    }
    return r;
}

IntegrationResult integrate(const std::function<double(double)>& f, const QuadratureRule& rule,
                            double a, double b, const IntegrationOptions& opts) {
    if (std::isnan(a) || std::isnan(b) || a == inf || b == -inf || a == -inf)
        throw DomainError("integrate: need finite a and b > a or b = +inf");
    if (b == a) return {};
    if (b < a) {
        IntegrationResult r = integrate(f, rule, b, a, opts);
        r.value = -r.value;
        return r;
    }
    std::function<double(double)> g = f;
    double lo = a, hi = b;
    if (b == inf) {
        g = [&f, a](double u) {
            const double v = 1.0 - u;
            return f(a + u / v) / (v * v);
        };
        lo = 0.0;
        hi = 1.0;
    }
    if (rule.kind == RuleKind::adaptive_subdivision) return adaptive(g, rule, lo, hi, opts);
    return fixed(g, rule, lo, hi, opts);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const IntegrationOptions& opts) {
    static const QuadratureRule gk = QuadratureRule::gauss_kronrod15();
    return integrate(f, gk, a, b, opts).value;
}

IntegrationResult integrate_tanh_sinh(const GapFunction& f, double a, double b,
                                      const IntegrationOptions& opts) {
    if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("tanh-sinh needs a finite interval");
    if (b == a) return {};
    if (b < a) {
        IntegrationResult r = integrate_tanh_sinh(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    const auto& levels = tanh_sinh_levels();
    const int max_level = std::min<int>(opts.max_level, static_cast<int>(levels.size()) - 1);
    const double half = 0.5 * (b - a);
    IntegrationResult res;
    auto level_sum = [&](int level) {
        double s = 0.0;
        for (const auto& node : levels[level]) {
            const double gl = half * node.gap_left, gr = half * node.gap_right;
            if (!(gl > 0.0 && gr > 0.0)) continue;
            const double x = gl <= gr ? a + gl : b - gr;
            s += node.weight * f(x, gl, gr);
        }
        res.evaluations += static_cast<int>(levels[level].size());
        return s;
    };
    double sum = level_sum(0);
    double prev = sum * half;
    double err = inf;
    for (int level = 1; level <= max_level; ++level) {
        sum += level_sum(level);
        const double cur = sum * half * std::ldexp(1.0, -level);
        err = std::fabs(cur - prev);
        prev = cur;
        if (level >= 3 && err <= tolerance(opts, cur)) {
            res.value = cur;
            res.abs_error = err;
            return res;
        }
    }
    if (!std::isfinite(prev)) fail("tanh-sinh quadrature (non-finite integrand)", prev, err);
    fail("tanh-sinh quadrature", prev, err);
}

IntegrationResult integrate_pieces(const AbscissaFunction& f, double lo, double hi,
                                   const std::vector<double>& breakpoints, double tail_scale,
                                   const IntegrationOptions& opts) {
    if (!(hi > lo)) return {};
    std::vector<double> cuts{lo};
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const bool infinite = hi == inf;
    cuts.push_back(infinite ? cuts.back() + tail_scale : hi);
    IntegrationResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double a = cuts[i], b = cuts[i + 1];
        const auto r = integrate_tanh_sinh(
            [&](double, double gl, double gr) { return f(anchored(a, b, gl, gr)); }, a, b, opts);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    }
    if (infinite) {
        static const QuadratureRule gk = QuadratureRule::gauss_kronrod15();
        const double start = cuts.back();
        // Scale the u-map so its knee sits at the tail scale.
        const auto r = integrate(
            [&](double v) { return tail_scale * f(Abscissa(start + tail_scale * v)); }, gk, 0.0, inf,
            opts);
        total.value += r.value;
        total.abs_error += r.abs_error;
        total.evaluations += r.evaluations;
    }
    return total;
}

}  // namespace asp::specfun
