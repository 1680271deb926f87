#pragma once

#include <functional>
#include <vector>

namespace asp::specfun {

enum class RuleKind { fixed_grid, adaptive_subdivision };

// Nodes and weights on the reference interval [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
    // Weights of the embedded lower-order rule (zero where a node is not shared).
    std::vector<double> embedded_weights;
    RuleKind kind = RuleKind::fixed_grid;

    static QuadratureRule gauss_legendre(int n);
    static QuadratureRule gauss_kronrod15();
};

struct IntegrationOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    int max_level = 9;  // tanh-sinh halvings
};

struct IntegrationResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

// Integral of f over [a, b]; b may be +inf, handled by x = a + u/(1-u).
// Throws NumericError when the error estimate stays above tolerance.
IntegrationResult integrate(const std::function<double(double)>& f, const QuadratureRule& rule,
                            double a, double b, const IntegrationOptions& opts = {});

// Adaptive Gauss-Kronrod shorthand.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const IntegrationOptions& opts = {});

// f(x, x - a, b - x): the two gaps are exact even where x itself rounds onto an
// endpoint, which matters for integrable endpoint singularities.
using GapFunction = std::function<double(double, double, double)>;

// Tanh-sinh rule on a finite interval.
IntegrationResult integrate_tanh_sinh(const GapFunction& f, double a, double b,
                                      const IntegrationOptions& opts = {});

// A point stored as hi + lo, where hi is usually a quadrature endpoint and lo the
// exact gap returned by the tanh-sinh rule. Differences against the endpoint
// then keep full relative precision.
struct Abscissa {
    double hi;
    double lo = 0.0;

    Abscissa(double v) : hi(v) {}  // NOLINT: implicit from plain doubles
    Abscissa(double h, double l) : hi(h), lo(l) {}

    double value() const { return hi + lo; }
};

// c - y
inline double gap_below(double c, const Abscissa& y) { return (c - y.hi) - y.lo; }
// y - x
inline double gap_above(const Abscissa& y, double x) { return (y.hi - x) + y.lo; }

// The abscissa tanh-sinh hands to f(x, gl, gr) on [a, b], anchored at the nearer end.
inline Abscissa anchored(double a, double b, double gl, double gr) {
    return gl <= gr ? Abscissa(a, gl) : Abscissa(b, -gr);
}

using AbscissaFunction = std::function<double(const Abscissa&)>;

// Integral of f over (lo, hi), split at the given breakpoints. Finite pieces use
// tanh-sinh so every piece may carry integrable singularities at its ends; an
// infinite upper limit adds [last + tail_scale, inf) by adaptive Gauss-Kronrod.
IntegrationResult integrate_pieces(const AbscissaFunction& f, double lo, double hi,
                                   const std::vector<double>& breakpoints, double tail_scale,
                                   const IntegrationOptions& opts = {});

}  // namespace asp::specfun
