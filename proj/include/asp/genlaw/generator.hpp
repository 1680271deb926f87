#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "asp/genlaw/law.hpp"

namespace asp::genlaw {

// F(x) = int_x^inf (1 - x/r)^{n-1} nu(dr), the marginal survival function.
double marginal_survival(const GeneratingLaw& law, int n, double x);
// inf{x : F(x) <= u}
double survival_inverse(const GeneratingLaw& law, int n, double u);

// Archimedean generator h with generalized inverse and right derivatives.
class ArchGenerator {
public:
    using Fn = std::function<double(double)>;
    // Right derivative h^{(k)}(x+) of order k >= 1.
    using DerivFn = std::function<double(double, int)>;

    // Pass an empty inverse/derivative to fall back to bisection and finite
    // differences. zero_point is inf{x : h(x) = 0} (+inf if h stays positive).
    ArchGenerator(std::string name, Fn h, Fn inverse = {}, DerivFn derivative = {},
                  double zero_point = std::numeric_limits<double>::infinity());

    // (1 - x)_+^k
    static ArchGenerator power(int k);
    static ArchGenerator exponential();
    // (1 + theta x)^{-1/theta}
    static ArchGenerator clayton(double theta);
    // h = marginal_survival(law, n, .), with derivatives taken under the integral.
    static ArchGenerator from_law(const GeneratingLaw& law, int n);

    double operator()(double x) const;
    double inverse(double u) const;
    // k-th derivative; right-sided when right is set or when a centred stencil
    // would leave [0, inf).
    double derivative(double x, int k, bool right = false) const;

    bool has_analytic_derivatives() const { return static_cast<bool>(deriv_); }
    double zero_point() const { return zero_; }
    const std::string& name() const { return name_; }

    // Same function, finite-difference derivatives only.
    ArchGenerator without_derivatives() const;

private:
    std::string name_;
    Fn h_;
    Fn inv_;
    DerivFn deriv_;
    double zero_;
};

// Finite-difference weights for the k-th derivative at 0 from the given offsets.
std::vector<double> fornberg_weights(const std::vector<double>& offsets, int k);

// nu([0, x]) recovered from an n-monotone generator.
class WilliamsonLaw {
public:
    WilliamsonLaw(ArchGenerator gen, int n);

    double cdf(double x) const;
    int dimension() const { return n_; }
    const ArchGenerator& generator() const { return gen_; }
    // Support bound: the generator's zero point.
    double upper() const { return gen_.zero_point(); }

private:
    ArchGenerator gen_;
    int n_;
};

// Validates the sign pattern (-1)^k h^{(k)} >= 0 for k <= n-2 and convexity of
// (-1)^{n-2} h^{(n-2)} on a grid; throws InvalidGenerator on violation.
WilliamsonLaw williamson_inverse(const ArchGenerator& gen, int n);

// F built from the CDF of a Williamson law (integration by parts form).
double marginal_survival(const WilliamsonLaw& law, int n, double x);

}  // namespace asp::genlaw
