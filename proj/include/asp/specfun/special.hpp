#pragma once

#include <complex>

namespace asp::specfun {

double log_gamma(double x);
double log_beta(double a, double b);

// Regularized incomplete beta I_z[a, b].
double reg_inc_beta(double z, double a, double b);
// z with |I_z[a, b] - p| <= 1e-10.
double inv_reg_inc_beta(double p, double a, double b);

struct KummerOptions {
    double radius = 700.0;
    int max_terms = 10000;
};

// Confluent hypergeometric M[a, b, z] from its power series.
double kummer_m(double a, double b, double z, const KummerOptions& opts = {});
std::complex<double> kummer_m(double a, double b, std::complex<double> z,
                              const KummerOptions& opts = {});

// log(exp(a) + exp(b)) without overflow.
double log_add(double a, double b);

}  // namespace asp::specfun
