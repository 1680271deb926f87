#pragma once

#include <vector>

#include "asp/dists/rng.hpp"
#include "asp/genlaw/law.hpp"

namespace asp::dists {

class DirichletParams {
public:
    explicit DirichletParams(std::vector<double> alpha);
    static DirichletParams ones(int n);

    const std::vector<double>& alpha() const { return alpha_; }
    std::size_t size() const { return alpha_.size(); }
    double total() const { return total_; }

private:
    std::vector<double> alpha_;
    double total_;
};

std::vector<double> sample_dirichlet(const DirichletParams& params, RngStream& rng);

// Density of (D_1, ..., D_{n-1}); the last coordinate is 1 - sum(x).
double dirichlet_density(const DirichletParams& params, const std::vector<double>& x);
double log_dirichlet_density(const DirichletParams& params, const std::vector<double>& x);

// E / |E| for i.i.d. standard exponentials.
std::vector<double> sample_simplex_uniform(int n, RngStream& rng);

// R U with R ~ law and U uniform on the simplex.
std::vector<double> sample_l1_symmetric(const genlaw::GeneratingLaw& law, int n, RngStream& rng);

// R D with R ~ law and D ~ Dirichlet(params).
std::vector<double> sample_liouville_dist(const genlaw::GeneratingLaw& law,
                                          const DirichletParams& params, RngStream& rng);

double liouville_density(const genlaw::GeneratingLaw& law, const DirichletParams& params,
                         const std::vector<double>& x);
double log_liouville_density(const genlaw::GeneratingLaw& law, const DirichletParams& params,
                             const std::vector<double>& x);

struct MomentSet {
    std::vector<double> mean;
    std::vector<double> var;
    std::vector<std::vector<double>> cov;  // full matrix, variances on the diagonal
};

// Moments of R D given mu1 = E[R] and mu2 = E[R^2].
MomentSet liouville_moments(double mu1, double mu2, const DirichletParams& params);

}  // namespace asp::dists
