#pragma once

#include <functional>
#include <vector>

namespace asp::copula {

// Draws of a random vector, one row per draw.
class EmpiricalSample {
public:
    explicit EmpiricalSample(std::vector<std::vector<double>> rows);

    std::size_t size() const { return rows_.size(); }
    int dim() const { return dim_; }
    const std::vector<double>& row(std::size_t k) const { return rows_[k]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    std::vector<double> column(int i) const;

private:
    std::vector<std::vector<double>> rows_;
    int dim_;
};

struct Estimate {
    double value;
    double std_error;  // binomial sqrt(p (1 - p) / N)
};

// Fraction of draws exceeding x in every coordinate.
Estimate empirical_joint_survival(const EmpiricalSample& sample, const std::vector<double>& x);

// Column-wise rank / (N + 1), ranks ascending.
EmpiricalSample pseudo_observations(const EmpiricalSample& sample);
// Survival version: descending ranks, so the largest draw maps to 1/(N + 1).
// Equals pseudo_observations of any coordinatewise strictly decreasing image.
EmpiricalSample survival_pseudo_observations(const EmpiricalSample& sample);
// Fraction of pseudo-observations with every U_i <= u_i.
Estimate empirical_copula(const EmpiricalSample& pseudo, const std::vector<double>& u);

struct KsResult {
    double statistic;
    double critical;  // asymptotic 1% value
    bool pass_1pct;
};

// One-sample test against a continuous cdf; needs at least 100 draws.
KsResult ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf);
// Two-sample test; needs at least 100 draws in each sample.
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

}  // namespace asp::copula
