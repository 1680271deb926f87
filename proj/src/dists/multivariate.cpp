#include "asp/dists/multivariate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asp/dists/univariate.hpp"
#include "asp/errors.hpp"
#include "asp/specfun/special.hpp"

namespace asp::dists {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

// e log x with the conventions 0^0 = 1, 0^{+} = 0, 0^{-} = inf.
double log_power(double x, double e) {
    if (e == 0.0) return 0.0;
    if (x == 0.0) return e > 0.0 ? -inf : inf;
    return e * std::log(x);
}

std::vector<double> normalize_logs(const std::vector<double>& logs) {
    const double top = *std::max_element(logs.begin(), logs.end());
    std::vector<double> out(logs.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < logs.size(); ++i) {
        out[i] = std::exp(logs[i] - top);
        sum += out[i];
    }
    for (auto& v : out) v /= sum;
    return out;
}

}  // namespace

DirichletParams::DirichletParams(std::vector<double> alpha) : alpha_(std::move(alpha)), total_(0.0) {
    if (alpha_.size() < 2) throw DomainError("Dirichlet parameters need length >= 2");
    for (double a : alpha_) {
        if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("Dirichlet parameters must be positive");
        total_ += a;
    }
}

DirichletParams DirichletParams::ones(int n) { return DirichletParams(std::vector<double>(n, 1.0)); }

std::vector<double> sample_dirichlet(const DirichletParams& params, RngStream& rng) {
    std::vector<double> logs(params.size());
    for (std::size_t i = 0; i < logs.size(); ++i) logs[i] = sample_log_gamma(params.alpha()[i], rng);
    return normalize_logs(logs);
}

double log_dirichlet_density(const DirichletParams& params, const std::vector<double>& x) {
    const std::size_t n = params.size();
    if (x.size() + 1 != n) throw DomainError("Dirichlet density takes the first n-1 coordinates");
    double sum = 0.0;
    for (double v : x) {
        if (!(v >= 0.0)) throw DomainError("Dirichlet density needs nonnegative coordinates");
        sum += v;
    }
    if (sum > 1.0 + 1e-12) throw DomainError("Dirichlet density coordinates sum above 1");
    const double last = std::max(0.0, 1.0 - sum);
    double ld = specfun::log_gamma(params.total());
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = i + 1 < n ? x[i] : last;
        ld += log_power(xi, params.alpha()[i] - 1.0) - specfun::log_gamma(params.alpha()[i]);
    }
    return ld;
}

double dirichlet_density(const DirichletParams& params, const std::vector<double>& x) {
    return std::exp(log_dirichlet_density(params, x));
}

std::vector<double> sample_simplex_uniform(int n, RngStream& rng) {
    if (n < 2) throw DomainError("simplex dimension must be >= 2");
    std::vector<double> e(n);
    double sum = 0.0;
    for (auto& v : e) {
        v = rng.exponential();
        sum += v;
    }
    for (auto& v : e) v /= sum;
    return e;
}

std::vector<double> sample_l1_symmetric(const genlaw::GeneratingLaw& law, int n, RngStream& rng) {
    const double r = law.sample(rng);
    auto u = sample_simplex_uniform(n, rng);
    for (auto& v : u) v *= r;
    return u;
}

std::vector<double> sample_liouville_dist(const genlaw::GeneratingLaw& law,
                                          const DirichletParams& params, RngStream& rng) {
    const double r = law.sample(rng);
    auto d = sample_dirichlet(params, rng);
    for (auto& v : d) v *= r;
    return d;
}

double log_liouville_density(const genlaw::GeneratingLaw& law, const DirichletParams& params,
                             const std::vector<double>& x) {
    if (!law.has_density()) throw UnsupportedOperation("Liouville density needs a law with a density");
    if (x.size() != params.size()) throw DomainError("Liouville density: dimension mismatch");
    double norm = 0.0;
    for (double v : x) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("Liouville density needs x >= 0");
        norm += v;
    }
    if (!(norm > 0.0)) throw DomainError("Liouville density is singular at the origin");
    double ld = specfun::log_gamma(params.total()) + law.log_density(norm) -
                (params.total() - 1.0) * std::log(norm);
    for (std::size_t i = 0; i < x.size(); ++i)
        ld += log_power(x[i], params.alpha()[i] - 1.0) - specfun::log_gamma(params.alpha()[i]);
    return ld;
}

double liouville_density(const genlaw::GeneratingLaw& law, const DirichletParams& params,
                         const std::vector<double>& x) {
    return std::exp(log_liouville_density(law, params, x));
}

MomentSet liouville_moments(double mu1, double mu2, const DirichletParams& params) {
    const std::size_t n = params.size();
    const double a = params.total();
    MomentSet m;
    m.mean.resize(n);
    m.var.resize(n);
    m.cov.assign(n, std::vector<double>(n, 0.0));
    const double cross = mu2 / (a + 1.0) - mu1 * mu1 / a;
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = params.alpha()[i];
        m.mean[i] = mu1 * ai / a;
        m.var[i] = ai / a * (mu2 * (ai + 1.0) / (a + 1.0) - mu1 * mu1 * ai / a);
        m.cov[i][i] = m.var[i];
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) m.cov[i][j] = ai * params.alpha()[j] / a * cross;
    }
    return m;
}

}  // namespace asp::dists
