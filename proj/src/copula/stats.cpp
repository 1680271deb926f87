#include "asp/copula/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "asp/errors.hpp"

namespace asp::copula {

namespace {

constexpr double ks_1pct = 1.628;
constexpr std::size_t min_draws = 100;

EmpiricalSample ranked(const EmpiricalSample& sample, bool descending) {
    const std::size_t N = sample.size();
    std::vector<std::vector<double>> out(N, std::vector<double>(sample.dim()));
    std::vector<std::size_t> idx(N);
    for (int i = 0; i < sample.dim(); ++i) {
        std::iota(idx.begin(), idx.end(), 0);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
            return descending ? sample.row(a)[i] > sample.row(b)[i] : sample.row(a)[i] < sample.row(b)[i];
        });
        for (std::size_t r = 0; r < N; ++r) out[idx[r]][i] = static_cast<double>(r + 1) / (N + 1);
    }
    return EmpiricalSample(std::move(out));
}

Estimate fraction(std::size_t hits, std::size_t N) {
    const double p = static_cast<double>(hits) / N;
    return {p, std::sqrt(p * (1.0 - p) / N)};
}

}  // namespace

EmpiricalSample::EmpiricalSample(std::vector<std::vector<double>> rows) : rows_(std::move(rows)), dim_(0) {
    if (rows_.empty()) throw DomainError("empirical sample is empty");
    dim_ = static_cast<int>(rows_.front().size());
    if (dim_ < 1) throw DomainError("empirical sample rows are empty");
    for (const auto& r : rows_) {
        if (r.size() != static_cast<std::size_t>(dim_)) throw DomainError("empirical sample rows differ in length");
        for (double v : r)
            if (!std::isfinite(v)) throw DomainError("empirical sample has a non-finite entry");
    }
}

std::vector<double> EmpiricalSample::column(int i) const {
    std::vector<double> c(rows_.size());
    for (std::size_t k = 0; k < rows_.size(); ++k) c[k] = rows_[k][i];
    return c;
}

Estimate empirical_joint_survival(const EmpiricalSample& sample, const std::vector<double>& x) {
    if (x.size() != static_cast<std::size_t>(sample.dim())) throw DomainError("point has the wrong dimension");
    std::size_t hits = 0;
    for (const auto& r : sample.rows()) {
        bool all = true;
        for (int i = 0; i < sample.dim() && all; ++i) all = r[i] > x[i];
        hits += all;
    }
    return fraction(hits, sample.size());
}

EmpiricalSample pseudo_observations(const EmpiricalSample& sample) { return ranked(sample, false); }

EmpiricalSample survival_pseudo_observations(const EmpiricalSample& sample) { return ranked(sample, true); }

Estimate empirical_copula(const EmpiricalSample& pseudo, const std::vector<double>& u) {
    if (u.size() != static_cast<std::size_t>(pseudo.dim())) throw DomainError("point has the wrong dimension");
    std::size_t hits = 0;
    for (const auto& r : pseudo.rows()) {
        bool all = true;
        for (int i = 0; i < pseudo.dim() && all; ++i) all = r[i] <= u[i];
        hits += all;
    }
    return fraction(hits, pseudo.size());
}

KsResult ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
    if (sample.size() < min_draws) throw DomainError("the KS test needs at least 100 draws");
    std::sort(sample.begin(), sample.end());
    const double N = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t k = 0; k < sample.size(); ++k) {
        const double f = cdf(sample[k]);
        d = std::max({d, (k + 1) / N - f, f - k / N});
    }
    const double crit = ks_1pct / std::sqrt(N);
    return {d, crit, d <= crit};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.size() < min_draws || b.size() < min_draws) throw DomainError("the KS test needs at least 100 draws per sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == v) ++i;
        while (j < b.size() && b[j] == v) ++j;
        d = std::max(d, std::fabs(i / na - j / nb));
    }
    const double crit = ks_1pct * std::sqrt((na + nb) / (na * nb));
    return {d, crit, d <= crit};
}

}  // namespace asp::copula
