#include "asp/procs/moments.hpp"

#include <cmath>
#include <numeric>

#include "asp/errors.hpp"
#include "asp/genlaw/norm_law.hpp"

namespace asp::procs {

dists::MomentSet conditional_moments(const ProcessSpec& spec, double s,
                                     const std::vector<double>& x, double t) {
    if (!(s >= 0.0 && s < t && t <= 1.0)) throw DomainError("moments need 0 <= s < t <= 1");
    if (x.size() != static_cast<std::size_t>(spec.dim())) throw DomainError("state has the wrong dimension");
    for (double v : x)
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("state coordinates must be nonnegative");
    const double m2 = spec.law().moment(2);
    if (!std::isfinite(m2)) throw UnsupportedOperation("the generating law has no finite second moment");

    const double T = spec.total_activity();
    const double r_s = std::accumulate(x.begin(), x.end(), 0.0);
    const genlaw::ConditionalNormLaw nu_s1(spec.law(), T, s, 1.0, r_s);
    const double e1 = nu_s1.increment_moment(1);
    const double e2 = nu_s1.increment_moment(2);
    const double mu1 = (t - s) / (1.0 - s) * e1;
    const double mu2 = (t - s) * (1.0 + T * (t - s)) / ((1.0 - s) * (1.0 + T * (1.0 - s))) * e2;

    std::vector<double> alpha(spec.activity());
    for (double& a : alpha) a *= t - s;
    auto out = dists::liouville_moments(mu1, mu2, dists::DirichletParams(std::move(alpha)));
    for (std::size_t i = 0; i < x.size(); ++i) out.mean[i] += x[i];
    return out;
}

}  // namespace asp::procs
