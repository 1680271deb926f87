#include "asp/copula/copula.hpp"

#include <algorithm>
#include <cmath>

#include "asp/errors.hpp"

namespace asp::copula {

namespace {

void check_unit(const std::vector<double>& u) {
    if (u.empty()) throw DomainError("copula argument is empty");
    for (double v : u)
        if (!(v >= 0.0 && v <= 1.0)) throw DomainError("copula arguments must lie in [0, 1]");
}

}  // namespace

double copula_eval(const genlaw::ArchGenerator& gen, const std::vector<double>& u) {
    check_unit(u);
    double s = 0.0;
    for (double v : u) {
        if (v == 0.0) return 0.0;
        s += gen.inverse(v);
    }
    return std::clamp(gen(s), 0.0, 1.0);
}

double asp_terminal_copula(const procs::ProcessSpec& spec, const std::vector<double>& u) {
    check_unit(u);
    const int n = spec.dim();
    if (u.size() != static_cast<std::size_t>(n)) throw DomainError("copula argument has the wrong dimension");
    double s = 0.0;
    for (double v : u) {
        if (v == 0.0) return 0.0;
        s += genlaw::survival_inverse(spec.law(), n, v);
    }
    if (!std::isfinite(s)) return 0.0;
    return genlaw::marginal_survival(spec.law(), n, s);
}

double n_increasing_check(const genlaw::ArchGenerator& gen, int n, const std::vector<double>& lo,
                          const std::vector<double>& hi) {
    if (n < 1 || lo.size() != static_cast<std::size_t>(n) || hi.size() != lo.size())
        throw DomainError("box corners must have n coordinates");
    for (int i = 0; i < n; ++i)
        if (!(lo[i] <= hi[i])) throw DomainError("box corners are not ordered");
    double vol = 0.0;
    std::vector<double> c(n);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        int lows = 0;
        for (int i = 0; i < n; ++i) {
            const bool low = mask & (1u << i);
            c[i] = low ? lo[i] : hi[i];
            lows += low;
        }
        vol += ((lows % 2) ? -1.0 : 1.0) * copula_eval(gen, c);
    }
    return vol;
}

}  // namespace asp::copula
