"""High-precision reference values frozen into the C++ tests.

Each value is computed from a construction that differs from the one in the
library: posteriors over the terminal value of a bridge, Dirichlet mixtures,
direct quadrature. Run with: python3 derive.py
"""
from mpmath import mp, mpf, gamma, loggamma, beta, betainc, hyp1f1, quad, exp, log, sqrt, inf, mpc

mp.dps = 40

MIX = [(mpf("0.8"), mpf("0.5")), (mpf("1.2"), mpf("0.5"))]


def out(name, v):
    print(f"{name} = {mp.nstr(v, 20)}")


def gamma_pdf(k, x):
    return x ** (k - 1) * exp(-x) / gamma(k) if x > 0 else mpf(0)


def beta_pdf(a, b, u):
    return u ** (a - 1) * (1 - u) ** (b - 1) / beta(a, b)


# A GRB with activity m on [0, Tend] is z * bridge. Given terminal z, Gamma_s / z is
# Beta(m s, m (Tend - s)). Posterior over z given Gamma_s = x, then a scaled beta step.
def grb_density(atoms, m, Tend, s, x, t, y):
    def lik(z):  # density of Gamma_s at x given R = z
        return beta_pdf(m * s, m * (Tend - s), x / z) / z if x < z else mpf(0)

    num = den = mpf(0)
    for z, w in atoms:
        if x >= z:
            continue
        post = w * lik(z)
        den += post
        if y < z:
            a, b = m * (t - s), m * (Tend - t)
            num += post * beta_pdf(a, b, (y - x) / (z - x)) / (z - x)
    return num / den


# Psi_t(x) straight from its defining sum over atoms.
def psi(atoms, T, t, x):
    a = T * (1 - t)
    return gamma(T) * exp(x) / gamma(a) * sum(w * z ** (1 - T) * (z - x) ** (a - 1) for z, w in atoms if z > x)


out("grb mix m=1 T=1 s=0.3 x=0.2 t=0.7 y=0.5", grb_density(MIX, 1, 1, mpf("0.3"), mpf("0.2"), mpf("0.7"), mpf("0.5")))
out("grb mix m=2 T=1.5 s=0.4 x=0.3 t=1.1 y=0.9",
    grb_density(MIX, 2, mpf("1.5"), mpf("0.4"), mpf("0.3"), mpf("1.1"), mpf("0.9")))
out("psi mix T=3 t=0.4 x=0.5", psi(MIX, 3, mpf("0.4"), mpf("0.5")))
out("psi mix T=2 t=0.5 x=0.6", psi(MIX, 2, mpf("0.5"), mpf("0.6")))

# ASP norm at time t is the master GRB with activity 1 and horizon T at time T t.
def norm_density(atoms, T, s, x, t, r):
    return grb_density(atoms, 1, T, T * s, x, T * t, r)


out("norm asp3 mix s=0.2 x=0.3 t=0.6 r=0.7", norm_density(MIX, 3, mpf("0.2"), mpf("0.3"), mpf("0.6"), mpf("0.7")))

# Two-dimensional ASP with nu = delta_1: given R_1 = 1, (xi^1, xi^2) over [s, t] are
# increments of a gamma bridge: posterior weights are trivial, so the density of the
# increment (d1, d2) given the state is the Dirichlet density of
# (d1, d2, rest) / (1 - |x|) with parameters (t - s, t - s, 2 (1 - t)).
def asp2_point_density(s, x, t, y):
    rem = 1 - sum(x)
    d = [(yi - xi) / rem for yi, xi in zip(y, x)]
    a = t - s
    b = 2 * (1 - t)
    rest = 1 - d[0] - d[1]
    if min(d) <= 0 or rest <= 0:
        return mpf(0)
    c = gamma(2 * a + b) / (gamma(a) ** 2 * gamma(b))
    return c * d[0] ** (a - 1) * d[1] ** (a - 1) * rest ** (b - 1) / rem ** 2


out("asp2 point s=0.25 x=(0.1,0.15) t=0.75 y=(0.3,0.4)",
    asp2_point_density(mpf("0.25"), [mpf("0.1"), mpf("0.15")], mpf("0.75"), [mpf("0.3"), mpf("0.4")]))


# Conditional moments from a Dirichlet mixture over the terminal atom.
def cond_moments(atoms, m, s, x, t):
    T = sum(m)
    r = sum(x)
    post = [(z, w * z ** (1 - T) * (z - r) ** (T * (1 - s) - 1)) for z, w in atoms if z > r]
    tot = sum(p for _, p in post)
    post = [(z, p / tot) for z, p in post]
    A = T * (1 - s)
    al = [mi * (t - s) for mi in m]
    n = len(m)
    e1 = sum(p * (z - r) for z, p in post)
    e2 = sum(p * (z - r) ** 2 for z, p in post)
    mean = [x[i] + e1 * al[i] / A for i in range(n)]
    # E[B_i B_j] for Dirichlet over (pieces of all coordinates)
    def ebb(i, j):
        if i == j:
            return al[i] * (al[i] + 1) / (A * (A + 1))
        return al[i] * al[j] / (A * (A + 1))
    var = [e2 * ebb(i, i) - (e1 * al[i] / A) ** 2 for i in range(n)]
    cov = {(i, j): e2 * ebb(i, j) - (e1 * al[i] / A) * (e1 * al[j] / A) for i in range(n) for j in range(n) if i < j}
    return mean, var, cov


mean, var, cov = cond_moments(MIX, [1, 1, 1], mpf("0.25"), [mpf("0.1"), mpf("0.05"), mpf("0.2")], mpf("0.5"))
for i in range(3):
    out(f"moments mix s=0.25 t=0.5 mean{i+1}", mean[i])
for i in range(3):
    out(f"moments mix s=0.25 t=0.5 var{i+1}", var[i])
out("moments mix s=0.25 t=0.5 cov12", cov[(0, 1)])
mean, var, cov = cond_moments([(mpf(1), mpf(1))], [2, 1], mpf("0.3"), [mpf("0.2"), mpf("0.1")], mpf("1"))
out("moments liouville(2,1) point s=0.3 t=1 mean1", mean[0])
out("moments liouville(2,1) point s=0.3 t=1 var1", var[0])
out("moments liouville(2,1) point s=0.3 t=1 cov12", cov[(0, 1)])

# Coordinate survival at time t: xi_t^(i) = R * Beta(m_i t, T - m_i t).
def coord_survival(atoms, T, mi, t, x):
    return sum(w * (1 - betainc(mi * t, T - mi * t, 0, x / z, regularized=True)) for z, w in atoms if z > x)


out("uniform_map asp3 point t=0.5 x=0.1", coord_survival([(mpf(1), mpf(1))], 3, 1, mpf("0.5"), mpf("0.1")))
out("uniform_map liouville(2,1) mix t=0.5 coord1 x=0.3", coord_survival(MIX, 3, 2, mpf("0.5"), mpf("0.3")))
out("uniform_map liouville(2,1) mix t=0.5 coord2 x=0.3", coord_survival(MIX, 3, 1, mpf("0.5"), mpf("0.3")))

# Characteristic function of the bridge at t given its value x at s, by quadrature.
def bridge_cf(m, Tend, s, x, t, lam):
    a, b = m * (t - s), m * (Tend - t)
    re = quad(lambda u: mp.cos(lam * (x + (1 - x) * u)) * beta_pdf(a, b, u), [0, 1])
    im = quad(lambda u: mp.sin(lam * (x + (1 - x) * u)) * beta_pdf(a, b, u), [0, 1])
    return re, im


re, im = bridge_cf(2, 1, mpf("0.2"), mpf("0.3"), mpf("0.6"), mpf("1.7"))
out("bridge cf m=2 s=0.2 x=0.3 t=0.6 lambda=1.7 re", re)
out("bridge cf m=2 s=0.2 x=0.3 t=0.6 lambda=1.7 im", im)

out("marginal survival gamma2 n=3 x=0.7", quad(lambda r: (1 - mpf("0.7") / r) ** 2 * gamma_pdf(2, r), [mpf("0.7"), inf]))
out("marginal survival mix n=3 x=0.5", sum(w * (1 - mpf("0.5") / z) ** 2 for z, w in MIX))

# Conditional norm law nu_st for the mixture, T=3, s=0.2, t=0.6, r_s=0.3.
T, s, t, rs = 3, mpf("0.2"), mpf("0.6"), mpf("0.3")
dens = lambda r: psi(MIX, T, t, r) / psi(MIX, T, s, rs) * gamma_pdf(T * (t - s), r - rs)
out("nu_st mix cdf(0.7)", quad(dens, [rs, mpf("0.7")]))
out("nu_st mix mean increment", quad(lambda r: (r - rs) * dens(r), [rs, mpf("0.8"), mpf("1.2")]))

out("kummer M(0.5,1.5,2i) re", hyp1f1(mpf("0.5"), mpf("1.5"), mpc(0, 2)).real)
out("kummer M(0.5,1.5,2i) im", hyp1f1(mpf("0.5"), mpf("1.5"), mpc(0, 2)).imag)
out("kummer M(0.7,2.3,-30)", hyp1f1(mpf("0.7"), mpf("2.3"), -30))
out("reg_inc_beta(0.37, 2.5, 0.8)", betainc(mpf("2.5"), mpf("0.8"), 0, mpf("0.37"), regularized=True))
