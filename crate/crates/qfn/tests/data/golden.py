# Regenerates golden.csv from the defining integrals with mpmath at 40 digits.
# Usage: python3 golden.py > golden.csv
from mpmath import mp, mpf, quad, besseli, exp, sqrt, gamma, pi, inf, nstr

mp.dps = 40


def nuttall(m, n, a, b):
    f = lambda x: x**m * exp(-(x * x + a * a) / 2) * besseli(n, a * x)
    return quad(f, [b, b + 5, b + 20, inf])


def toronto(m, n, r, bb):
    f = lambda t: t ** (m - n) * exp(-t * t) * besseli(n, 2 * r * t)
    return 2 * r ** (n - m + 1) * exp(-r * r) * quad(f, [0, bb])


def rice(k, x):
    return quad(lambda t: exp(-t) * besseli(0, k * t), [0, x])


def ilhi(m, n, a, x):
    return quad(lambda y: y**m * exp(-a * y) * besseli(n, y), [0, x])


def marcum(nu, a, b):
    return nuttall(nu, nu - 1, a, b) / a ** (nu - 1)


def eta_mu_cdf(eta, mu, t):
    # format 1, unit mean
    h = (2 + 1 / eta + eta) / 4
    hh = (1 / eta - eta) / 4
    def f(g):
        return (2 * sqrt(pi) * mu ** (mu + mpf(1) / 2) * h**mu * g ** (mu - mpf(1) / 2)
                / (gamma(mu) * abs(hh) ** (mu - mpf(1) / 2))
                * exp(-2 * mu * h * g) * besseli(mu - mpf(1) / 2, 2 * mu * abs(hh) * g))
    return quad(f, [0, t])


def kappa_mu_cdf(kappa, mu, t):
    return 1 - marcum(mu, sqrt(2 * kappa * mu), sqrt(2 * (1 + kappa) * mu * t))


def row(name, args, v):
    print(name + "," + ",".join(repr(float(a)) for a in args) + "," + nstr(v, 20, min_fixed=-inf, max_fixed=inf))


print("func,p1,p2,p3,p4,value")
for p in [(1, 0, 1, 1), (2, 1, 1.5, 0.5), (0.5, 1.5, 0.7, 2.0), (-1, 0, 1.2, 0.8), (3.3, 2.1, 2.5, 3.0),
          (1.5, 0.5, 3.0, 4.0), (4, 2, 0.5, 1.0), (0, 0, 0.3, 0.2), (2.7, 0.3, 5.0, 6.5), (-0.5, 0, 2.0, 1.0)]:
    row("nuttall", p, nuttall(*map(mpf, p)))
for p in [(1, 0, 1, 1), (3, 1, 0.8, 1.5), (2.5, 0.5, 1.2, 0.9), (0.5, 1.5, 2.0, 2.5), (4, 2, 1.5, 3.0),
          (1.7, 0.2, 0.4, 0.6), (5, 3, 2.5, 1.0), (1, 0, 3.0, 2.0)]:
    row("toronto", p, toronto(*map(mpf, p)))
for p in [(0.1, 0.1), (0.5, 1.0), (0.9, 3.0), (0.3, 10.0), (0.99, 5.0), (0.7, 0.5)]:
    row("rice", p + (0, 0), rice(*map(mpf, p)))
for p in [(1, 0, 2.0, 1.0), (1.7, 1.7, 1.5, 0.3), (0.5, 0.5, 1.2, 2.0), (2, 1, 3.0, 5.0), (0, 0, 1.1, 4.0),
          (2.3, 0.4, 0.8, 1.5), (3, 2, 2.5, 10.0), (-0.5, 0.5, 2.7, 3.2)]:
    row("ilhi", p, ilhi(*map(mpf, p)))
for p in [(1, 1, 1), (2, 1.5, 2.0), (0.5, 0.7, 1.3), (3.5, 2.0, 4.0), (1, 3, 2)]:
    row("marcum", p + (0,), marcum(*map(mpf, p)))
for p in [(0.25, 0.5, 0.8), (0.5, 1.0, 1.5), (2.0, 1.5, 0.4), (4.0, 2.5, 2.0)]:
    row("eta_mu_t", p + (0,), eta_mu_cdf(*map(mpf, p)))
for p in [(0.5, 0.5, 0.6), (1.0, 1.0, 1.0), (3.0, 1.5, 0.3), (1.0, 2.5, 2.0)]:
    row("kappa_mu_t", p + (0,), kappa_mu_cdf(*map(mpf, p)))
