"""Regenerate the Lanczos coefficients (g = 7, 9 terms) used by cdgamma.gamma.

The reference values of Gamma come from the Euler integral evaluated with
mpmath quadrature at 50 digits (not from mpmath.gamma).  The coefficients of

    Gamma(z + 1) = sqrt(2 pi) (z + g + 1/2)^(z + 1/2) e^-(z + g + 1/2)
                   * (c0 + sum_k c_k / (z + k))

are fitted by linear least squares in relative error over real sample
points, then the worst relative error over a complex test grid is printed.

Run:  python scripts/lanczos_coefficients.py
"""

import mpmath as mp

G = 7
N = 9
mp.mp.dps = 50


def euler_gamma(x):
    # Gamma(x) = int_0^inf e^-t t^(x-1) dt, split at 1 for the endpoint behaviour
    f = lambda t: mp.exp(-t) * t ** (x - 1)
    return mp.quad(f, [0, 1, 10, 40, mp.inf])


def basis_row(z):
    t = z + G + mp.mpf(1) / 2
    pref = mp.sqrt(2 * mp.pi) * t ** (z + mp.mpf(1) / 2) * mp.exp(-t)
    return pref, [mp.mpf(1)] + [1 / (z + k) for k in range(1, N)]


def fit():
    # Chebyshev-like sampling of z in [0, 40], denser near 0
    pts = [mp.mpf(40) * (1 - mp.cos(mp.pi * (j + mp.mpf(1) / 2) / 60)) / 2 for j in range(60)]
    rows, rhs = [], []
    for z in pts:
        pref, row = basis_row(z)
        target = euler_gamma(z + 1) / pref
        rows.append([r / target for r in row])
        rhs.append(mp.mpf(1))
    a = mp.matrix(rows)
    b = mp.matrix(rhs)
    return mp.lu_solve(a.T * a, a.T * b)


def check(coef):
    worst = 0
    for x in [0.5, 1, 2, 3.5, 7, 15, 30]:
        for y in [0, 0.5, 2, 5, 12, 30]:
            z = mp.mpc(x, y) - 1
            pref, row = basis_row(z)
            approx = pref * sum(c * r for c, r in zip(coef, row))
            ref = mp.gamma(z + 1)
            worst = max(worst, abs(approx / ref - 1))
    return worst


if __name__ == "__main__":
    coef = fit()
    for c in coef:
        print(mp.nstr(c, 20))
    print("max relative error on complex grid:", mp.nstr(check(coef), 5))
