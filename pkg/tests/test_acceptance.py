"""Acceptance gate: one test group per criterion, tolerances pinned below.

Each check reports a PASS/FAIL line (run with ``-s`` to see them inline);
the per-criterion verdicts are repeated in the terminal summary.
"""

import json
import math
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from acceptance_log import report
from cdgamma import gammafn as G
from cdgamma.algebra import CDNumber, cd_mul, find_zero_divisor, mul_coords, random_unit_axis
from cdgamma.beta import beta, beta_commutator_check, beta_result, beta_via_gamma, thm17_check, thm17_grid
from cdgamma.campbell_hausdorff import CHConfig, ch_oracle, ch_w
from cdgamma.elementary import cd_ln
from cdgamma.report import normalized_residual

# pinned tolerances
ALGEBRA_TOL = 1e-12
CROSS_METHOD_TOL = 1e-6
LIMIT_N = 100_000
LIMIT_REL_TOL = 5e-5
ORDER_RANGE = (0.8, 1.2)
IDENTITY_TOL = 1e-10
REFLECTION_HALF_TOL = 1e-12
RESIDUE_EPS = 1e-4
RESIDUE_TOL = 1e-6
HANKEL_TOL = 1e-6
HANKEL_INVARIANCE_TOL = 1e-7
HANKEL_POLE_TOL = 1e-7
STIRLING_REAL_TOL = 1e-10
STIRLING_COMPLEX_TOL = 1e-9
MAGNITUDE_TOL = 1e-3
BERNOULLI_TOL = 1e-14
GENFUN_TOL = 1e-16
BETA_EXACT_TOL = 1e-12
BETA_CLASSICAL_TOL = 1e-9
COMMUTATOR_FACTOR = 10.0
ORDER_SENSITIVITY_FACTOR = 100.0
CH_TOL = 1e-8
THM17_TOL = 1e-9

SEED = 7
LEVELS = (2, 3, 4)
N_SAMPLES = 100


def sample_slice(rng, level, xr=(0.2, 4.0), yr=(-4.0, 4.0)):
    axis = random_unit_axis(rng, level)
    return axis * rng.uniform(*yr) + rng.uniform(*xr)


@pytest.fixture(scope="module")
def gamma_samples():
    rng = np.random.default_rng([SEED, 2])
    return {v: [sample_slice(rng, v) for _ in range(N_SAMPLES)] for v in LEVELS}


# 1. algebra core

QUATERNION_TABLE = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, -1), (3, 1), (2, -1)],
    [(2, 1), (3, -1), (0, -1), (1, 1)],
    [(3, 1), (2, 1), (1, -1), (0, -1)],
]


def test_c1_quaternion_table():
    ok = True
    for r in range(4):
        for c in range(4):
            idx, sign = QUATERNION_TABLE[r][c]
            expected = np.zeros(4)
            expected[idx] = sign
            ok &= np.array_equal(cd_mul(CDNumber.unit(r, 2), CDNumber.unit(c, 2)).coords, expected)
    report(1, "quaternion table", ok, "16 products exact")
    assert ok


def test_c1_norm_multiplicativity():
    rng = np.random.default_rng([SEED, 1])
    worst = 0.0
    for v in (1, 2, 3):
        a = rng.normal(size=(10_000, 1 << v))
        b = rng.normal(size=(10_000, 1 << v))
        ab = np.linalg.norm(mul_coords(a, b), axis=1)
        worst = max(worst, float(np.max(np.abs(ab - np.linalg.norm(a, axis=1) * np.linalg.norm(b, axis=1)))))
    pair = find_zero_divisor(4)
    ok_norm = worst <= ALGEBRA_TOL
    report(1, "norm multiplicativity v<=3", ok_norm, f"max |ab|-|a||b| = {worst:.2e}")
    found = pair is not None and cd_mul(*pair).norm() == 0.0
    report(1, "v=4 counterexample", found, f"zero divisor {pair[0]!r} * {pair[1]!r}" if found else "none")
    assert ok_norm and found


def test_c1_power_associativity():
    rng = np.random.default_rng([SEED, 11])
    worst = 0.0
    for v in range(1, 7):
        z = rng.normal(size=(1000, 1 << v))
        z2 = mul_coords(z, z)
        worst = max(worst, float(np.max(np.linalg.norm(mul_coords(z2, z) - mul_coords(z, z2), axis=1))))
    ok = worst <= ALGEBRA_TOL
    report(1, "power associativity v<=6", ok, f"max |z^2 z - z z^2| = {worst:.2e}")
    assert ok


# 2. Gamma cross-method agreement

def test_c2_cross_method_agreement(gamma_samples):
    methods = ("slice_lanczos", "integral", "phi_psi_series", "hankel")
    worst = 0.0
    for v in LEVELS:
        for z in gamma_samples[v]:
            vals = [G.gamma_by(m, z).value for m in methods]
            for i in range(len(vals)):
                for j in range(i + 1, len(vals)):
                    worst = max(worst, normalized_residual(vals[i], vals[j]))
    ok = worst <= CROSS_METHOD_TOL
    report(2, "slice/integral/phi-psi/hankel", ok, f"max pairwise residual {worst:.2e}")
    assert ok


def test_c2_limit_form_accuracy(gamma_samples):
    worst, arg = 0.0, None
    for v in LEVELS:
        for z in gamma_samples[v]:
            ref = G.gamma(z)
            rel = (G.gamma_limit(z, LIMIT_N) - ref).norm() / ref.norm()
            if rel > worst:
                worst, arg = rel, z
    ok = worst <= LIMIT_REL_TOL
    report(2, "gamma_limit n=1e5 relative", ok, f"max {worst:.2e} at |z(z+1)| = "
           f"{cd_mul(arg, arg + 1.0).norm():.1f}")
    assert ok


def test_c2_limit_form_order(gamma_samples):
    ns = np.array([1_000, 10_000, 100_000])
    exps = []
    for v in LEVELS:
        for z in gamma_samples[v][:25]:
            ref = G.gamma(z)
            errs = [(G.gamma_limit(z, int(n)) - ref).norm() for n in ns]
            exps.append(-np.polyfit(np.log(ns), np.log(errs), 1)[0])
    lo, hi = min(exps), max(exps)
    ok = ORDER_RANGE[0] <= lo and hi <= ORDER_RANGE[1]
    report(2, "convergence order 1/n", ok, f"fitted exponents in [{lo:.3f}, {hi:.3f}]")
    assert ok


# 3. identity residuals

@pytest.mark.parametrize("kind", ["recurrence", "reflection", "duplication"])
def test_c3_identities(kind, gamma_samples):
    worst = max(G.verify_identity(kind, z).residual for v in LEVELS for z in gamma_samples[v])
    ok = worst < IDENTITY_TOL
    report(3, kind, ok, f"max residual {worst:.2e}")
    assert ok


def test_c3_reflection_at_one_half():
    rep = G.verify_identity("reflection", CDNumber.real_number(0.5, 2))
    err = max((rep.lhs - CDNumber.real_number(math.pi, 2)).norm(),
              (rep.rhs - CDNumber.real_number(math.pi, 2)).norm())
    ok = err <= REFLECTION_HALF_TOL
    report(3, "reflection at 1/2 equals pi", ok, f"max deviation {err:.2e}")
    assert ok


# 4. residues

def test_c4_residues():
    rng = np.random.default_rng([SEED, 4])
    worst = {}
    for v in (1, 2, 3):
        for _ in range(10):
            axis = random_unit_axis(rng, v)
            for n in range(11):
                est = G.residue_estimate(n, axis, RESIDUE_EPS)
                dev = (est - CDNumber.real_number(G.gamma_residue(n), v)).norm()
                worst[n] = max(worst.get(n, 0.0), dev)
    bad = [n for n, d in worst.items() if d > RESIDUE_TOL]
    ok = not bad
    detail = ", ".join(f"n={n}: {worst[n]:.1e}" for n in sorted(worst))
    report(4, "(z+n) Gamma(z) at -n + 1e-4 M", ok, detail)
    assert ok, f"deviation above {RESIDUE_TOL} for n in {bad}"


# 5. Hankel representation

@pytest.fixture(scope="module")
def hankel_grid():
    rng = np.random.default_rng([SEED, 5])
    xs = np.linspace(-2.0, 4.0, 6, endpoint=False) + 0.5
    ys = np.linspace(-3.0, 3.0, 5, endpoint=False) + 0.6
    pts = []
    for _ in range(3):
        axis = random_unit_axis(rng, 3)
        pts += [axis * float(y) + float(x) for x in xs for y in ys]
    return pts


def test_c5_hankel_grid(hankel_grid):
    worst = max((G.hankel_reciprocal_gamma(z) - G.rgamma(z)).norm() for z in hankel_grid)
    ok = worst <= HANKEL_TOL
    report(5, "1/Gamma on 3 slices", ok, f"{len(hankel_grid)} points, max {worst:.2e}")
    assert ok


def test_c5_hankel_contour_invariance(hankel_grid):
    worst = 0.0
    for z in hankel_grid:
        a = G.hankel_reciprocal_gamma(z, delta=0.25, radius=30.0)
        b = G.hankel_reciprocal_gamma(z, delta=0.5, radius=40.0)
        worst = max(worst, (a - b).norm())
    ok = worst <= HANKEL_INVARIANCE_TOL
    report(5, "(delta, R) invariance", ok, f"max {worst:.2e}")
    assert ok


def test_c5_hankel_at_poles():
    vals = [G.hankel_reciprocal_gamma(CDNumber.real_number(-n, 2)).norm() for n in (1.0, 2.0)]
    ok = max(vals) < HANKEL_POLE_TOL
    report(5, "contour value at z=-1,-2", ok, f"{vals[0]:.1e}, {vals[1]:.1e}")
    assert ok


# 6. asymptotics

def test_c6_stirling_real():
    s = G.stirling_series(CDNumber.real_number(50.0, 2), 5)
    exact = float(mpmath.log(mpmath.factorial(49)))
    rel = abs(s.value.re - exact) / exact
    ok = rel <= STIRLING_REAL_TOL and s.value.pure.norm() == 0.0
    report(6, "Stirling at z=50", ok, f"relative error {rel:.2e}")
    assert ok


def test_c6_stirling_complex():
    rng = np.random.default_rng([SEED, 6])
    worst = 0.0
    for _ in range(10):
        axis = random_unit_axis(rng, 3)
        z = (axis * 30.0 + 30.0) / math.sqrt(2.0)
        worst = max(worst, G.lngamma_difference(G.ln_gamma_stirling(z, 5), cd_ln(G.gamma(z)), z))
    ok = worst <= STIRLING_COMPLEX_TOL
    report(6, "Stirling at 30(1+M)/sqrt2", ok, f"max |difference| mod 2 pi {worst:.2e}")
    assert ok


def test_c6_magnitude_ratio():
    rng = np.random.default_rng([SEED, 66])
    worst = 0.0
    for v in (2, 3, 4):
        for _ in range(10):
            axis = random_unit_axis(rng, v)
            ratio = G.gamma(axis * 40.0 + 0.5).norm() / G.gamma_magnitude_asymptotic(0.5, 40.0)
            worst = max(worst, abs(ratio - 1.0))
    ok = worst <= MAGNITUDE_TOL
    report(6, "|Gamma(1/2 + 40M)| / asymptote", ok, f"max |ratio - 1| {worst:.2e}")
    assert ok


# 7. Bernoulli numbers

def test_c7_bernoulli_against_taylor():
    mpmath.mp.dps = 40
    coeffs = mpmath.taylor(lambda z: z / 2 * mpmath.coth(z / 2) if z != 0 else mpmath.mpf(1),
                           mpmath.mpf(0), 16)
    table = G.bernoulli_numbers(8)
    worst = 0.0
    for n in range(1, 9):
        oracle = (-1) ** (n - 1) * coeffs[2 * n] * mpmath.factorial(2 * n)
        worst = max(worst, float(abs(oracle - table[n]) / abs(oracle)))
    ok = worst <= BERNOULLI_TOL
    report(7, "B1..B8 vs truncated Taylor", ok, f"max relative error {worst:.2e}")
    assert ok


def test_c7_generating_function_residual():
    mpmath.mp.dps = 50
    z = mpmath.mpf("0.1")
    table = G.bernoulli_numbers(8)
    series = 1 + sum((-1) ** (n - 1) * mpmath.mpf(table.fractions[n - 1].numerator)
                     / table.fractions[n - 1].denominator * z ** (2 * n) / mpmath.factorial(2 * n)
                     for n in range(1, 9))
    res = float(abs(z / 2 * mpmath.coth(z / 2) - series))
    ok = res < GENFUN_TOL
    report(7, "generating function at z=0.1", ok, f"residual {res:.2e}")
    assert ok


# 8. Beta

def test_c8_beta_two_three():
    b = beta(CDNumber.real_number(2.0, 2), CDNumber.real_number(3.0, 2))
    err = (b - CDNumber.real_number(1 / 12, 2)).norm()
    ok = err <= BETA_EXACT_TOL
    report(8, "beta(2,3) = 1/12", ok, f"error {err:.2e}")
    assert ok


def test_c8_same_slice_beta():
    rng = np.random.default_rng([SEED, 8])
    worst = 0.0
    for i in range(50):
        axis = random_unit_axis(rng, 2 + i % 2)
        p = axis * rng.uniform(-1.5, 1.5) + rng.uniform(0.6, 3.0)
        q = axis * rng.uniform(-1.5, 1.5) + rng.uniform(0.6, 3.0)
        worst = max(worst, normalized_residual(beta(p, q), beta_via_gamma(p, q)))
    ok = worst <= BETA_CLASSICAL_TOL
    report(8, "same-slice beta vs Gamma ratio", ok, f"max residual {worst:.2e}")
    assert ok


def test_c8_commutator_identity():
    rng = np.random.default_rng([SEED, 15])
    fails, total, worst_ratio = 0, 0, 0.0
    for level, count in ((2, 50), (3, 20)):
        for _ in range(count):
            p = sample_slice(rng, level, (0.6, 3.0), (-1.5, 1.5))
            q = sample_slice(rng, level, (0.6, 3.0), (-1.5, 1.5))
            rep = beta_commutator_check(p, q)
            bound = COMMUTATOR_FACTOR * rep.extras["combined_quadrature_error"]
            total += 1
            fails += rep.residual >= bound
            worst_ratio = max(worst_ratio, rep.residual / bound)
    ok = fails == 0
    report(8, "commutator identity", ok,
           f"{fails}/{total} pairs above 10x combined quadrature error (worst ratio {worst_ratio:.1e})")
    assert ok


def test_c8_order_sensitivity():
    p = CDNumber(np.array([1.0, 1.0, 0.0, 0.0]))
    q = CDNumber(np.array([1.0, 0.0, 1.0, 0.0]))
    r1, r2 = beta_result(p, q), beta_result(q, p)
    tol = max(r1.error_estimate + r2.error_estimate, 1e-12)
    gap = (r1.value - r2.value).norm()
    ok = gap > ORDER_SENSITIVITY_FACTOR * tol
    report(8, "B(p,q) != B(q,p) exhibited", ok, f"|difference| {gap:.2e} vs tolerance {tol:.1e}")
    assert ok


# 9. Campbell-Hausdorff

def test_c9_ch_against_group_log():
    # Gaussian directions; both scaled so that |u| + |v| = rho, rho ~ U(0, 0.5)
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for _ in range(50):
        u, v = rng.normal(size=4), rng.normal(size=4)
        rho = rng.uniform(0.0, 0.5)
        s = rho / (np.linalg.norm(u) + np.linalg.norm(v))
        U, V = CDNumber(u * s), CDNumber(v * s)
        worst = max(worst, (ch_w(U, V, CHConfig(truncation_order=8)) - ch_oracle(U, V)).norm())
    ok = worst <= CH_TOL
    report(9, "order 8 vs Ln(e^u e^v)", ok, f"max {worst:.2e}")
    assert ok


def test_c9_commuting_inputs_exact():
    rng = np.random.default_rng([SEED, 9])
    ok = True
    for _ in range(10):
        axis = random_unit_axis(rng, 2)
        u = axis * rng.uniform(-0.2, 0.2) + rng.uniform(-1, 1)
        v = axis * rng.uniform(-0.2, 0.2) + rng.uniform(-1, 1)
        ok &= ch_w(u, v) == u + v
    report(9, "commuting inputs give u+v", ok, "10 same-slice pairs, exact equality")
    assert ok


# 10. Gamma-Beta relation

def test_c10_commutative_reduction():
    rng = np.random.default_rng([SEED, 10])
    worst = 0.0
    for i in range(50):
        axis = random_unit_axis(rng, 2 + i % 2)
        q = axis * rng.uniform(-1.0, 1.0) + rng.uniform(0.6, 3.0)
        if i % 4 < 2:
            p = axis * rng.uniform(-1.0, 1.0) + rng.uniform(0.6, 3.0)
        else:
            p = CDNumber.real_number(rng.uniform(0.6, 3.0), q.level)
        rep = thm17_check(p, q)
        assert rep.extras["commutative"]
        worst = max(worst, rep.residual)
    ok = worst < THM17_TOL
    report(10, "same-slice and real-p reduction", ok, f"max residual {worst:.2e}")
    assert ok


def test_c10_noncommutative_grid_report():
    grid = thm17_grid()
    residuals = [rep.residual for _, _, rep in grid]
    ok = (len(grid) == 25 and all(math.isfinite(r) for r in residuals)
          and not any(rep.asserted for _, _, rep in grid))
    report(10, "5x5 noncommutative grid reported", ok,
           f"residuals in [{min(residuals):.1e}, {max(residuals):.1e}], not asserted")
    assert ok


# 11. determinism

def test_c11_verify_all_is_bit_identical(tmp_path):
    outs = []
    for name in ("first.json", "second.json"):
        path = tmp_path / name
        proc = subprocess.run([sys.executable, "-m", "cdgamma.cli", "verify", "--suite", "all",
                               "--seed", str(SEED), "--format", "json", "--out", str(path),
                               "--no-plot"], capture_output=True)
        assert proc.returncode in (0, 1), proc.stderr.decode()
        outs.append(path.read_bytes())
    ok = outs[0] == outs[1] and len(json.loads(outs[0])["records"]) > 0
    report(11, "verify --suite all --seed 7", ok, f"{len(outs[0])} bytes, identical={outs[0] == outs[1]}")
    assert ok
