"""Gamma of Cayley-Dickson arguments by several independent routes.

``gamma`` is the reference route: it slice-lifts a complex Lanczos
approximation.  The others evaluate Gamma directly from its integral,
series, limit, product and contour representations, using Cayley-Dickson
arithmetic throughout, and exist to be compared against it.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .algebra import CDNumber, cd_inverse, cd_mul, mul_coords, prod_coords
from .elementary import (cd_csc, cd_ln, exp_coords, real_power, real_power_coords,
                         slice_decompose, slice_lift)
from .errors import DomainError, PoleError, RepresentationError, SingularError
from .quadrature import (DEFAULT_CONFIG, IntegralResult, QuadratureConfig, hankel_contour,
                         integrate_contour, integrate_semi_infinite)
from .report import IdentityReport, make_report

EPS_POLE = 1e-9

# g = 7, nine terms; fitted by scripts/lanczos_coefficients.py against the
# Euler integral at 50 digits.  Worst relative error ~7.5e-14 for Re z >= 1/2.
LANCZOS_G = 7.0
LANCZOS_COEF = (
    0.99999999999998927575,
    676.52036812189120033,
    -1259.1392167227583806,
    771.3234287824734841,
    -176.61502918887085877,
    12.507343352153995495,
    -0.13857120132850997132,
    0.00001006141480580089966,
    1.2835922509803437014e-7,
)
LANCZOS_REL_ERROR = 1e-13


class GammaMethod(str, enum.Enum):
    SLICE_LANCZOS = "slice_lanczos"
    INTEGRAL = "integral"
    PHI_PSI_SERIES = "phi_psi_series"
    LIMIT_FORM = "limit_form"
    EULER_PRODUCT = "euler_product"
    HANKEL = "hankel"


# complex backend

def _lanczos(w: complex) -> complex:
    z = w - 1.0
    t = z + LANCZOS_G + 0.5
    acc = LANCZOS_COEF[0]
    for k in range(1, len(LANCZOS_COEF)):
        acc += LANCZOS_COEF[k] / (z + k)
    return math.sqrt(2 * math.pi) * cmath.exp((z + 0.5) * cmath.log(t) - t) * acc


def gamma_complex(w: complex) -> complex:
    w = complex(w)
    if w.real < 0.5:
        return math.pi / (cmath.sin(math.pi * w) * _lanczos(1.0 - w))
    return _lanczos(w)


def rgamma_complex(w: complex) -> complex:
    """Entire reciprocal Gamma; exactly zero at the poles of Gamma."""
    w = complex(w)
    if w.real < 0.5:
        if w.imag == 0.0 and w.real == round(w.real):
            return 0j
        return cmath.sin(math.pi * w) * _lanczos(1.0 - w) / math.pi
    return 1.0 / _lanczos(w)


def nearest_pole(z: CDNumber) -> tuple[int, float]:
    """Return ``(n, distance)`` for the pole ``-n`` closest to ``z``."""
    f = slice_decompose(z)
    n = max(0, int(round(-f.real_part)))
    return n, math.hypot(f.real_part + n, f.radius)


def _check_pole(z: CDNumber, eps: float = EPS_POLE) -> None:
    n, dist = nearest_pole(z)
    if dist < eps:
        raise PoleError(f"argument within {eps:g} of the pole at {-n}", -n)


def gamma(z: CDNumber) -> CDNumber:
    """Gamma by slice-lift of the complex Lanczos approximation."""
    _check_pole(z)
    return slice_lift(gamma_complex, z)


def rgamma(z: CDNumber) -> CDNumber:
    """1/Gamma, defined everywhere."""
    return slice_lift(rgamma_complex, z)


# Eulerian integral and the series/integral split

def _gamma_integrand(s: CDNumber):
    def f(t):
        return np.exp(-t)[:, None] * real_power_coords(t, s)
    return f


def gamma_integral_result(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    if not z.re > 0:
        raise DomainError("the Eulerian integral needs Re z > 0")
    return integrate_semi_infinite(_gamma_integrand(z - 1.0), 0.0, cfg)


def gamma_integral(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CDNumber:
    """``int_0^inf e^-t t^(z-1) dt`` by quadrature (``Re z > 0`` only)."""
    return gamma_integral_result(z, cfg).value


def gamma_psi(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """The entire part ``int_1^inf e^-t t^(z-1) dt``."""
    return integrate_semi_infinite(_gamma_integrand(z - 1.0), 1.0, cfg)


def gamma_phi(z: CDNumber, n_terms: int = 60) -> tuple[CDNumber, float]:
    """The series ``sum (-1)^n / (n! (n + z))``; returns (value, tail bound)."""
    _check_pole(z)
    n = np.arange(n_terms)
    shifted = np.broadcast_to(z.coords, (n_terms, z.dim)).copy()
    shifted[:, 0] += n
    inv = -shifted
    inv[:, 0] = shifted[:, 0]
    inv /= np.einsum("ij,ij->i", shifted, shifted)[:, None]
    weights = np.array([(-1.0) ** k / math.factorial(k) for k in range(n_terms)])
    value = CDNumber(weights @ inv)
    _, dist = nearest_pole(z)
    dist_tail = max(n_terms + z.re, dist, 1e-300)
    tail = 1.0 / (math.factorial(n_terms) * dist_tail) if n_terms < 171 else 0.0
    return value, tail


def gamma_phi_series_result(z: CDNumber, n_terms: int = 60,
                            cfg: QuadratureConfig = DEFAULT_CONFIG) -> tuple[CDNumber, float]:
    phi, tail = gamma_phi(z, n_terms)
    psi = gamma_psi(z, cfg)
    return phi + psi.value, tail + psi.error_estimate


def gamma_phi_series(z: CDNumber, n_terms: int = 60,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> CDNumber:
    """Gamma continued to all non-poles as Phi-series plus Psi-integral."""
    return gamma_phi_series_result(z, n_terms, cfg)[0]


# limit form and Euler product

def _batch_inverse(c: np.ndarray) -> np.ndarray:
    n2 = np.einsum("ij,ij->i", c, c)
    if np.any(n2 == 0.0):
        raise SingularError("singular factor (argument hits a pole)")
    inv = -c
    inv[:, 0] = c[:, 0]
    return inv / n2[:, None]


def gamma_limit(z: CDNumber, n: int) -> CDNumber:
    """``n! n^z [z(z+1)...(z+n)]^-1``.

    The factorial is real (hence central) and is distributed over the
    factors as ``z * prod (z+k)/k``, which keeps the product finite for
    large ``n``.  All factors share the slice of ``z``, so the bracketing of
    the product is immaterial.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(1, n + 1, dtype=np.float64)
    factors = np.broadcast_to(z.coords, (n, z.dim)) / k[:, None]
    factors = factors.copy()
    factors[:, 0] += 1.0
    if z.norm() == 0.0 or np.any(np.einsum("ij,ij->i", factors, factors) == 0.0):
        raise SingularError("gamma_limit: a factor z + k vanishes")
    denom = cd_mul(z, CDNumber(prod_coords(factors)))
    return cd_mul(real_power(float(n), z), cd_inverse(denom))


def gamma_euler_product(z: CDNumber, n_factors: int) -> CDNumber:
    """``z^-1 prod_{m<=n} (1 + 1/m)^z (1 + z/m)^-1``."""
    m = np.arange(1, n_factors + 1, dtype=np.float64)
    lin = np.broadcast_to(z.coords, (n_factors, z.dim)) / m[:, None]
    lin = lin.copy()
    lin[:, 0] += 1.0
    pw = real_power_coords(1.0 + 1.0 / m, z)
    factors = mul_coords(pw, _batch_inverse(lin))
    if z.norm() == 0.0:
        raise SingularError("gamma_euler_product: z = 0 is a pole")
    return cd_mul(cd_inverse(z), CDNumber(prod_coords(factors)))


def gamma_residue(n: int) -> float:
    """Residue of Gamma at ``-n``: ``(-1)^n / n!``."""
    if n < 0:
        raise ValueError("residues exist only at n >= 0")
    return (-1.0) ** n / math.factorial(n)


def residue_estimate(n: int, axis: CDNumber, eps: float = 1e-4) -> CDNumber:
    """``(z + n) Gamma(z)`` at ``z = -n + eps*axis``."""
    z = CDNumber(axis.coords * eps) - float(n)
    return cd_mul(z + float(n), gamma(z))


# Bernoulli numbers and the Stirling series

@dataclass(frozen=True)
class BernoulliTable:
    """``B_1 ... B_n`` with ``(z/2) coth(z/2) = 1 + sum (-1)^(n-1) B_n z^(2n) / (2n)!``.

    In this convention every entry is positive: B_1 = 1/6, B_2 = 1/30, ...
    """

    fractions: tuple[Fraction, ...]

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self.fractions)

    def __getitem__(self, k: int) -> float:
        if k < 1:
            raise IndexError("Bernoulli numbers are indexed from 1")
        return float(self.fractions[k - 1])

    def __len__(self) -> int:
        return len(self.fractions)


@lru_cache(maxsize=None)
def bernoulli_numbers(n: int) -> BernoulliTable:
    """Exact ``B_1..B_n`` from the Taylor coefficients of ``(z/2) coth(z/2)``.

    Writing ``(z/2)coth(z/2) = sum c_k z^(2k)``, the identity
    ``[(z/2)coth(z/2)] * [sinh(z/2)/(z/2)] = cosh(z/2)`` gives
    ``c_k = C_k - sum_{j<k} c_j S_(k-j)`` with
    ``C_k = 4^-k/(2k)!`` and ``S_k = 4^-k/(2k+1)!``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    cosh_c = [Fraction(1, 4 ** k * math.factorial(2 * k)) for k in range(n + 1)]
    sinhc_c = [Fraction(1, 4 ** k * math.factorial(2 * k + 1)) for k in range(n + 1)]
    c = [Fraction(1)]
    for k in range(1, n + 1):
        c.append(cosh_c[k] - sum(c[j] * sinhc_c[k - j] for j in range(k)))
    return BernoulliTable(tuple((-1) ** (k - 1) * math.factorial(2 * k) * c[k]
                                for k in range(1, n + 1)))


@dataclass(frozen=True)
class AsymptoticSeries:
    """Truncated asymptotic expansion in the slice of ``z``.

    ``coefficients`` are ``(exponent, a_k)`` pairs for the correction terms
    ``a_k z**exponent``; ``terms`` their evaluated values.
    """

    z: CDNumber
    coefficients: tuple[tuple[int, float], ...]
    dominant: CDNumber
    terms: tuple[CDNumber, ...]
    value: CDNumber
    error_bound: float
    validity_sector: float
    dominant_term: str = "(z - 1/2) Ln z - z + ln(2 pi)/2"
    truncated_early: bool = False


def stirling_series(z: CDNumber, n_terms: int = 5, sector_delta: float = 0.1) -> AsymptoticSeries:
    """Stirling series for ``Ln Gamma(z)`` with optimal-truncation guard."""
    frame = slice_decompose(z)
    arg = math.atan2(frame.radius, frame.real_part)
    if arg > math.pi - sector_delta:
        raise DomainError(f"|Arg z| = {arg:.4f} outside the sector |Arg z| <= pi - {sector_delta}")
    if z.norm() == 0.0:
        raise DomainError("Stirling series needs z != 0")
    table = bernoulli_numbers(max(n_terms, 1))
    lead = cd_mul(z - 0.5, cd_ln(z)) - z + 0.5 * math.log(2 * math.pi)
    inv = cd_inverse(z)
    inv2 = cd_mul(inv, inv)
    power = inv
    coeffs, terms = [], []
    early = False
    for k in range(1, n_terms + 1):
        a = (-1) ** (k - 1) * table[k] / (2 * k * (2 * k - 1))
        term = power * a
        if terms and term.norm() > terms[-1].norm():
            if k == 2:
                raise DomainError("|z| too small: Stirling terms grow from the first correction")
            early = True
            break
        coeffs.append((-(2 * k - 1), a))
        terms.append(term)
        power = cd_mul(power, inv2)
    value = lead
    for t in terms:
        value = value + t
    bound = terms[-1].norm() if terms else float("nan")
    return AsymptoticSeries(z, tuple(coeffs), lead, tuple(terms), value, bound,
                            sector_delta, truncated_early=early)


def ln_gamma_stirling(z: CDNumber, n_terms: int = 5, sector_delta: float = 0.1) -> CDNumber:
    return stirling_series(z, n_terms, sector_delta).value


def lngamma_difference(a: CDNumber, b: CDNumber, z: CDNumber) -> float:
    """``|a - b|`` for two logarithms of Gamma(z), with the slice angle taken mod 2 pi.

    Stirling's series continues ``Ln Gamma`` analytically while ``cd_ln`` is
    principal; the two may differ by ``2 pi k M`` along the slice of ``z``.
    """
    axis = slice_decompose(z).axis
    d = a - b
    along = float(np.dot(d.coords, axis.coords))
    wrapped = math.remainder(along, 2 * math.pi)
    return (d - axis * (along - wrapped)).norm()


def gamma_magnitude_asymptotic(x: float, y: float) -> float:
    """Leading behaviour ``sqrt(2 pi) |y|^(x-1/2) exp(-pi |y|/2)`` of ``|Gamma(x+My)|``."""
    if y == 0:
        raise DomainError("the magnitude asymptotic needs y != 0")
    ay = abs(y)
    return math.sqrt(2 * math.pi) * ay ** (x - 0.5) * math.exp(-math.pi * ay / 2)


# Hankel loop

HANKEL_DELTA = 0.5


def hankel_radius(x: float, y: float, abs_tol: float, minimum: float = 20.0) -> float:
    """Smallest ray length with ``e^-R R^|x| e^(pi|y|) < abs_tol/10``."""
    r = minimum
    while -r + abs(x) * math.log(r) + math.pi * abs(y) >= math.log(abs_tol / 10):
        r += 1.0
    return r


def _hankel_integral(z: CDNumber, exponent: CDNumber, cfg: QuadratureConfig,
                     delta: float, radius: float | None) -> tuple[IntegralResult, CDNumber]:
    """``int exp(zeta + exponent Ln zeta) dzeta`` over the Hankel loop in z's slice."""
    frame = slice_decompose(z)
    axis = frame.axis
    ef = slice_decompose(exponent)
    if radius is None:
        radius = hankel_radius(ef.real_part, frame.radius, cfg.abs_tol)
    contour = hankel_contour(delta, radius, axis)

    def f(zeta, log_zeta):
        return exp_coords(zeta + mul_coords(exponent.coords, log_zeta))

    res = integrate_contour(f, contour, cfg)
    tail = 2.0 * math.exp(-radius + abs(ef.real_part) * math.log(radius) + math.pi * frame.radius)
    return IntegralResult(res.value, res.error_estimate + tail, res.evaluations), axis


def hankel_reciprocal_gamma_result(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                                   delta: float = HANKEL_DELTA,
                                   radius: float | None = None) -> IntegralResult:
    res, axis = _hankel_integral(z, -z, cfg, delta, radius)
    value = cd_mul(res.value, axis.conj()) / (2 * math.pi)
    return IntegralResult(value, res.error_estimate / (2 * math.pi), res.evaluations)


def hankel_reciprocal_gamma(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                            delta: float = HANKEL_DELTA, radius: float | None = None) -> CDNumber:
    """``1/Gamma(z) = (2 pi)^-1 (int_loop e^zeta zeta^-z dzeta) M*``."""
    return hankel_reciprocal_gamma_result(z, cfg, delta, radius).value


def hankel_gamma_result(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                        delta: float = HANKEL_DELTA, radius: float | None = None) -> IntegralResult:
    frame = slice_decompose(z)
    if frame.radius == 0.0 and frame.real_part == round(frame.real_part):
        raise RepresentationError(
            f"sin(pi z) vanishes at z = {frame.real_part:g}; the loop representation degenerates")
    res, axis = _hankel_integral(z, z - 1.0, cfg, delta, radius)
    half_csc = cd_csc(z * math.pi) * 0.5
    value = cd_mul(cd_mul(half_csc, res.value), axis.conj())
    return IntegralResult(value, res.error_estimate * half_csc.norm(), res.evaluations)


def hankel_gamma(z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                 delta: float = HANKEL_DELTA, radius: float | None = None) -> CDNumber:
    """``Gamma(z) = (2 sin pi z)^-1 (int_loop e^zeta zeta^(z-1) dzeta) M*``."""
    return hankel_gamma_result(z, cfg, delta, radius).value


# dispatch

@dataclass(frozen=True)
class MethodValue:
    method: str
    value: CDNumber
    error_estimate: float


def gamma_by(method: GammaMethod | str, z: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
             n: int = 100_000) -> MethodValue:
    """Evaluate Gamma by a named route, with an error estimate."""
    m = GammaMethod(method)
    if m is GammaMethod.SLICE_LANCZOS:
        v = gamma(z)
        return MethodValue(m.value, v, LANCZOS_REL_ERROR * max(1.0, v.norm()))
    if m is GammaMethod.INTEGRAL:
        r = gamma_integral_result(z, cfg)
        return MethodValue(m.value, r.value, r.error_estimate)
    if m is GammaMethod.PHI_PSI_SERIES:
        v, err = gamma_phi_series_result(z, cfg=cfg)
        return MethodValue(m.value, v, err)
    if m in (GammaMethod.LIMIT_FORM, GammaMethod.EULER_PRODUCT):
        fn = gamma_limit if m is GammaMethod.LIMIT_FORM else gamma_euler_product
        v = fn(z, n)
        # leading error term of both forms: Gamma(z) z(z+1)/(2n)
        lead = cd_mul(z, z + 1.0).norm() / (2 * n) * v.norm()
        return MethodValue(m.value, v, lead)
    r = hankel_reciprocal_gamma_result(z, cfg)
    _check_pole(z)
    v = cd_inverse(r.value)
    return MethodValue(m.value, v, r.error_estimate * v.norm() ** 2)


# identities

def verify_identity(kind: str, z: CDNumber, tolerance: float | None = 1e-10) -> IdentityReport:
    """Check recurrence, reflection or duplication at ``z`` via :func:`gamma`."""

    def g(label: str, w: CDNumber) -> CDNumber:
        try:
            return gamma(w)
        except PoleError as exc:
            raise PoleError(f"{label}: {exc}", exc.pole) from None

    if kind == "recurrence":
        lhs = g("Gamma(z+1)", z + 1.0)
        rhs = cd_mul(z, g("Gamma(z)", z))
        notes = "Gamma(z+1) vs z Gamma(z)"
    elif kind == "reflection":
        lhs = cd_mul(g("Gamma(z)", z), g("Gamma(1-z)", 1.0 - z))
        try:
            rhs = cd_csc(z * math.pi) * math.pi
        except PoleError as exc:
            raise PoleError(f"csc(pi z): {exc}", exc.pole) from None
        notes = "Gamma(z) Gamma(1-z) vs pi csc(pi z)"
    elif kind == "duplication":
        lhs = g("Gamma(2z)", z * 2.0) * math.sqrt(math.pi)
        rhs = cd_mul(cd_mul(real_power(2.0, z * 2.0 - 1.0), g("Gamma(z)", z)),
                     g("Gamma(z+1/2)", z + 0.5))
        notes = "sqrt(pi) Gamma(2z) vs 2^(2z-1) Gamma(z) Gamma(z+1/2)"
    else:
        raise ValueError(f"unknown identity {kind!r}")
    return make_report(kind, lhs, rhs, tolerance, notes + " (slice_lanczos)")
