"""Campbell-Hausdorff series ``w(u, v) = ln(e^u e^v)`` in nested commutators.

The double sum is Dynkin's form: for total degree ``n = r + s`` and ``m``
blocks,

    w = sum_n 1/n sum_m (-1)^(m-1)/m
          [ sum* prod_{i<m} (ad u)^r_i (ad v)^s_i / (r_i! s_i!) (ad u)^r_m / r_m! (v)
          + sum** prod_{i<m} (ad u)^r_i (ad v)^s_i / (r_i! s_i!) (u) ]

with every leading block of positive degree.  The ``ad`` maps are linear,
so they are held as matrices and the sum over block sequences of a given
degree is accumulated by dynamic programming over (blocks, degree) rather
than by enumerating sequences one at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .algebra import CDNumber, associator, cd_mul, mul_coords
from .elementary import cd_exp, cd_ln, same_slice
from .errors import ConvergenceRiskError, PreconditionError

ASSOC_TOL = 1e-10


@dataclass(frozen=True)
class CHConfig:
    truncation_order: int = 8
    norm_guard: float = math.log(2.0)

    def __post_init__(self):
        if self.truncation_order < 1:
            raise ValueError("truncation_order must be >= 1")


def ad_matrix(u: CDNumber) -> np.ndarray:
    """Matrix of ``x -> ux - xu`` in the coordinate basis."""
    eye = np.eye(u.dim)
    left = mul_coords(np.broadcast_to(u.coords, eye.shape), eye)
    right = mul_coords(eye, np.broadcast_to(u.coords, eye.shape))
    return (left - right).T


def is_quaternionic(u: CDNumber, v: CDNumber, tol: float = ASSOC_TOL) -> bool:
    """Numerical test that ``u`` and ``v`` generate an associative subalgebra.

    Checks every associator of the generators and their product.
    """
    if u.level <= 2:
        return True
    gens = [u.pure, v.pure]
    gens.append(cd_mul(gens[0], gens[1]))
    scale = max(1.0, max(g.norm() for g in gens)) ** 3
    for a in gens:
        for b in gens:
            for c in gens:
                if associator(a, b, c).norm() > tol * scale:
                    return False
    return True


def _series(u: np.ndarray, v: np.ndarray, ad_u: np.ndarray, ad_v: np.ndarray,
            order: int) -> np.ndarray:
    dim = u.size
    eye = np.eye(dim)
    pow_u = [eye]
    pow_v = [eye]
    for _ in range(order):
        pow_u.append(ad_u @ pow_u[-1])
        pow_v.append(ad_v @ pow_v[-1])
    fact = [math.factorial(k) for k in range(order + 1)]
    # block[d] = sum_{r+s=d} (ad u)^r (ad v)^s / (r! s!)
    block = [None] + [sum(pow_u[r] @ pow_v[d - r] / (fact[r] * fact[d - r]) for r in range(d + 1))
                      for d in range(1, order + 1)]
    # seq[m][D]: sum over m leading blocks of total degree D
    zero = np.zeros((dim, dim))
    seq = [[eye] + [zero] * order]
    for m in range(1, order):
        row = [zero]
        for total in range(1, order + 1):
            acc = zero
            for d in range(1, total + 1):
                if seq[m - 1][total - d] is not zero:
                    acc = acc + block[d] @ seq[m - 1][total - d]
            row.append(acc)
        seq.append(row)
    tails = [pow_u[r] @ v / fact[r] for r in range(order)]
    w = np.zeros(dim)
    for n in range(1, order + 1):
        deg_n = np.zeros(dim)
        for m in range(1, n + 1):
            lead = seq[m - 1]
            term = lead[n - 1] @ u
            for r in range(n):
                term = term + lead[n - 1 - r] @ tails[r]
            deg_n += (-1) ** (m - 1) / m * term
        w += deg_n / n
    return w


def ch_w(u: CDNumber, v: CDNumber, cfg: CHConfig = CHConfig()) -> CDNumber:
    """Truncated Campbell-Hausdorff series for ``ln(e^u e^v)``.

    Real parts are central, so they are added directly and only the pure
    parts enter the series (and the norm guard).
    """
    if same_slice(u, v):
        return u + v
    if not is_quaternionic(u, v):
        raise PreconditionError("Campbell-Hausdorff series needs an associative (quaternionic) pair")
    up, vp = u.pure, v.pure
    size = up.norm() + vp.norm()
    if size >= cfg.norm_guard:
        raise ConvergenceRiskError(
            f"|u'| + |v'| = {size:.4g} exceeds the norm guard {cfg.norm_guard:.4g}")
    w = _series(up.coords, vp.coords, ad_matrix(up), ad_matrix(vp), cfg.truncation_order)
    w[0] += u.re + v.re
    return CDNumber(w)


def ch_oracle(u: CDNumber, v: CDNumber) -> CDNumber:
    """Direct group logarithm ``Ln(e^u e^v)``."""
    return cd_ln(cd_mul(cd_exp(u), cd_exp(v)))
