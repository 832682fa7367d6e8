"""Beta of Cayley-Dickson arguments and the identities that tie it to Gamma.

The integrand of ``B(p, q) = int_0^1 t^(p-1) (1-t)^(q-1) dt`` is multiplied
in the written order.  For non-commuting ``p`` and ``q`` that order matters,
and ``B(p, q) != B(q, p)`` in general.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import CDNumber, OrthoDecomposition, associator, cd_inverse, cd_mul, mul_coords, ortho_decompose
from .campbell_hausdorff import CHConfig, ch_w, is_quaternionic
from .elementary import real_power_coords, same_slice
from .errors import DomainError, LevelMismatchError, PreconditionError
from .gammafn import gamma
from .quadrature import DEFAULT_CONFIG, IntegralResult, QuadratureConfig, integrate_interval
from .report import IdentityReport, make_report

ALT_TOL = 1e-10
CLASSICAL_TOL = 1e-9


@dataclass(frozen=True)
class BetaArgs:
    """Real/pure split of ``p`` and ``q`` and the split of ``q'`` along ``p'``."""

    p: CDNumber
    q: CDNumber
    p0: float
    q0: float
    p_pure: CDNumber
    q_pure: CDNumber
    decomposition: OrthoDecomposition

    @classmethod
    def of(cls, p: CDNumber, q: CDNumber) -> BetaArgs:
        if p.level != q.level:
            raise LevelMismatchError(f"levels differ: {p.level} vs {q.level}")
        pp, qp = p.pure, q.pure
        return cls(p, q, p.re, q.re, pp, qp, ortho_decompose(qp, pp))

    @property
    def q_perp(self) -> CDNumber:
        return self.decomposition.perpendicular

    @property
    def twist(self) -> CDNumber:
        """``conj(q') q'_2 / 2``, the factor that vanishes in the commutative case."""
        return cd_mul(self.q_pure.conj(), self.q_perp) * 0.5

    @property
    def p_conj(self) -> CDNumber:
        """``p0 - p'``."""
        return self.p.conj()

    @property
    def q_conj(self) -> CDNumber:
        """``q0 - q'``."""
        return self.q.conj()


def beta_result(p: CDNumber, q: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    if p.level != q.level:
        raise LevelMismatchError(f"levels differ: {p.level} vs {q.level}")
    if not (p.re > 0 and q.re > 0):
        raise DomainError("the Beta integral needs Re p > 0 and Re q > 0")
    pm1, qm1 = p - 1.0, q - 1.0

    def f(t, one_minus_t):
        return mul_coords(real_power_coords(t, pm1), real_power_coords(one_minus_t, qm1))

    return integrate_interval(f, 0.0, 1.0, cfg, complement=True)


def beta(p: CDNumber, q: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG) -> CDNumber:
    """``int_0^1 t^(p-1) (1-t)^(q-1) dt``, left factor ``t^(p-1)``."""
    return beta_result(p, q, cfg).value


def beta_via_gamma(p: CDNumber, q: CDNumber) -> CDNumber:
    """``Gamma(p) Gamma(q) Gamma(p+q)^-1``; equals Beta only when p, q share a slice."""
    return cd_mul(cd_mul(gamma(p), gamma(q)), cd_inverse(gamma(p + q)))


def is_alternative_triple(elems: list[CDNumber], tol: float = ALT_TOL) -> bool:
    """Left/right alternative laws on every pair drawn from ``elems``."""
    scale = max(1.0, max(e.norm() for e in elems)) ** 3
    for a in elems:
        for b in elems:
            if associator(a, a, b).norm() > tol * scale or associator(a, b, b).norm() > tol * scale:
                return False
    return True


def beta_commutator_check(p: CDNumber, q: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                          placement: str = "right") -> IdentityReport:
    """Compare ``B(p,q) - B(q,p)`` with the four-Beta bracket times ``conj(q') q'_2 / 2``.

    ``placement="left"`` multiplies the twist factor from the left instead,
    for diagnosis.  The report tolerance is ten times the summed quadrature
    error estimates (scaled by the twist factor for the bracket).
    """
    args = BetaArgs.of(p, q)
    if p.level > 3 and not is_alternative_triple([args.p_pure, args.q_pure, args.q_perp]):
        raise PreconditionError("p, q do not pass the octonion-embeddability (alternativity) test")
    b_pq = beta_result(p, q, cfg)
    b_qp = beta_result(q, p, cfg)
    lhs = b_pq.value - b_qp.value
    twist = args.twist
    parts = [b_pq, beta_result(p, args.q_conj, cfg), beta_result(args.p_conj, q, cfg),
             beta_result(args.p_conj, args.q_conj, cfg)]
    bracket = parts[0].value - parts[1].value - parts[2].value + parts[3].value
    if placement == "right":
        rhs = cd_mul(bracket, twist)
    elif placement == "left":
        rhs = cd_mul(twist, bracket)
    else:
        raise ValueError("placement must be 'left' or 'right'")
    combined = (b_pq.error_estimate + b_qp.error_estimate
                + twist.norm() * sum(r.error_estimate for r in parts))
    qn2 = args.q_pure.norm() ** 2
    extras = {
        "combined_quadrature_error": combined,
        "placement": placement,
        "commutative": twist.norm() == 0.0,
        "q_pure_norm_sq": qn2,
    }
    if qn2 > 0:
        # diagnostic: residual if the twist were normalised by |q'|^2
        extras["residual_unit_normalized"] = (lhs - rhs / qn2).norm() / (1.0 + (rhs / qn2).norm())
    return make_report("prop15", lhs, rhs, max(10.0 * combined, 1e-15),
                       "B(p,q) - B(q,p) vs [four-Beta bracket] conj(q') q'_2 / 2", **extras)


def thm17_check(p: CDNumber, q: CDNumber, cfg: QuadratureConfig = DEFAULT_CONFIG,
                ch_cfg: CHConfig = CHConfig()) -> IdentityReport:
    """Evaluate both sides of the Gamma-Beta relation with the CH argument.

    Only the commutative reduction (p, q in one slice, or p real) carries an
    asserted tolerance; otherwise the residual is reported as is.
    """
    if not (p.re > 0 and q.re > 0):
        raise DomainError("thm17_check needs Re p > 0 and Re q > 0")
    if not is_quaternionic(p, q):
        raise PreconditionError("p, q do not generate a quaternionic subalgebra")
    args = BetaArgs.of(p, q)
    lhs = cd_mul(gamma(p), gamma(q))
    g_w = gamma(ch_w(p, q, ch_cfg))
    g_w2 = gamma(ch_w(p, args.q_conj, ch_cfg))
    b_pq = beta(p, q, cfg)
    b_p2q = beta(args.p_conj, q, cfg)
    twist = cd_mul(args.q_pure.conj(), args.q_perp)
    correction = cd_mul(cd_mul(g_w - g_w2, twist), b_pq - b_p2q) * 0.5
    rhs = cd_mul(g_w, b_pq) - correction
    commutative = same_slice(p, q) or p.is_real()
    return make_report("thm17", lhs, rhs, CLASSICAL_TOL if commutative else None,
                       "Gamma(p)Gamma(q) vs Gamma(w)B(p,q) - correction",
                       commutative=commutative, correction_norm=correction.norm())


def thm17_grid(p_real: float = 1.2, q_real: float = 1.5,
               p_imag: np.ndarray | None = None, q_imag: np.ndarray | None = None,
               cfg: QuadratureConfig = DEFAULT_CONFIG
               ) -> list[tuple[CDNumber, CDNumber, IdentityReport]]:
    """Residual reports for ``p = p_real + a e1``, ``q = q_real + b e2`` over a grid of (a, b)."""
    p_imag = np.linspace(0.05, 0.3, 5) if p_imag is None else p_imag
    q_imag = np.linspace(0.05, 0.3, 5) if q_imag is None else q_imag
    out = []
    for a in p_imag:
        for b in q_imag:
            p = CDNumber([p_real, a, 0.0, 0.0])
            q = CDNumber([q_real, 0.0, b, 0.0])
            out.append((p, q, thm17_check(p, q, cfg)))
    return out
