"""Result records for identity checks."""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import CDNumber


def normalized_residual(lhs: CDNumber, rhs: CDNumber) -> float:
    """``|lhs - rhs| / (1 + |rhs|)``."""
    return (lhs - rhs).norm() / (1.0 + rhs.norm())


@dataclass(frozen=True)
class IdentityReport:
    name: str
    lhs: CDNumber
    rhs: CDNumber
    residual: float
    tolerance: float | None = None
    method_notes: str = ""
    extras: dict = field(default_factory=dict)

    @property
    def asserted(self) -> bool:
        return self.tolerance is not None

    @property
    def passed(self) -> bool | None:
        if self.tolerance is None:
            return None
        return self.residual <= self.tolerance


def make_report(name: str, lhs: CDNumber, rhs: CDNumber, tolerance: float | None = None,
                notes: str = "", **extras) -> IdentityReport:
    return IdentityReport(name, lhs, rhs, normalized_residual(lhs, rhs), tolerance, notes, extras)
