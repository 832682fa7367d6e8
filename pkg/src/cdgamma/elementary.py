"""Slice decomposition and elementary functions on Cayley-Dickson numbers.

Every number lies in at least one plane ``R + M R`` spanned by 1 and a unit
pure imaginary ``M``; that plane is a copy of the complex numbers.  A
function with real Taylor coefficients is evaluated by reading
``z = x + r M`` as ``x + i r``, applying the complex function, and reading
the result ``u + i v`` back as ``u + v M`` ("slice-lift").
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .algebra import CDNumber, cd_mul
from .errors import BranchCutError, DomainError, PoleError, PreconditionError, SingularError

EPS_CUT = 1e-12
COPLANAR_TOL = 1e-12


@dataclass(frozen=True)
class SliceFrame:
    """``z = real_part + radius * axis`` with ``axis`` a unit pure imaginary."""

    real_part: float
    radius: float
    axis: CDNumber

    def recompose(self) -> CDNumber:
        c = self.axis.coords * self.radius
        c[0] += self.real_part
        return CDNumber(c)

    def as_complex(self) -> complex:
        return complex(self.real_part, self.radius)

    def lift(self, w: complex) -> CDNumber:
        return CDNumber.from_complex(w, self.axis)


@dataclass(frozen=True)
class BranchPolicy:
    """Principal branch; the cut runs along the negative reals of each slice."""

    cut_angle: float = math.pi


PRINCIPAL = BranchPolicy()


def default_axis(level: int) -> CDNumber:
    return CDNumber.unit(1, level)


def slice_decompose(z: CDNumber) -> SliceFrame:
    pure = z.coords.copy()
    pure[0] = 0.0
    r = float(np.linalg.norm(pure))
    if r == 0.0:
        return SliceFrame(z.re, 0.0, default_axis(z.level))
    return SliceFrame(z.re, r, CDNumber(pure / r))


def slice_lift(f: Callable[[complex], complex], z: CDNumber,
               axis: CDNumber | None = None) -> CDNumber:
    """Apply a real-coefficient complex function to ``z`` slice-wise.

    ``axis`` forces the slice (useful when ``z`` is real and the caller wants
    the result expressed in a particular plane).
    """
    frame = slice_decompose(z)
    if axis is not None and frame.radius == 0.0:
        frame = SliceFrame(frame.real_part, 0.0, axis)
    return frame.lift(f(frame.as_complex()))


def same_slice(a: CDNumber, b: CDNumber, tol: float = COPLANAR_TOL) -> bool:
    """True when the pure parts are parallel (or either one vanishes)."""
    pa = a.coords[1:]
    pb = b.coords[1:]
    na = float(np.dot(pa, pa))
    nb = float(np.dot(pb, pb))
    if na == 0.0 or nb == 0.0:
        return True
    # sine of the angle between the pure parts, via the rejection of pb from pa
    perp = pb - (float(np.dot(pa, pb)) / na) * pa
    return float(np.linalg.norm(perp)) <= tol * math.sqrt(nb)


def cd_exp(z: CDNumber) -> CDNumber:
    f = slice_decompose(z)
    ex = math.exp(f.real_part)
    c = f.axis.coords * (ex * math.sin(f.radius))
    c[0] = ex * math.cos(f.radius)
    return CDNumber(c)


def cd_ln(z: CDNumber) -> CDNumber:
    """Principal logarithm ``ln|z| + M atan2(r, x)``."""
    f = slice_decompose(z)
    if f.real_part == 0.0 and f.radius == 0.0:
        raise SingularError("logarithm of zero")
    theta = math.atan2(f.radius, f.real_part)
    if math.pi - theta < EPS_CUT:
        raise BranchCutError("argument on the negative real axis; principal Ln is ambiguous")
    return f.lift(complex(math.log(math.hypot(f.real_part, f.radius)), theta))


def real_power(t: float, z: CDNumber) -> CDNumber:
    """``t**z = exp(z ln t)`` for a positive real base."""
    if not t > 0:
        raise DomainError(f"real_power needs t > 0, got {t}")
    lt = math.log(t)
    return cd_exp(z * lt)


def cd_power(z: CDNumber, w: CDNumber) -> CDNumber:
    """``exp(w Ln z)`` for ``z``, ``w`` in a common slice."""
    if not same_slice(z, w):
        raise PreconditionError("cd_power needs z and w in a common slice plane")
    return cd_exp(cd_mul(w, cd_ln(z)))


def cd_sin(z: CDNumber) -> CDNumber:
    return slice_lift(cmath.sin, z)


def cd_cos(z: CDNumber) -> CDNumber:
    return slice_lift(cmath.cos, z)


def cd_csc(z: CDNumber) -> CDNumber:
    f = slice_decompose(z)
    if f.radius == 0.0 and abs(f.real_part - round(f.real_part)) < 1e-12:
        raise PoleError(f"csc has a pole at {round(f.real_part)}", int(round(f.real_part)))
    return f.lift(1.0 / cmath.sin(f.as_complex()))


# Batched forms on coordinate arrays of shape (..., 2**v).  Used by the
# quadrature integrands, where thousands of nodes share one exponent.

def exp_coords(z: np.ndarray) -> np.ndarray:
    z = np.asarray(z, dtype=np.float64)
    x = z[..., 0]
    r = np.linalg.norm(z[..., 1:], axis=-1)
    out = np.empty_like(z)
    ex = np.exp(x)
    out[..., 0] = ex * np.cos(r)
    # sin(r)/r with the removable singularity at 0
    out[..., 1:] = (ex * np.sinc(r / np.pi))[..., None] * z[..., 1:]
    return out


def real_power_coords(t: np.ndarray, z: CDNumber) -> np.ndarray:
    """``t**z`` for an array of positive reals ``t``; returns shape (N, 2**v)."""
    lt = np.log(np.asarray(t, dtype=np.float64))
    f = slice_decompose(z)
    mag = np.exp(f.real_part * lt)
    ang = f.radius * lt
    out = np.outer(mag * np.sin(ang), f.axis.coords)
    out[:, 0] = mag * np.cos(ang)
    return out
