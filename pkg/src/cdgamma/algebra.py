"""Cayley-Dickson numbers of arbitrary doubling level.

A level-``v`` number is stored as ``2**v`` real coordinates; ``coords[0]`` is
the real part and ``coords[k]`` the coefficient of the basis unit ``e_k``.
Multiplication follows the doubling rule

    (a1, a2)(b1, b2) = (a1 b1 - conj(b2) a2,  b2 a1 + a2 conj(b1))

applied recursively down to the reals.  Since every product of two basis
units is again a signed basis unit, the recursion is evaluated once per level
to build a signed structure matrix, and all later products (single or
batched) are a single matrix product against it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from numbers import Real

import numpy as np

from .errors import LevelMismatchError, PreconditionError, SingularError

MAX_LEVEL = 8
EPS_DEGENERATE = 1e-12
INVERSE_CHECK_TOL = 1e-10


def _conj_array(a: np.ndarray) -> np.ndarray:
    out = -a
    out[..., 0] = a[..., 0]
    return out


def mul_recursive(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Multiply two coordinate vectors directly by the doubling recursion.

    This is the definition of the product; :func:`cd_mul` uses a table built
    from it.  Kept public so tests can compare the two.
    """
    n = a.shape[-1]
    if n == 1:
        return a * b
    h = n // 2
    a1, a2 = a[..., :h], a[..., h:]
    b1, b2 = b[..., :h], b[..., h:]
    left = mul_recursive(a1, b1) - mul_recursive(_conj_array(b2), a2)
    right = mul_recursive(b2, a1) + mul_recursive(a2, _conj_array(b1))
    return np.concatenate([left, right], axis=-1)


@lru_cache(maxsize=None)
def multiplication_table(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(index, sign)`` with ``e_i e_j = sign[i, j] * e_index[i, j]``."""
    if not 0 <= level <= MAX_LEVEL:
        raise ValueError(f"level must be in [0, {MAX_LEVEL}], got {level}")
    n = 1 << level
    eye = np.eye(n)
    index = np.empty((n, n), dtype=np.int64)
    sign = np.empty((n, n), dtype=np.float64)
    for i in range(n):
        prods = mul_recursive(np.broadcast_to(eye[i], (n, n)), eye)
        k = np.argmax(np.abs(prods), axis=1)
        index[i] = k
        sign[i] = prods[np.arange(n), k]
    index.setflags(write=False)
    sign.setflags(write=False)
    return index, sign


@lru_cache(maxsize=None)
def _structure_matrix(level: int) -> np.ndarray:
    index, sign = multiplication_table(level)
    n = 1 << level
    mat = np.zeros((n * n, n))
    mat[np.arange(n * n), index.ravel()] = sign.ravel()
    mat.setflags(write=False)
    return mat


def _level_of(n: int) -> int:
    if n < 2 or n & (n - 1):
        raise ValueError(f"coordinate count must be a power of two >= 2, got {n}")
    return n.bit_length() - 1


def mul_coords(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of coordinate arrays; broadcasts over leading axes."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = a.shape[-1]
    if b.shape[-1] != n:
        raise LevelMismatchError(f"dimension mismatch: {n} vs {b.shape[-1]}")
    mat = _structure_matrix(_level_of(n))
    outer = a[..., :, None] * b[..., None, :]
    return outer.reshape(*outer.shape[:-2], n * n) @ mat


def conj_coords(a: np.ndarray) -> np.ndarray:
    return _conj_array(np.asarray(a, dtype=np.float64))


def prod_coords(factors: np.ndarray) -> np.ndarray:
    """Product of a stack of factors (axis 0) by pairwise reduction.

    The bracketing differs from a left fold, which is only harmless when the
    factors generate an associative subalgebra (e.g. they share one slice).
    """
    f = np.asarray(factors, dtype=np.float64)
    if f.shape[0] == 0:
        out = np.zeros(f.shape[1:])
        out[..., 0] = 1.0
        return out
    while f.shape[0] > 1:
        if f.shape[0] % 2:
            tail = f[-1:]
            f = np.concatenate([mul_coords(f[0:-1:2], f[1::2]), tail])
        else:
            f = mul_coords(f[0::2], f[1::2])
    return f[0]


class CDNumber:
    """Immutable Cayley-Dickson number.

    Parameters
    ----------
    coords : array_like
        ``2**level`` real coordinates.
    level : int, optional
        Doubling level; inferred from ``len(coords)`` when omitted.
    """

    __slots__ = ("level", "coords")

    def __init__(self, coords, level: int | None = None):
        arr = np.array(coords, dtype=np.float64).ravel()
        inferred = _level_of(arr.size)
        if level is not None and level != inferred:
            raise ValueError(f"level {level} needs {1 << level} coords, got {arr.size}")
        arr.setflags(write=False)
        object.__setattr__(self, "level", inferred)
        object.__setattr__(self, "coords", arr)

    def __setattr__(self, name, value):
        raise AttributeError("CDNumber is immutable")

    # constructors

    @classmethod
    def real_number(cls, x: float, level: int) -> CDNumber:
        c = np.zeros(1 << level)
        c[0] = x
        return cls(c)

    @classmethod
    def unit(cls, index: int, level: int) -> CDNumber:
        n = 1 << level
        if not 0 <= index < n:
            raise ValueError(f"basis index {index} out of range for level {level}")
        c = np.zeros(n)
        c[index] = 1.0
        return cls(c)

    @classmethod
    def zero(cls, level: int) -> CDNumber:
        return cls(np.zeros(1 << level))

    @classmethod
    def one(cls, level: int) -> CDNumber:
        return cls.real_number(1.0, level)

    @classmethod
    def from_complex(cls, w: complex, axis: CDNumber) -> CDNumber:
        """Read ``u + iv`` as ``u + v*axis`` in the slice of ``axis``."""
        c = axis.coords * w.imag
        c[0] += w.real
        return cls(c)

    # accessors

    @property
    def dim(self) -> int:
        return self.coords.size

    @property
    def re(self) -> float:
        return float(self.coords[0])

    @property
    def pure(self) -> CDNumber:
        c = self.coords.copy()
        c[0] = 0.0
        return CDNumber(c)

    def conj(self) -> CDNumber:
        return CDNumber(_conj_array(self.coords))

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def is_real(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.coords[1:]) <= tol))

    def embed(self, level: int) -> CDNumber:
        """Zero-pad into a higher level (the subalgebra chain A_v in A_w)."""
        if level < self.level:
            raise ValueError("cannot embed into a lower level")
        c = np.zeros(1 << level)
        c[: self.dim] = self.coords
        return CDNumber(c)

    # arithmetic

    def _coerce(self, other) -> CDNumber | None:
        if isinstance(other, CDNumber):
            if other.level != self.level:
                raise LevelMismatchError(f"levels differ: {self.level} vs {other.level}")
            return other
        if isinstance(other, Real):
            return CDNumber.real_number(float(other), self.level)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDNumber(self.coords + o.coords)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDNumber(self.coords - o.coords)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CDNumber(o.coords - self.coords)

    def __neg__(self):
        return CDNumber(-self.coords)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, Real):
            return CDNumber(self.coords * float(other))
        if isinstance(other, CDNumber):
            return cd_mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return CDNumber(float(other) * self.coords)
        return NotImplemented

    def __truediv__(self, other):
        # only real divisors: a/b is ambiguous without commutativity
        if isinstance(other, Real):
            return CDNumber(self.coords / float(other))
        return NotImplemented

    def __abs__(self) -> float:
        return self.norm()

    def __eq__(self, other):
        if not isinstance(other, CDNumber):
            return NotImplemented
        return self.level == other.level and bool(np.array_equal(self.coords, other.coords))

    def __hash__(self):
        return hash((self.level, self.coords.tobytes()))

    def close(self, other: CDNumber, tol: float = 1e-12) -> bool:
        return (self - other).norm() <= tol

    def __repr__(self) -> str:
        from .notation import format_cd

        return f"CDNumber({format_cd(self)!r}, level={self.level})"


def _check_levels(a: CDNumber, b: CDNumber) -> None:
    if a.level != b.level:
        raise LevelMismatchError(f"levels differ: {a.level} vs {b.level}")


def cd_add(a: CDNumber, b: CDNumber) -> CDNumber:
    _check_levels(a, b)
    return CDNumber(a.coords + b.coords)


def cd_mul(a: CDNumber, b: CDNumber) -> CDNumber:
    _check_levels(a, b)
    return CDNumber(mul_coords(a.coords, b.coords))


def cd_conj(z: CDNumber) -> CDNumber:
    return z.conj()


def cd_inverse(z: CDNumber, tol: float = INVERSE_CHECK_TOL) -> CDNumber:
    """Two-sided inverse ``conj(z)/|z|^2``, post-checked above the octonions."""
    n2 = float(np.dot(z.coords, z.coords))
    if n2 == 0.0:
        raise SingularError("cannot invert zero")
    inv = CDNumber(_conj_array(z.coords) / n2)
    if z.level >= 4:
        one = CDNumber.one(z.level)
        if (cd_mul(z, inv) - one).norm() > tol or (cd_mul(inv, z) - one).norm() > tol:
            raise SingularError("inverse check failed (zero-divisor-adjacent element)")
    return inv


def inner(a: CDNumber, b: CDNumber) -> float:
    """Scalar product ``Re(a conj(b))``, i.e. the Euclidean dot product."""
    _check_levels(a, b)
    return float(np.dot(a.coords, b.coords))


def commutator(a: CDNumber, b: CDNumber) -> CDNumber:
    return cd_mul(a, b) - cd_mul(b, a)


def associator(a: CDNumber, b: CDNumber, c: CDNumber) -> CDNumber:
    return cd_mul(cd_mul(a, b), c) - cd_mul(a, cd_mul(b, c))


def cd_prod(factors: list[CDNumber]) -> CDNumber:
    """Product of factors sharing a slice (pairwise bracketing)."""
    if not factors:
        raise ValueError("empty product needs a level")
    level = factors[0].level
    for f in factors:
        _check_levels(factors[0], f)
    stack = np.stack([f.coords for f in factors])
    return CDNumber(prod_coords(stack), level)


@dataclass(frozen=True)
class OrthoDecomposition:
    """Split of ``q'`` into parts parallel and perpendicular to ``p'``."""

    parallel: CDNumber
    perpendicular: CDNumber
    reference: CDNumber


def ortho_decompose(q_prime: CDNumber, p_prime: CDNumber,
                    eps: float = EPS_DEGENERATE) -> OrthoDecomposition:
    _check_levels(q_prime, p_prime)
    if q_prime.coords[0] != 0.0 or p_prime.coords[0] != 0.0:
        raise PreconditionError("ortho_decompose expects pure imaginary inputs")
    pp = inner(p_prime, p_prime)
    if np.sqrt(pp) < eps:
        return OrthoDecomposition(CDNumber.zero(q_prime.level), q_prime, p_prime)
    par = p_prime * (inner(q_prime, p_prime) / pp)
    perp = q_prime - par
    return OrthoDecomposition(par, perp, p_prime)


def pure_unit(z: CDNumber, tol: float = 1e-12) -> CDNumber:
    """Validate that ``z`` is a unit pure imaginary element and return it."""
    if abs(z.coords[0]) > tol or abs(z.norm() - 1.0) > tol:
        raise PreconditionError("expected a unit pure imaginary element")
    return z


def random_cd(rng: np.random.Generator, level: int, scale: float = 1.0) -> CDNumber:
    return CDNumber(rng.normal(scale=scale, size=1 << level))


def random_unit_axis(rng: np.random.Generator, level: int) -> CDNumber:
    c = rng.normal(size=1 << level)
    c[0] = 0.0
    return CDNumber(c / np.linalg.norm(c))


def find_zero_divisor(level: int = 4) -> tuple[CDNumber, CDNumber] | None:
    """Exhaustive search over ``(e_i ± e_j)(e_k ± e_l)`` for a zero product."""
    n = 1 << level
    cands = []
    for i in range(1, n):
        for j in range(i + 1, n):
            for s in (1.0, -1.0):
                c = np.zeros(n)
                c[i], c[j] = 1.0, s
                cands.append(c)
    cands = np.array(cands)
    for a in cands:
        prods = mul_coords(np.broadcast_to(a, cands.shape), cands)
        hit = np.flatnonzero(np.all(prods == 0.0, axis=1))
        if hit.size:
            return CDNumber(a), CDNumber(cands[hit[0]])
    return None
