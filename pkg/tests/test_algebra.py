import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdgamma.algebra import (CDNumber, associator, cd_add, cd_conj, cd_inverse, cd_mul, cd_prod,
                             commutator, find_zero_divisor, inner, mul_coords, mul_recursive,
                             multiplication_table, ortho_decompose, random_cd)
from cdgamma.errors import LevelMismatchError, PreconditionError, SingularError
from strategies import cd, cd_numbers

# Quaternion products e_r e_c written out by hand: e1 e2 = e3, e2 e3 = e1,
# e3 e1 = e2, every e_k squares to -1.  Entries are (index, sign).
QUATERNION_TABLE = [
    [(0, 1), (1, 1), (2, 1), (3, 1)],
    [(1, 1), (0, -1), (3, 1), (2, -1)],
    [(2, 1), (3, -1), (0, -1), (1, 1)],
    [(3, 1), (2, 1), (1, -1), (0, -1)],
]


def basis(i, level):
    return CDNumber.unit(i, level)


@pytest.mark.parametrize("r", range(4))
@pytest.mark.parametrize("c", range(4))
def test_quaternion_table_matches_hand_derivation(r, c):
    idx, sign = QUATERNION_TABLE[r][c]
    prod = cd_mul(basis(r, 2), basis(c, 2))
    expected = np.zeros(4)
    expected[idx] = sign
    assert np.array_equal(prod.coords, expected)


def test_multiplication_table_agrees_with_recursive_rule():
    for level in range(1, 6):
        index, sign = multiplication_table(level)
        n = 1 << level
        for i in range(n):
            for j in range(n):
                direct = mul_recursive(np.eye(n)[i], np.eye(n)[j])
                k = int(np.flatnonzero(direct)[0])
                assert (index[i, j], sign[i, j]) == (k, direct[k])


def test_complex_level_is_complex_multiplication():
    a, b = 1.5 - 2j, -0.25 + 3j
    p = cd_mul(cd(a.real, a.imag), cd(b.real, b.imag))
    assert p.coords.tolist() == [(a * b).real, (a * b).imag]


def test_octonions_are_not_associative():
    e1, e2, e4 = basis(1, 3), basis(2, 3), basis(4, 3)
    assert associator(e1, e2, e4).norm() == pytest.approx(2.0)


def test_quaternions_are_not_commutative():
    assert commutator(basis(1, 2), basis(2, 2)).coords.tolist() == [0, 0, 0, 2]


@given(cd_numbers(3), cd_numbers(3))
def test_octonion_norm_is_multiplicative(a, b):
    assert cd_mul(a, b).norm() == pytest.approx(a.norm() * b.norm(), rel=1e-12, abs=1e-12)


@given(cd_numbers(3), cd_numbers(3))
def test_octonions_are_alternative(a, b):
    scale = (1 + a.norm()) ** 2 * (1 + b.norm())
    assert associator(a, a, b).norm() <= 1e-12 * scale
    assert associator(b, a, a).norm() <= 1e-12 * scale


@given(cd_numbers(3), cd_numbers(3), cd_numbers(3))
def test_octonion_moufang_identity(a, b, c):
    # (ab)(ca) = a((bc)a)
    lhs = cd_mul(cd_mul(a, b), cd_mul(c, a))
    rhs = cd_mul(a, cd_mul(cd_mul(b, c), a))
    scale = (1 + a.norm()) ** 2 * (1 + b.norm()) * (1 + c.norm())
    assert (lhs - rhs).norm() <= 1e-12 * scale


@pytest.mark.parametrize("level", range(1, 7))
def test_power_associativity(level, rng):
    for _ in range(20):
        z = random_cd(rng, level)
        z2 = cd_mul(z, z)
        assert (cd_mul(z2, z) - cd_mul(z, z2)).norm() <= 1e-12 * (1 + z.norm()) ** 3


@given(cd_numbers(4), cd_numbers(4))
def test_conjugation_reverses_products(a, b):
    lhs = cd_conj(cd_mul(a, b))
    rhs = cd_mul(cd_conj(b), cd_conj(a))
    assert (lhs - rhs).norm() <= 1e-12 * (1 + a.norm()) * (1 + b.norm())


@given(cd_numbers(5))
def test_z_conj_z_is_norm_squared(z):
    p = cd_mul(z, z.conj())
    assert p.coords[0] == pytest.approx(z.norm() ** 2, rel=1e-12, abs=1e-12)
    assert np.all(np.abs(p.coords[1:]) <= 1e-12 * (1 + z.norm()) ** 2)


def test_sedenion_zero_divisor():
    pair = find_zero_divisor(4)
    assert pair is not None
    a, b = pair
    assert a.norm() > 0 and b.norm() > 0
    assert cd_mul(a, b).norm() == 0.0


def test_no_zero_divisor_of_that_shape_in_octonions():
    assert find_zero_divisor(3) is None


@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_inverse_is_two_sided(level, rng):
    z = random_cd(rng, level)
    inv = cd_inverse(z)
    one = CDNumber.one(level)
    assert (cd_mul(z, inv) - one).norm() < 1e-12
    assert (cd_mul(inv, z) - one).norm() < 1e-12


def test_inverse_of_zero_is_singular():
    with pytest.raises(SingularError):
        cd_inverse(CDNumber.zero(2))


def test_level_mismatch_is_rejected():
    with pytest.raises(LevelMismatchError):
        cd_add(basis(1, 2), basis(1, 3))
    with pytest.raises(LevelMismatchError):
        cd_mul(basis(1, 2), basis(1, 3))


def test_embed_is_a_subalgebra_map(rng):
    a, b = random_cd(rng, 2), random_cd(rng, 2)
    assert np.allclose(cd_mul(a, b).embed(4).coords, cd_mul(a.embed(4), b.embed(4)).coords,
                       atol=1e-14)


def test_inner_is_re_a_conj_b(rng):
    a, b = random_cd(rng, 3), random_cd(rng, 3)
    assert inner(a, b) == pytest.approx(cd_mul(a, b.conj()).re, abs=1e-13)


def test_ortho_decompose(rng):
    p, q = random_cd(rng, 3).pure, random_cd(rng, 3).pure
    d = ortho_decompose(q, p)
    assert (d.parallel + d.perpendicular - q).norm() < 1e-14
    assert abs(inner(d.perpendicular, p)) < 1e-13
    # parallel part is a real multiple of p
    assert (d.parallel - p * (inner(d.parallel, p) / inner(p, p))).norm() < 1e-14


def test_ortho_decompose_degenerate_reference():
    q = cd(0, 1, 2, 3)
    d = ortho_decompose(q, CDNumber.zero(2))
    assert d.parallel.norm() == 0.0
    assert d.perpendicular == q


def test_ortho_decompose_requires_pure_inputs():
    with pytest.raises(PreconditionError):
        ortho_decompose(cd(1, 1, 0, 0), cd(0, 1, 0, 0))


def test_numbers_are_immutable():
    z = cd(1, 2, 3, 4)
    with pytest.raises(AttributeError):
        z.level = 3
    with pytest.raises(ValueError):
        z.coords[0] = 5.0


def test_batched_multiplication_matches_single(rng):
    a = rng.normal(size=(7, 8))
    b = rng.normal(size=(7, 8))
    batched = mul_coords(a, b)
    for k in range(7):
        assert np.allclose(batched[k], mul_recursive(a[k], b[k]), atol=1e-14)


def test_tree_product_matches_sequential_in_one_slice(rng):
    axis = random_cd(rng, 3).pure
    factors = [axis * t + 1.0 for t in np.linspace(0.1, 1.0, 9)]
    seq = factors[0]
    for f in factors[1:]:
        seq = cd_mul(seq, f)
    assert (cd_prod(factors) - seq).norm() < 1e-13 * seq.norm()


@given(st.floats(-5, 5, allow_nan=False), cd_numbers(2))
def test_real_scalars_are_central(x, z):
    r = CDNumber.real_number(x, 2)
    assert cd_mul(r, z) == cd_mul(z, r)
