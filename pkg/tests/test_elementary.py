import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdgamma.algebra import CDNumber, cd_mul, random_cd, random_unit_axis
from cdgamma.elementary import (cd_cos, cd_csc, cd_exp, cd_ln, cd_power, cd_sin, exp_coords, real_power,
                                real_power_coords, same_slice, slice_decompose, slice_lift)
from cdgamma.errors import BranchCutError, DomainError, PoleError, PreconditionError, SingularError
from strategies import cd, cd_numbers, unit_axes

small = st.floats(-3.0, 3.0, allow_nan=False)


def test_decompose_recompose(rng):
    z = random_cd(rng, 4)
    f = slice_decompose(z)
    assert f.radius >= 0
    assert abs(f.axis.norm() - 1) < 1e-15 and f.axis.re == 0.0
    assert (f.recompose() - z).norm() < 1e-14


def test_real_input_gets_default_axis():
    f = slice_decompose(CDNumber.real_number(2.0, 3))
    assert f.radius == 0.0 and f.axis == CDNumber.unit(1, 3)


@given(small, small)
def test_level_one_is_complex(x, y):
    z = cd(x, y)
    w = cmath.exp(complex(x, y))
    assert np.allclose(cd_exp(z).coords, [w.real, w.imag], rtol=1e-14, atol=1e-14)


@given(small, small, unit_axes(3))
def test_slice_lift_commutes_with_axis_choice(x, y, axis):
    z = axis * y + x
    w = cmath.sin(complex(x, y))
    assert (cd_sin(z) - CDNumber.from_complex(w, axis)).norm() <= 1e-13 * (1 + abs(w))


@given(cd_numbers(3, st.floats(-2, 2, allow_nan=False)))
def test_ln_inverts_exp_within_principal_strip(z):
    if z.pure.norm() >= math.pi - 1e-6:
        return
    assert (cd_ln(cd_exp(z)) - z).norm() < 1e-12


@given(cd_numbers(4, st.floats(-5, 5, allow_nan=False)))
def test_exp_inverts_ln(z):
    if z.norm() < 1e-6 or (z.pure.norm() < 1e-6 and z.re < 0):
        return
    assert (cd_exp(cd_ln(z)) - z).norm() <= 1e-12 * (1 + z.norm())


def test_exp_sum_rule_holds_only_in_one_slice(rng):
    axis = random_unit_axis(rng, 2)
    a, b = axis * 0.7 + 0.2, axis * -1.1 + 0.4
    assert (cd_exp(a + b) - cd_mul(cd_exp(a), cd_exp(b))).norm() < 1e-14
    u, v = CDNumber.unit(1, 2), CDNumber.unit(2, 2)
    assert (cd_exp(u + v) - cd_mul(cd_exp(u), cd_exp(v))).norm() > 0.1


def test_ln_errors():
    with pytest.raises(SingularError):
        cd_ln(CDNumber.zero(2))
    with pytest.raises(BranchCutError):
        cd_ln(CDNumber.real_number(-2.0, 2))


def test_ln_just_off_the_cut():
    z = cd(-1.0, 1e-6, 0, 0)
    assert cd_ln(z).coords[1] == pytest.approx(math.pi - 1e-6, abs=1e-12)


def test_sin_cos_pythagoras(rng):
    z = random_cd(rng, 3)
    s, c = cd_sin(z), cd_cos(z)
    one = cd_mul(s, s) + cd_mul(c, c)
    assert (one - CDNumber.one(3)).norm() < 1e-12 * (1 + s.norm() ** 2)


def test_csc_pole_and_value():
    with pytest.raises(PoleError) as info:
        cd_csc(CDNumber.real_number(-3.0, 2))
    assert info.value.pole == -3
    assert cd_csc(CDNumber.real_number(0.5, 2)).re == pytest.approx(1.0 / math.sin(0.5))


def test_real_power():
    z = cd(0.5, 0.0, 2.0, 0.0)
    t = 3.0
    assert (real_power(t, z) - cd_exp(z * math.log(t))).norm() < 1e-15
    with pytest.raises(DomainError):
        real_power(0.0, z)


def test_cd_power_needs_a_common_slice():
    z = cd(1.0, 1.0, 0, 0)
    w = cd(0.5, 2.0, 0, 0)
    expected = CDNumber.from_complex(complex(1, 1) ** complex(0.5, 2.0), CDNumber.unit(1, 2))
    assert (cd_power(z, w) - expected).norm() < 1e-14
    with pytest.raises(PreconditionError):
        cd_power(z, cd(0.5, 0.0, 1.0, 0))


def test_same_slice():
    assert same_slice(cd(1, 1, 1, 0), cd(5, -2, -2, 0))
    assert not same_slice(cd(1, 1, 1, 0), cd(5, -2, -2.001, 0))
    assert same_slice(cd(3, 0, 0, 0), cd(5, -2, -2, 0))


def test_batched_forms_match_scalar(rng):
    z = random_cd(rng, 3)
    zs = rng.normal(size=(5, 8))
    zs[0] = 0.0
    for row, val in zip(zs, exp_coords(zs)):
        assert np.allclose(cd_exp(CDNumber(row)).coords, val, atol=1e-14)
    t = np.array([1e-300, 0.3, 1.0, 7.0])
    for tk, val in zip(t, real_power_coords(t, z)):
        assert np.allclose(real_power(tk, z).coords, val, rtol=1e-13, atol=1e-300)


def test_slice_lift_forced_axis():
    axis = CDNumber.unit(3, 2)
    out = slice_lift(lambda w: w * 1j, CDNumber.real_number(2.0, 2), axis=axis)
    assert out.coords.tolist() == [0.0, 0.0, 0.0, 2.0]
