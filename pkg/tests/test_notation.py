import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdgamma.algebra import CDNumber
from cdgamma.errors import ParseError
from cdgamma.notation import format_cd, parse_cd


def test_example_string():
    z = parse_cd("1.5 - 2e1 + 0.25e7")
    assert z.level == 3
    expected = np.zeros(8)
    expected[[0, 1, 7]] = [1.5, -2.0, 0.25]
    assert np.array_equal(z.coords, expected)


def test_coefficient_is_not_an_exponent():
    assert parse_cd("2e1").coords.tolist() == [0.0, 2.0]


def test_quaternion_aliases():
    assert parse_cd("1 + i - 2j + 0.5k").coords.tolist() == [1.0, 1.0, -2.0, 0.5]


def test_aliases_only_at_level_two():
    with pytest.raises(ParseError):
        parse_cd("1 + i", level=3)


def test_explicit_level_pads():
    assert parse_cd("0.5", level=4).dim == 16


def test_index_too_large_for_level():
    with pytest.raises(ParseError):
        parse_cd("e4", level=2)


@pytest.mark.parametrize("text, pos", [("1 + 2x", 5), ("", 0), ("1 + ", 4), ("e0", 1), ("1 2", 2)])
def test_parse_errors_carry_position(text, pos):
    with pytest.raises(ParseError) as info:
        parse_cd(text)
    assert info.value.position == pos


def test_repeated_terms_accumulate():
    assert parse_cd("e1 + e1 - 0.5").coords.tolist() == [-0.5, 2.0]


coords = st.floats(allow_nan=False, allow_infinity=False, width=64)


@given(st.integers(1, 4).flatmap(lambda v: st.lists(coords, min_size=1 << v, max_size=1 << v)))
def test_format_parse_round_trip_is_exact(c):
    z = CDNumber(np.array(c))
    back = parse_cd(format_cd(z), level=z.level)
    assert np.array_equal(np.abs(back.coords), np.abs(z.coords))
    assert np.array_equal(back.coords, z.coords + 0.0)


def test_format_zero():
    assert format_cd(CDNumber.zero(2)) == "0"
    assert format_cd(parse_cd("-e3")) == "-1e3"
