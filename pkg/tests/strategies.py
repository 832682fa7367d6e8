"""Hypothesis strategies for Cayley-Dickson numbers."""

import numpy as np
from hypothesis import strategies as st

from cdgamma.algebra import CDNumber

finite = st.floats(min_value=-10.0, max_value=10.0, allow_nan=False, allow_infinity=False)


def cd_numbers(level: int, elements=finite):
    n = 1 << level
    return st.lists(elements, min_size=n, max_size=n).map(lambda c: CDNumber(np.array(c)))


def unit_axes(level: int):
    n = 1 << level
    comp = st.floats(min_value=-1.0, max_value=1.0, allow_nan=False)
    return (st.lists(comp, min_size=n - 1, max_size=n - 1)
            .filter(lambda c: float(np.linalg.norm(c)) > 1e-3)
            .map(lambda c: CDNumber(np.concatenate([[0.0], np.array(c) / np.linalg.norm(c)]))))


def cd(*coords) -> CDNumber:
    return CDNumber(np.array(coords, dtype=float))
