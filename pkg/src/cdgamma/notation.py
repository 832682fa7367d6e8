"""Text form of Cayley-Dickson numbers.

Grammar::

    number := term (('+' | '-') term)*
    term   := real | real? 'e' index | real? ('i' | 'j' | 'k')

``2e1`` means two times ``e_1`` (there is no exponent notation).  The aliases
``i, j, k`` stand for ``e1, e2, e3`` and are only accepted at level 2.
"""

from __future__ import annotations

import re

import numpy as np

from .algebra import CDNumber
from .errors import ParseError

_ALIASES = {"i": 1, "j": 2, "k": 3}
_TERM = re.compile(r"(?P<coef>\d+(?:\.\d*)?|\.\d+)?(?:(?P<e>e)(?P<idx>\d+)|(?P<alias>[ijk]))?")


def parse_cd(text: str, level: int | None = None) -> CDNumber:
    """Parse ``text``; ``level`` defaults to the smallest one that fits."""
    terms: list[tuple[int, float]] = []
    used_alias = False
    pos = 0
    n = len(text)

    def skip_ws(p: int) -> int:
        while p < n and text[p].isspace():
            p += 1
        return p

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty number", text, pos)
    first = True
    while pos < n:
        sign = 1.0
        if text[pos] in "+-":
            sign = -1.0 if text[pos] == "-" else 1.0
            pos = skip_ws(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-'", text, pos)
        m = _TERM.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("expected a term", text, pos)
        coef = float(m.group("coef")) if m.group("coef") else None
        if m.group("e"):
            idx = int(m.group("idx"))
            if idx == 0:
                raise ParseError("basis index must be >= 1", text, m.start("idx"))
        elif m.group("alias"):
            idx = _ALIASES[m.group("alias")]
            used_alias = True
        else:
            idx = 0
            if coef is None:
                raise ParseError("expected a term", text, pos)
        terms.append((idx, sign * (1.0 if coef is None else coef)))
        pos = skip_ws(m.end())
        first = False

    top = max(i for i, _ in terms)
    need = max(1, top.bit_length())
    if level is None:
        level = 2 if used_alias else need
    if need > level:
        raise ParseError(f"index e{top} does not exist at level {level}", text, 0)
    if used_alias and level != 2:
        raise ParseError("aliases i, j, k are only valid at level 2", text, 0)
    coords = np.zeros(1 << level)
    for i, c in terms:
        coords[i] += c
    return CDNumber(coords)


def _fmt(x: float) -> str:
    return np.format_float_positional(x, unique=True, trim="-")


def format_cd(z: CDNumber) -> str:
    """Inverse of :func:`parse_cd` (exact round trip for finite coords)."""
    parts = []
    for k, c in enumerate(z.coords):
        if c == 0.0 and not (k == 0 and not np.any(z.coords)):
            continue
        body = _fmt(abs(c)) + (f"e{k}" if k else "")
        if not parts:
            parts.append(("-" if np.signbit(c) and c != 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)
