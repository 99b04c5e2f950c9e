"""Shipped fixture spaces."""

from __future__ import annotations

from fractions import Fraction

from .space import PointedSpace, doublecomb, line_space

# K = {k}; p1 sits in W1, u and w in W2, v in W3, q and r in W9.
COMB_COORDS = {
    "k": Fraction(0),
    "p1": Fraction(1),
    "u": Fraction(51, 100),
    "w": Fraction(13, 25),
    "v": Fraction(49, 100),
    "q": Fraction(1, 9),
    "r": Fraction(23, 200),
}


def comb_space() -> PointedSpace:
    return line_space(COMB_COORDS, ["k"], name="comb")


def doublecomb_space(M: int) -> PointedSpace:
    """doublecomb(M) sampled at every index 1..M, without ground points."""
    return doublecomb(M).sample(range(1, M + 1))


def comb_doublecomb_family(M: int):
    """doublecomb(M) layered over the comb, so u, v and the twins coexist."""
    return doublecomb(M, ground=COMB_COORDS)
