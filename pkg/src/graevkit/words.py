"""Free-group words over the points of a space.

A letter is either the neutral symbol or a point carrying exponent +1 or -1;
higher powers are spelled out as repeated letters.  Raw words are plain
tuples of letters and may contain neutral letters and cancelling pairs;
reduced words contain neither.
"""

from __future__ import annotations

import enum
import re
from typing import Iterable, NamedTuple, Sequence

from .errors import LengthOutOfRange, UnknownPoint, UnknownToken


class Letter(NamedTuple):
    point: str | None
    exp: int

    @property
    def neutral(self) -> bool:
        return self.point is None

    def inverse(self) -> "Letter":
        # e^-1 is e
        return self if self.point is None else Letter(self.point, -self.exp)

    def __str__(self) -> str:
        if self.point is None:
            return "e"
        return self.point if self.exp == 1 else f"{self.point}^-1"


NEUTRAL = Letter(None, 0)

RawWord = tuple  # tuple[Letter, ...], may hold NEUTRAL and cancelling pairs
Word = tuple  # tuple[Letter, ...], reduced

EMPTY: Word = ()


def pos(point: str) -> Letter:
    return Letter(point, 1)


def neg(point: str) -> Letter:
    return Letter(point, -1)


def reduce(raw: Iterable[Letter]) -> Word:
    """Reduced form by one left-to-right stack pass."""
    stack: list[Letter] = []
    for a in raw:
        if a.point is None:
            continue
        if stack and stack[-1].point == a.point and stack[-1].exp == -a.exp:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


def is_reduced(w: Sequence[Letter]) -> bool:
    for i, a in enumerate(w):
        if a.point is None:
            return False
        if i and w[i - 1].point == a.point and w[i - 1].exp == -a.exp:
            return False
    return True


def multiply(g: Word, h: Word) -> Word:
    return reduce(tuple(g) + tuple(h))


def invert(g: Word) -> Word:
    return tuple(a.inverse() for a in reversed(g))


def support(g: Sequence[Letter]) -> frozenset:
    return frozenset(a.point for a in g if a.point is not None)


class Summand(enum.Enum):
    EVEN = "EvenSummand"
    ODD = "OddSummand"


def classify_f4(g: Word) -> tuple[Summand, int]:
    """Place a reduced word of length <= 4 in the clopen split of F_4.

    Returns the summand and the exact length n, i.e. the stratum F_n minus
    F_{n-1} (n = 0 means the identity).
    """
    n = len(g)
    if n > 4:
        raise LengthOutOfRange(f"word length {n} exceeds 4")
    return (Summand.EVEN if n % 2 == 0 else Summand.ODD), n


def in_B(g: Sequence[Letter]) -> bool:
    """Reduced length-4 words whose four exponents cancel in total."""
    g = tuple(g)
    if len(g) != 4 or not is_reduced(g):
        return False
    return sum(a.exp for a in g) == 0


_TOKEN_RE = re.compile(r"^([A-Za-z0-9_']+)(\^-1)?$")


def parse_word(text: str, points: Iterable[str] | None = None) -> RawWord:
    """Parse whitespace-separated tokens (``u``, ``u^-1``, ``e``) verbatim.

    The result is raw: call :func:`reduce` for the reduced form.  When
    ``points`` is given every token must name one of them.
    """
    known = None if points is None else set(points)
    letters = []
    for tok in text.split():
        m = _TOKEN_RE.match(tok)
        if not m:
            raise UnknownToken(tok)
        name, inv = m.groups()
        if name == "e":
            if inv:
                raise UnknownToken(tok)
            letters.append(NEUTRAL)
            continue
        if known is not None and name not in known:
            raise UnknownPoint(name)
        letters.append(Letter(name, -1 if inv else 1))
    return tuple(letters)


def format_word(w: Sequence[Letter], sep: str = " ") -> str:
    if not w:
        return "e"
    return sep.join(str(a) for a in w)
