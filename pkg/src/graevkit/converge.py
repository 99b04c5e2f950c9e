"""Finite convergence evidence for word sequences.

A sequence is only ever declared *consistent* with convergence over a
finite schedule of neighborhood tests; nothing here claims a limit exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    FamilyTooShallow,
    InadmissibleScale,
    LengthOverBound,
    NotLengthTwo,
    UnbalancedExponents,
)
from .nbhd import admissible, in_Ug, in_Un, revalidate
from .space import Metric, ParametricFamily, PointedSpace, scale, star, yamada
from .words import Letter, is_reduced, reduce

DEFAULT_SCALES = (1, 6, 7, 42)
DEFAULT_SCHEDULE = tuple((Fraction(c), n) for c in DEFAULT_SCALES for n in range(1, 11))

CONSISTENT = "ConsistentOverSchedule"
REFUTED = "RefutedAt"


@dataclass(frozen=True)
class WordSequence:
    """Words h_i at strictly increasing indices, with a declared tail start.

    ``scales`` optionally records, per index, the metric multiplier a word
    was built against (the twin-point construction fills it in).
    """

    items: tuple  # ((index, word), ...)
    tail: int = 1
    scales: tuple = ()  # ((index, Fraction), ...)

    def __post_init__(self):
        idx = [i for i, _ in self.items]
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValueError("sequence indices must be strictly increasing")

    @classmethod
    def of(cls, words: Iterable[Sequence[Letter]], tail: int = 1, scales=()) -> "WordSequence":
        return cls(tuple((i, tuple(w)) for i, w in enumerate(words, 1)), tail, tuple(scales))

    @property
    def indices(self) -> tuple:
        return tuple(i for i, _ in self.items)

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class TestRecord:
    scale: Fraction
    n: int
    threshold: Fraction
    verdict: bool
    first_index: int | None  # least index from which every listed word is a member
    failing_index: int | None  # first index >= tail that is not a member
    members: tuple = ()  # ((index, MembershipCertificate), ...)


@dataclass(frozen=True)
class ConvergenceCertificate:
    target: tuple
    basepoint: str
    tests: tuple
    verdict: str
    refuted: tuple | None = None  # ((scale, n), index) of the first failing test

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT


def _summarise(records, tail, scale_c, n, threshold, certs):
    first = None
    for i, cert in reversed(certs):
        if not cert.verdict:
            break
        first = i
    failing = next((i for i, cert in certs if i >= tail and not cert.verdict), None)
    verdict = first is not None and first <= tail and failing is None
    records.append(TestRecord(scale_c, n, threshold, verdict, first, failing, tuple(certs)))


def check_convergence(
    space: PointedSpace,
    seq: WordSequence,
    target: Sequence[Letter],
    schedule: Iterable[tuple] | None = None,
    basepoint: str | None = None,
) -> ConvergenceCertificate:
    """Test every word against every scheduled neighborhood of ``target``.

    For target e a test (c, n) asks N_{c.rho}(h_i) < 1/n.  For a target g of
    length 1 or 2 it asks h_i in U_{n.c.rho}(g), which needs c.rho to be
    admissible for g; the default schedule silently skips inadmissible
    scales, an explicit one raises.
    """
    target = reduce(target)
    rho = yamada(space)
    if basepoint is None:
        basepoint = space.points[0]
    explicit = schedule is not None
    schedule = [(Fraction(c), int(n)) for c, n in (schedule if explicit else DEFAULT_SCHEDULE)]
    records: list[TestRecord] = []

    if not target:
        stars: dict = {}
        for c, n in schedule:
            if c not in stars:
                stars[c] = star(scale(rho, c), basepoint)
            certs = [(i, in_Un(stars[c], h, n)) for i, h in seq.items]
            _summarise(records, seq.tail, c, n, Fraction(1, n), certs)
    else:
        if len(target) > 2:
            raise LengthOverBound("non-identity targets must have length 1 or 2")
        kept = []
        for c, n in schedule:
            if admissible(star(scale(rho, c), basepoint), target):
                kept.append((c, n))
            elif explicit:
                raise InadmissibleScale(f"scale {c} is not admissible for the target")
        for c, n in kept:
            metric = scale(rho, c * n)
            certs = [(i, in_Ug(metric, target, h, basepoint)) for i, h in seq.items]
            _summarise(records, seq.tail, c, n, Fraction(1), certs)

    bad = next((r for r in records if not r.verdict), None)
    if bad is None:
        return ConvergenceCertificate(target, basepoint, tuple(records), CONSISTENT)
    index = bad.failing_index if bad.failing_index is not None else seq.tail
    return ConvergenceCertificate(target, basepoint, tuple(records), REFUTED, ((bad.scale, bad.n), index))


def revalidate_convergence(space: PointedSpace, cert: ConvergenceCertificate) -> bool:
    """Recompute every membership certificate behind every recorded test."""
    rho = yamada(space)
    for rec in cert.tests:
        if not cert.target:
            st = star(scale(rho, rec.scale), cert.basepoint)
            ok = all(revalidate(m, st) for _, m in rec.members)
        else:
            metric = scale(rho, rec.scale * rec.n)
            ok = all(revalidate(m, metric) for _, m in rec.members)
        if not ok:
            return False
    return True


# -- the two-letter construction ---------------------------------------------


def lemma25_multiplier(metric: Metric, g: Sequence[Letter], basepoint: str | None = None) -> tuple[Fraction, int]:
    """r = rho*(a1^-1, a2) and the least integer k > 1/r (k = 1 when r >= 1)."""
    g = tuple(g)
    if len(g) != 2 or not is_reduced(g):
        raise NotLengthTwo("expected a reduced word of length 2")
    r = star(metric, basepoint)(g[0].inverse(), g[1])
    if r >= 1:
        return r, 1
    return r, int(1 / r) + 1


def lemma25_sequence(
    family: ParametricFamily,
    g: Sequence[Letter],
    count: int,
    basepoint: str | None = None,
) -> tuple[WordSequence, ConvergenceCertificate]:
    """Build h_n = a1 y z^-1 a2 from the family's twin points and certify each.

    For each n the twin pair (y, z) at the least index m with
    n.k.rho(y, z) < 1 is used, and h_n is checked to lie in U_{n.k.rho}(g).
    """
    g = tuple(g)
    space = family.sample(range(1, family.depth + 1))
    rho = yamada(space)
    if basepoint is None:
        basepoint = space.points[0]
    _, k = lemma25_multiplier(rho, g, basepoint)
    words, scales, records = [], [], []
    for n in range(1, count + 1):
        mult = Fraction(n * k)
        m = lemma25_twin_index(family, rho, mult)
        if m is None:
            raise FamilyTooShallow(n, family.depth)
        y, z = family.twins(m)
        h = reduce((g[0], Letter(y, 1), Letter(z, -1), g[1]))
        cert = in_Ug(scale(rho, mult), g, h, basepoint)
        words.append(h)
        scales.append((n, mult))
        records.append(TestRecord(mult, n, Fraction(1), cert.verdict, n if cert.verdict else None,
                                  None if cert.verdict else n, ((n, cert),)))
    seq = WordSequence.of(words, tail=1, scales=scales)
    bad = next((r for r in records if not r.verdict), None)
    if bad is None:
        verdict = ConvergenceCertificate(g, basepoint, tuple(records), CONSISTENT)
    else:
        verdict = ConvergenceCertificate(g, basepoint, tuple(records), REFUTED, ((bad.scale, bad.n), bad.n))
    return seq, verdict


def lemma25_twin_index(family: ParametricFamily, rho: Metric, multiplier: Fraction) -> int | None:
    """Least m whose twin pair satisfies multiplier * rho(y, z) < 1."""
    for m in range(1, family.depth + 1):
        y, z = family.twins(m)
        if multiplier * rho(y, z) < 1:
            return m
    return None


def revalidate_lemma25(family: ParametricFamily, cert: ConvergenceCertificate) -> bool:
    rho = yamada(family.sample(range(1, family.depth + 1)))
    return all(
        revalidate(m, scale(rho, rec.scale)) for rec in cert.tests for _, m in rec.members
    )


# -- limits of the B-words in the shrinking-support case ---------------------


class Case1(enum.Enum):
    LIMIT_IS_E = "LimitIsE"
    INCONCLUSIVE = "Inconclusive"


def case1_verdict(exponents: Sequence[int], limits: Sequence[str]) -> Case1:
    """Decide whether x^a y^b z^c t^d collapses to e at the supplied limit points.

    Adjacent cancellation (a = -b, c = -d) needs x = y and z = t; nested
    cancellation (a = -d, b = -c) needs x = t and y = z.
    """
    e1, e2, e3, e4 = exponents
    if any(e not in (1, -1) for e in exponents) or sum(exponents) != 0:
        raise UnbalancedExponents(f"exponents {tuple(exponents)} are not +-1 summing to 0")
    x, y, z, t = limits
    if e1 == -e2 and e3 == -e4 and x == y and z == t:
        return Case1.LIMIT_IS_E
    if e1 == -e4 and e2 == -e3 and x == t and y == z:
        return Case1.LIMIT_IS_E
    return Case1.INCONCLUSIVE
