"""Membership in the norm balls at e and in the insertion neighborhoods at g.

U(n) is the set of words of prenorm < 1/n.  For a reduced g = a_1..a_n
and a metric rho with rho*(a_i^-1, a_{i+1}) >= 1 for all i, U(g) is the set
of reductions of x_1..x_i y^eps z^-eps x_{i+1}..x_n with

    rho(y, z) + sum_k rho(a_k, x_k) < 1,

where each x_k carries the same sign as a_k and rho compares underlying
points.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import EmptyWord, LengthOverBound, NotAdmissible
from .graev import NormResult, graev_norm
from .space import Metric, StarMetric, star
from .words import Letter, reduce

ONE = Fraction(1)


@dataclass(frozen=True)
class UgWitness:
    position: int  # i: the pair is inserted after x_i
    sign: int
    y: str
    z: str
    xs: tuple  # x_1..x_n as letters
    spelling: tuple
    cost: Fraction


@dataclass(frozen=True)
class MembershipCertificate:
    """Verdict plus the exact quantities behind it.

    ``kind`` is ``"Un"`` (norm ball at e; ``norm`` holds the prenorm with
    its witness) or ``"Ug"`` (insertion neighborhood of ``target``;
    ``witness`` holds the spelling on success, ``exhausted`` marks a
    negative verdict proved by finite exhaustion).
    """

    kind: str
    verdict: bool
    word: tuple
    threshold: Fraction
    norm: NormResult | None = None
    target: tuple = ()
    scale: Fraction | None = None
    witness: UgWitness | None = None
    exhausted: bool = False
    searched: tuple = ()  # (positions, signs, candidate pairs, per-slot candidate counts)


def in_Un(star_metric: StarMetric, g: Sequence[Letter], n: int) -> MembershipCertificate:
    """Is N(g) < 1/n?  Strict, exact."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    g = tuple(g)
    result = graev_norm(star_metric, g)
    threshold = Fraction(1, n)
    return MembershipCertificate("Un", result.value < threshold, g, threshold, norm=result)


def admissible(star_metric: StarMetric, g: Sequence[Letter]) -> bool:
    """rho*(a_i^-1, a_{i+1}) >= 1 for every consecutive pair of letters of g."""
    g = tuple(g)
    if not g:
        raise EmptyWord("admissibility needs a non-empty word")
    return all(star_metric(g[i].inverse(), g[i + 1]) >= 1 for i in range(len(g) - 1))


def _feasible(stack: tuple, target: tuple, remaining: int) -> bool:
    c = 0
    for a, b in zip(stack, target):
        if a != b:
            break
        c += 1
    return (len(stack) - c) + (len(target) - c) <= remaining


def _push(stack: tuple, a: Letter) -> tuple:
    if stack and stack[-1].point == a.point and stack[-1].exp == -a.exp:
        return stack[:-1]
    return stack + (a,)


def in_Ug(metric: Metric, g: Sequence[Letter], h: Sequence[Letter], basepoint: str | None = None) -> MembershipCertificate:
    """Decide h in U(g) by depth-first search with running-cost pruning.

    Candidates are enumerated in the order (i, eps, y, z, x_1..x_n) with
    eps = +1 before -1 and points in space order, so the first witness found
    is the lexicographically least one.  A negative verdict is an exhaustion
    over the finite space.
    """
    g = tuple(g)
    h = reduce(h)
    if not admissible(star(metric, basepoint), g):
        raise NotAdmissible("metric is not admissible for this word")
    n = len(g)
    if len(h) > n + 2:
        raise LengthOverBound(f"word of length {len(h)} cannot lie in U(g) for len(g)={n}")
    space = metric.base
    pts = space.points
    rows = metric.rows

    slots = []
    for a in g:
        ai = space.idx(a.point)
        slots.append([(Letter(p, a.exp), rows[ai][j]) for j, p in enumerate(pts) if rows[ai][j] < ONE])
    pairs = [
        (pts[i], pts[j], rows[i][j])
        for i in range(len(pts))
        for j in range(len(pts))
        if rows[i][j] < ONE and not (i == j and len(h) == n + 2)
    ]
    searched = (n + 1, 2, len(pairs), tuple(len(s) for s in slots))

    def certificate(verdict, witness=None):
        return MembershipCertificate(
            "Ug", verdict, h, ONE, target=g, scale=metric.scale_factor,
            witness=witness, exhausted=not verdict, searched=searched,
        )

    if (len(h) - n) % 2:
        return certificate(False)

    total = n + 2
    for i in range(n + 1):
        for eps in (1, -1):
            for y, z, base in pairs:
                block = (Letter(y, eps), Letter(z, -eps))
                found = _search(slots, block, i, base, h, total)
                if found is not None:
                    xs, cost = found
                    spelling = xs[:i] + block + xs[i:]
                    return certificate(True, UgWitness(i, eps, y, z, xs, spelling, cost))
    return certificate(False)


def _search(slots, block, i, base, h, total):
    n = len(slots)

    def insert_block(stack, used):
        for b in block:
            stack = _push(stack, b)
        return stack if _feasible(stack, h, total - used - 2) else None

    start = ()
    used = 0
    if i == 0:
        start = insert_block(start, 0)
        if start is None:
            return None
        used = 2

    def dfs(k, stack, used, cost, chosen):
        if k == n:
            return (tuple(chosen), cost) if stack == h else None
        for letter, c in slots[k]:
            new_cost = cost + c
            if new_cost >= ONE:
                continue
            new_stack = _push(stack, letter)
            new_used = used + 1
            if not _feasible(new_stack, h, total - new_used):
                continue
            if k + 1 == i:
                new_stack = insert_block(new_stack, new_used)
                if new_stack is None:
                    continue
                new_used += 2
            chosen.append(letter)
            hit = dfs(k + 1, new_stack, new_used, new_cost, chosen)
            chosen.pop()
            if hit is not None:
                return hit
        return None

    return dfs(0, start, used, base, [])


def revalidate(cert: MembershipCertificate, metric_or_star) -> bool:
    """Recompute a certificate's quantities and confirm its verdict.

    ``Un`` certificates need the StarMetric they were issued under; ``Ug``
    certificates need the Metric.  Negative ``Ug`` verdicts are re-derived
    by repeating the exhaustive search.
    """
    if cert.kind == "Un":
        value = graev_norm(metric_or_star, cert.word).value
        return value == cert.norm.value and (value < cert.threshold) == cert.verdict and cert.norm.recheck(metric_or_star)
    metric = metric_or_star
    if not cert.verdict:
        return not in_Ug(metric, cert.target, cert.word).verdict
    w = cert.witness
    if reduce(w.spelling) != cert.word:
        return False
    if w.spelling != w.xs[: w.position] + (Letter(w.y, w.sign), Letter(w.z, -w.sign)) + w.xs[w.position:]:
        return False
    if any(x.exp != a.exp for x, a in zip(w.xs, cert.target)):
        return False
    cost = metric(w.y, w.z) + sum((metric(a.point, x.point) for a, x in zip(cert.target, w.xs)), Fraction(0))
    return cost == w.cost and cost < ONE
