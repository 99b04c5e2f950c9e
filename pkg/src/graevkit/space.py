"""Finite pointed metric spaces, their stratification around K, the
quantized metric that snaps short shell distances, scaling, and the
extension of a metric to signed letters and the neutral symbol.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from .errors import (
    DuplicatePoint,
    EmptyIndexSet,
    GraevError,
    MetricViolation,
    MissingDistance,
    NonpositiveScale,
    UnknownFamily,
    UnknownPoint,
)
from .rational import INF, as_rational
from .words import Letter

POINT_RE = re.compile(r"^[A-Za-z0-9_']+$")


def _common_denominator(rows) -> int:
    den = 1
    for row in rows:
        for q in row:
            den = math.lcm(den, q.denominator)
    return den


def _metric_violation(points, rows) -> MetricViolation | None:
    """First failing metric axiom over an exact square table, or None."""
    n = len(points)
    for i in range(n):
        if rows[i][i] != 0:
            return MetricViolation("identity", (points[i], points[i]))
        for j in range(i + 1, n):
            if rows[i][j] <= 0:
                return MetricViolation("identity", (points[i], points[j]))
            if rows[i][j] != rows[j][i]:
                return MetricViolation("symmetry", (points[i], points[j]))
    # integer triangle check: d(x,z) <= min_y d(x,y) + d(y,z); y in {x,z} is harmless
    den = _common_denominator(rows)
    ints = [[q.numerator * (den // q.denominator) for q in row] for row in rows]
    add = operator.add
    for i in range(n):
        ri = ints[i]
        for k in range(i + 1, n):
            rk = ints[k]
            if min(map(add, ri, rk)) < ri[k]:
                j = next(j for j in range(n) if ri[j] + rk[j] < ri[k])
                return MetricViolation("triangle", (points[i], points[k], points[j]))
    return None


class PointedSpace:
    """Finite metric space with a designated subset ``K``.

    ``K`` stands in for the compact set of non-isolated points; it may be
    empty.  Instances are validated once at construction and never mutated.
    """

    __slots__ = ("name", "points", "index", "rows", "K")

    def __init__(self, points, rows, K, name="space"):
        self.name = name
        self.points = tuple(points)
        self.index = {p: i for i, p in enumerate(self.points)}
        self.rows = tuple(tuple(r) for r in rows)
        self.K = frozenset(K)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[str]:
        return iter(self.points)

    def __contains__(self, x) -> bool:
        return x in self.index

    def __repr__(self) -> str:
        return f"PointedSpace({self.name!r}, {len(self.points)} points, K={sorted(self.K)})"

    def idx(self, x: str) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise UnknownPoint(x) from None

    def d(self, x: str, y: str) -> Fraction:
        return self.rows[self.idx(x)][self.idx(y)]

    def distances(self) -> dict:
        return {
            (self.points[i], self.points[j]): self.rows[i][j]
            for i in range(len(self.points))
            for j in range(i + 1, len(self.points))
        }


def make_space(points: Iterable[str], dists: Mapping, K: Iterable[str] = (), name: str = "space") -> PointedSpace:
    """Build and validate a space from a distance table over unordered pairs.

    ``dists`` maps ``(a, b)`` to a rational; either orientation is accepted,
    and giving both with different values is a symmetry violation.
    """
    points = list(points)
    index: dict[str, int] = {}
    for p in points:
        if not isinstance(p, str) or not POINT_RE.match(p) or p == "e":
            raise GraevError(f"invalid point identifier {p!r}")
        if p in index:
            raise DuplicatePoint(p)
        index[p] = len(index)
    n = len(points)
    table: list[list[Fraction | None]] = [[None] * n for _ in range(n)]
    for i in range(n):
        table[i][i] = Fraction(0)
    for (a, b), value in dists.items():
        if a not in index:
            raise UnknownPoint(a)
        if b not in index:
            raise UnknownPoint(b)
        q = as_rational(value)
        i, j = index[a], index[b]
        if i == j:
            if q != 0:
                raise MetricViolation("identity", (a, a))
            continue
        if table[i][j] is not None and table[i][j] != q:
            raise MetricViolation("symmetry", (a, b))
        table[i][j] = table[j][i] = q
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] is None:
                raise MissingDistance(points[i], points[j])
    K = list(K)
    for k in K:
        if k not in index:
            raise UnknownPoint(k)
    bad = _metric_violation(points, table)
    if bad is not None:
        raise bad
    return PointedSpace(points, table, K, name=name)


def line_space(coords: Mapping[str, Fraction], K: Iterable[str] = (), name: str = "line") -> PointedSpace:
    """Space whose distances are absolute differences of rational coordinates."""
    pts = list(coords)
    c = {p: as_rational(v) for p, v in coords.items()}
    dists = {(a, b): abs(c[a] - c[b]) for i, a in enumerate(pts) for b in pts[i + 1:]}
    return make_space(pts, dists, K, name=name)


# -- stratification ---------------------------------------------------------


@dataclass(frozen=True)
class Stratum:
    """``index`` is None for points of K, else the shell number i of W_i."""

    index: int | None

    @property
    def in_K(self) -> bool:
        return self.index is None

    def __str__(self) -> str:
        return "K" if self.index is None else f"W{self.index}"


def dist_to_K(space: PointedSpace, x: str):
    """min over K of d(x, k); ``INF`` when K is empty."""
    i = space.idx(x)
    if not space.K:
        return INF
    row = space.rows[i]
    return min(row[space.index[k]] for k in space.K)


def stratum(space: PointedSpace, x: str) -> Stratum:
    dist = dist_to_K(space, x)
    if dist is INF:
        return Stratum(1)
    if dist == 0:
        return Stratum(None)
    # W_i <=> 1/i <= dist < 1/(i-1), i.e. i = ceil(1/dist)
    return Stratum(-(-dist.denominator // dist.numerator))


def deepest_stratum(space: PointedSpace) -> int:
    """Largest shell index present (0 when every point lies in K)."""
    shells = (stratum(space, p).index for p in space.points)
    return max((i for i in shells if i is not None), default=0)


# -- metrics -----------------------------------------------------------------


class Metric:
    """An exact metric on the points of ``base``.

    ``rules`` (when the metric came from :func:`yamada`) records which
    clause produced each entry: 2 for the cross-shell value, 3 for the
    within-shell value, 4 for the base distance.
    """

    __slots__ = ("base", "rows", "scale_factor", "rules", "_den")

    def __init__(self, base: PointedSpace, rows, scale_factor=Fraction(1), rules=None):
        self.base = base
        self.rows = tuple(tuple(r) for r in rows)
        self.scale_factor = Fraction(scale_factor)
        self.rules = rules
        self._den = None

    def __call__(self, x: str, y: str) -> Fraction:
        return self.rows[self.base.idx(x)][self.base.idx(y)]

    def rule(self, x: str, y: str) -> int | None:
        if self.rules is None:
            return None
        return self.rules[self.base.idx(x)][self.base.idx(y)]

    @property
    def denominator(self) -> int:
        """Least common denominator of the whole table."""
        if self._den is None:
            self._den = _common_denominator(self.rows)
        return self._den

    def validate(self) -> None:
        bad = _metric_violation(self.base.points, self.rows)
        if bad is not None:
            raise bad


def metric_from_table(space: PointedSpace, dists: Mapping) -> Metric:
    """Validated user-supplied metric on the points of ``space``."""
    other = make_space(space.points, dists, space.K, name=space.name)
    return Metric(space, other.rows)


def yamada(space: PointedSpace) -> Metric:
    """The compatible metric that quantizes short distances between shells.

    For x != y in shells W_i, W_j: if i != j and d < |i-j|/(ij) the
    distance becomes |i-j|/(ij); if i == j and d < 1/(i(i+1)) it becomes
    1/(i(i+1)); any pair touching K, and every other pair, keeps d.
    """
    strata = [stratum(space, p) for p in space.points]
    n = len(space.points)
    rows = [[Fraction(0)] * n for _ in range(n)]
    rules = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            d = space.rows[a][b]
            value, rule = d, 4
            i, j = strata[a].index, strata[b].index
            if i is not None and j is not None:
                if i != j:
                    t = Fraction(abs(i - j), i * j)
                    if d < t:
                        value, rule = t, 2
                else:
                    t = Fraction(1, i * (i + 1))
                    if d < t:
                        value, rule = t, 3
            rows[a][b] = rows[b][a] = value
            rules[a][b] = rules[b][a] = rule
    metric = Metric(space, rows, rules=tuple(map(tuple, rules)))
    metric.validate()
    return metric


def scale(metric: Metric, c) -> Metric:
    c = as_rational(c)
    if c <= 0:
        raise NonpositiveScale(f"scale must be positive, got {c}")
    rows = [[c * q for q in row] for row in metric.rows]
    return Metric(metric.base, rows, metric.scale_factor * c, metric.rules)


class StarMetric:
    """Extension of a metric to X, X^-1 and the neutral letter e.

    e sits at distance 1 + rho(x0, x) from x and from x^-1; letters of equal
    sign use rho; letters of opposite sign are routed through e.  The "+1"
    is never scaled: scale the base metric first, then extend.
    """

    __slots__ = ("metric", "basepoint", "_b", "_ints")

    def __init__(self, metric: Metric, basepoint: str):
        self.metric = metric
        self.basepoint = basepoint
        self._b = metric.base.idx(basepoint)
        self._ints = None

    @property
    def space(self) -> PointedSpace:
        return self.metric.base

    def to_e(self, x: str) -> Fraction:
        return 1 + self.metric.rows[self._b][self.metric.base.idx(x)]

    def __call__(self, a: Letter, b: Letter) -> Fraction:
        if a == b:
            return Fraction(0)
        if a.point is None:
            return self.to_e(b.point)
        if b.point is None:
            return self.to_e(a.point)
        if a.exp == b.exp:
            return self.metric(a.point, b.point)
        return self.to_e(a.point) + self.to_e(b.point)

    @property
    def denominator(self) -> int:
        return self.metric.denominator

    def _int_tables(self):
        if self._ints is None:
            den = self.metric.denominator
            irows = [[q.numerator * (den // q.denominator) for q in row] for row in self.metric.rows]
            to_e = [den + v for v in irows[self._b]]
            self._ints = (irows, to_e)
        return self._ints

    def int_value(self, a: Letter, b: Letter) -> int:
        """``denominator * self(a, b)`` as an exact integer."""
        irows, to_e = self._int_tables()
        idx = self.metric.base.index
        if a == b:
            return 0
        if a.point is None:
            return to_e[idx[b.point]]
        if b.point is None:
            return to_e[idx[a.point]]
        if a.exp == b.exp:
            return irows[idx[a.point]][idx[b.point]]
        return to_e[idx[a.point]] + to_e[idx[b.point]]

    def domain(self) -> list[Letter]:
        letters = [Letter(None, 0)]
        for p in self.space.points:
            letters += [Letter(p, 1), Letter(p, -1)]
        return letters


def star(metric: Metric, basepoint: str | None = None) -> StarMetric:
    if basepoint is None:
        basepoint = metric.base.points[0]
    if basepoint not in metric.base:
        raise UnknownPoint(basepoint)
    return StarMetric(metric, basepoint)


@dataclass(frozen=True)
class GapVerdict:
    passed: bool
    k: int
    threshold: Fraction
    witness: tuple | None = None  # (x, y, rho(x, y), threshold) on failure


def gap_check(space: PointedSpace, metric: Metric, k: int) -> GapVerdict:
    """Check rho(x, y) > 1/(k+1)^2 for every x with d(x, K) >= 1/k and y != x."""
    if k < 1:
        raise GraevError("k must be a positive integer")
    threshold = Fraction(1, (k + 1) ** 2)
    bound = Fraction(1, k)
    for x in space.points:
        if dist_to_K(space, x) < bound:
            continue
        for y in space.points:
            if y == x:
                continue
            r = metric(x, y)
            if r <= threshold:
                return GapVerdict(False, k, threshold, (x, y, r, threshold))
    return GapVerdict(True, k, threshold)


# -- parametric families -----------------------------------------------------


@dataclass(frozen=True)
class ParametricFamily:
    """A line-embedded family of twin points indexed by m = 1..depth.

    ``twin_coords(m)`` gives the coordinates of the two points indexed by m.
    ``ground`` holds fixed named coordinates merged into every sample; an
    indexed point landing on a ground coordinate *is* that ground point.
    """

    name: str
    depth: int
    twin_coords: Callable[[int], tuple[Fraction, Fraction]]
    twin_names: Callable[[int], tuple[str, str]]
    K_name: str = "k"
    ground: tuple = field(default=())  # ((name, coord), ...), must include K_name at 0

    def _ground(self) -> dict:
        g = dict(self.ground)
        g.setdefault(self.K_name, Fraction(0))
        return g

    def twins(self, m: int) -> tuple[str, str]:
        """Point names of the twin pair at index m, after ground identification."""
        if not 1 <= m <= self.depth:
            raise GraevError(f"index {m} outside 1..{self.depth}")
        by_coord = {c: p for p, c in self._ground().items()}
        names = self.twin_names(m)
        return tuple(by_coord.get(c, nm) for c, nm in zip(self.twin_coords(m), names))

    def coords(self, indices: Iterable[int]) -> dict:
        out = self._ground()
        taken = {c: p for p, c in out.items()}
        for m in sorted(set(indices)):
            if not 1 <= m <= self.depth:
                raise GraevError(f"index {m} outside 1..{self.depth}")
            for c, nm in zip(self.twin_coords(m), self.twin_names(m)):
                if c not in taken:
                    out[nm] = c
                    taken[c] = nm
        return out

    def sample(self, indices: Iterable[int]) -> PointedSpace:
        indices = list(indices)
        if not indices:
            raise EmptyIndexSet(f"no indices requested from {self.name}")
        return line_space(self.coords(indices), [self.K_name], name=self.name)


def _doublecomb_coords(m: int) -> tuple[Fraction, Fraction]:
    base = Fraction(1, m)
    return base, base + Fraction(1, 2 * m * (m + 1))


def doublecomb(M: int, ground: Mapping[str, Fraction] | None = None) -> ParametricFamily:
    """K = {k} at 0, c_m at 1/m and c_m' at 1/m + 1/(2m(m+1)), m = 1..M."""
    if M < 1:
        raise EmptyIndexSet("doublecomb needs M >= 1")
    return ParametricFamily(
        name="doublecomb",
        depth=M,
        twin_coords=_doublecomb_coords,
        twin_names=lambda m: (f"c{m}", f"c{m}p"),
        ground=tuple((ground or {}).items()),
    )


FAMILIES: dict[str, Callable[..., ParametricFamily]] = {"doublecomb": doublecomb}


def sample_family(family, indices: Iterable[int]) -> PointedSpace:
    """Concrete space for the requested indices; ``family`` may be a registered name."""
    if isinstance(family, str):
        indices = list(indices)
        if family not in FAMILIES:
            raise UnknownFamily(family)
        if not indices:
            raise EmptyIndexSet(f"no indices requested from {family}")
        family = FAMILIES[family](max(indices))
    return family.sample(indices)
