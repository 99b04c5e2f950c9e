"""Schemes, the pairing cost of a spelling, and the Graev prenorm.

A scheme on positions 1..2n is a non-crossing perfect pairing.  The cost of
a spelling x_1..x_2n under a scheme phi is half the sum over positions of
rho*(x_i^-1, x_phi(i)), which equals the sum over pairs {a, b} of
rho*(x_a^-1, x_b).  The prenorm of a reduced word g is the least cost over
every spelling that reduces to g and every scheme on it.

Two independent routes compute that minimum over the same finite search
space (even lengths up to 2*len(g), alphabet = letters of g plus e):

* :func:`graev_norm` builds spellings by a pruned depth-first search,
  pairs them with :func:`schemes`, collapses (spelling, scheme) pairs to the
  multiset of letter pairs they charge, and keeps only the minimal ones.
* :func:`oracle_norm` filters every sequence over the alphabet by brute
  force, pairs each with every perfect matching that passes a crossing
  test, and takes a plain vectorised minimum over the lot.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import LengthMismatch, LengthOverBound, NotInB, UnknownPoint
from .space import StarMetric
from .words import NEUTRAL, Letter, in_B, is_reduced, reduce

Scheme = tuple  # tuple[tuple[int, int], ...], 1-based, sorted

DEFAULT_BOUND = 4
ORACLE_BOUND = 4


# -- schemes -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _schemes_on(lo: int, hi: int) -> tuple:
    """Non-crossing perfect pairings of the positions lo..hi (inclusive)."""
    if lo > hi:
        return ((),)
    out = []
    # lo pairs with some partner; what lies strictly between must pair inside
    for partner in range(lo + 1, hi + 1, 2):
        for inner in _schemes_on(lo + 1, partner - 1):
            for outer in _schemes_on(partner + 1, hi):
                out.append(((lo, partner),) + inner + outer)
    return tuple(out)


def schemes(n: int) -> list[Scheme]:
    """Every scheme on {1..2n}, each as a sorted tuple of pairs; n=0 gives [()]."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sorted(tuple(sorted(s)) for s in _schemes_on(1, 2 * n))


def is_scheme(phi: Sequence[tuple[int, int]], n: int) -> bool:
    """Pairs partition {1..2n}, each with a < b, and no two intervals cross."""
    seen = sorted(x for pair in phi for x in pair)
    if seen != list(range(1, 2 * n + 1)):
        return False
    if any(a >= b for a, b in phi):
        return False
    for (a, b), (c, d) in itertools.combinations(phi, 2):
        if a < c < b < d or c < a < d < b:
            return False
    return True


def catalan(n: int) -> int:
    from math import comb

    return comb(2 * n, n) // (n + 1)


# -- cost of a spelling ------------------------------------------------------


def _check_letters(star: StarMetric, X) -> None:
    for a in X:
        if a.point is not None and a.point not in star.space:
            raise UnknownPoint(a.point)


def gamma(star: StarMetric, X: Sequence[Letter], phi: Scheme) -> Fraction:
    """Half the sum over all 2n positions of rho*(x_i^-1, x_phi(i))."""
    X = tuple(X)
    if len(X) % 2 or len(X) != 2 * len(phi):
        raise LengthMismatch(f"word of length {len(X)} against a scheme on {2 * len(phi)} positions")
    _check_letters(star, X)
    partner = {}
    for a, b in phi:
        partner[a] = b
        partner[b] = a
    total = sum(
        (star(X[i - 1].inverse(), X[partner[i] - 1]) for i in range(1, len(X) + 1)),
        Fraction(0),
    )
    return total / 2


def pair_sum(star: StarMetric, X: Sequence[Letter], phi: Scheme) -> Fraction:
    """Sum over pairs {a, b} of rho*(x_a^-1, x_b); equal to :func:`gamma`."""
    return sum((star(X[a - 1].inverse(), X[b - 1]) for a, b in phi), Fraction(0))


def min_scheme(star: StarMetric, X: Sequence[Letter]) -> tuple[Fraction, Scheme]:
    """Cheapest scheme for a fixed even-length spelling, by interval DP.

    best[i][j] is the least cost of pairing positions i..j among themselves;
    position i pairs with some k, splitting the interval in two.
    """
    X = tuple(X)
    L = len(X)
    if L % 2:
        raise LengthMismatch("min_scheme needs an even-length word")
    _check_letters(star, X)
    cost = [[star(X[i].inverse(), X[j]) for j in range(L)] for i in range(L)]
    best: dict = {}
    choice: dict = {}

    def get(i, j):
        return Fraction(0) if i > j else best[i, j]

    for width in range(2, L + 1, 2):
        for i in range(0, L - width + 1):
            j = i + width - 1
            top = None
            for k in range(i + 1, j + 1, 2):
                c = cost[i][k] + get(i + 1, k - 1) + get(k + 1, j)
                if top is None or c < top:
                    top, choice[i, j] = c, k
            best[i, j] = top

    pairs = []
    todo = [(0, L - 1)]
    while todo:
        i, j = todo.pop()
        if i > j:
            continue
        k = choice[i, j]
        pairs.append((i + 1, k + 1))
        todo += [(i + 1, k - 1), (k + 1, j)]
    return get(0, L - 1), tuple(sorted(pairs))


def norm_word(star: StarMetric, X: Sequence[Letter]) -> Fraction:
    """Least cost over all schemes for one fixed spelling (odd length padded with e)."""
    X = tuple(X)
    if len(X) % 2:
        X = X + (NEUTRAL,)
    return min_scheme(star, X)[0]


# -- symbolic compilation shared by both routes ------------------------------


def _symbolize(g):
    """Distinct letters of g (first-occurrence order), g as symbol indices, inverse map."""
    symbols: list[Letter] = []
    for a in g:
        if a not in symbols:
            symbols.append(a)
    gsym = tuple(symbols.index(a) for a in g)
    inv = tuple(symbols.index(a.inverse()) if a.inverse() in symbols else -1 for a in symbols)
    return symbols, gsym, inv


def _int_costs(star: StarMetric, letters: Sequence[Letter]) -> list[int]:
    """Flat (m x m) table of denominator * rho*(s^-1, t) over the given letters."""
    inv = [a.inverse() for a in letters]
    return [star.int_value(ia, b) for ia in inv for b in letters]


# -- primary route: pruned DFS + minimal pair multisets ----------------------


def _spellings_dfs(gsym: tuple, inv: tuple, max_len: int):
    """All spellings over symbols 0..s-1 plus E=s, of even length <= max_len, reducing to gsym."""
    s = len(inv)
    E = s
    target = gsym
    ell = len(target)
    out = []

    def lcp(stack):
        n = 0
        for a, b in zip(stack, target):
            if a != b:
                break
            n += 1
        return n

    def dfs(prefix, stack, remaining):
        if remaining == 0:
            if tuple(stack) == target:
                out.append(tuple(prefix))
            return
        for sym in range(s + 1):
            if sym == E:
                new_stack = stack
            elif stack and inv[sym] == stack[-1]:
                new_stack = stack[:-1]
            else:
                new_stack = stack + [sym]
            c = lcp(new_stack)
            if (len(new_stack) - c) + (ell - c) > remaining - 1:
                continue
            prefix.append(sym)
            dfs(prefix, new_stack, remaining - 1)
            prefix.pop()

    for L in range(2, max_len + 1, 2):
        dfs([], [], L)
    return out


@dataclass
class _Plan:
    size: int  # number of symbols including E
    multisets: tuple  # every distinct multiset of charged pairs
    entries: dict  # multiset -> list of (spelling, scheme)
    minimal: tuple  # multisets not dominating another


def _dominates(big: tuple, small: tuple) -> bool:
    """Multiset inclusion small <= big for sorted tuples."""
    i = 0
    for x in big:
        if i < len(small) and small[i] == x:
            i += 1
    return i == len(small)


@lru_cache(maxsize=None)
def _plan(gsym: tuple, inv: tuple, max_len: int) -> _Plan:
    size = len(inv) + 1
    entries: dict = defaultdict(list)
    for spelling in _spellings_dfs(gsym, inv, max_len):
        for phi in schemes(len(spelling) // 2):
            ms = tuple(sorted(
                min(spelling[a - 1], spelling[b - 1]) * size + max(spelling[a - 1], spelling[b - 1])
                for a, b in phi
            ))
            entries[ms].append((spelling, phi))
    minimal: list = []
    for ms in sorted(entries, key=len):
        if not any(_dominates(ms, m) for m in minimal):
            minimal.append(ms)
    return _Plan(size, tuple(entries), dict(entries), tuple(minimal))


@lru_cache(maxsize=None)
def _first_entry(gsym: tuple, inv: tuple, max_len: int, ranks: tuple, ms: tuple):
    """Smallest (spelling, scheme) charging ``ms`` when symbol s sorts as ranks[s]."""
    entries = _plan(gsym, inv, max_len).entries[ms]
    return min(entries, key=lambda e: (tuple(ranks[s] for s in e[0]), e[1]))


@dataclass(frozen=True)
class NormResult:
    """Prenorm value with an attaining spelling and scheme."""

    value: Fraction
    word: tuple
    scheme: Scheme
    basepoint: str
    bound: int

    def recheck(self, star: StarMetric) -> bool:
        """Recompute the witness cost and confirm it reproduces ``value``."""
        if not self.word:
            return self.value == 0 and self.scheme == ()
        return gamma(star, self.word, self.scheme) == self.value


def _letter_key(star: StarMetric):
    n = len(star.space.points)
    index = star.space.index

    def key(a: Letter):
        if a.point is None:
            return (n, 0)
        return (index[a.point], 0 if a.exp == 1 else 1)

    return key


def graev_norm(star: StarMetric, g: Sequence[Letter], bound: int = DEFAULT_BOUND) -> NormResult:
    """Exact prenorm of a reduced word with a deterministic witness.

    Ties between attaining (spelling, scheme) pairs go to the
    lexicographically smallest spelling (points in space order, x before
    x^-1, e last), then the smallest sorted pair list.
    """
    g = tuple(g)
    if len(g) > bound:
        raise LengthOverBound(f"word length {len(g)} exceeds bound {bound}")
    if not is_reduced(g):
        raise ValueError("graev_norm expects a reduced word")
    _check_letters(star, g)
    if not g:
        return NormResult(Fraction(0), (), (), star.basepoint, bound)
    symbols, gsym, inv = _symbolize(g)
    max_len = 2 * len(g)
    plan = _plan(gsym, inv, max_len)
    letters = symbols + [NEUTRAL]
    flat = _int_costs(star, letters)
    best = min(sum(flat[f] for f in ms) for ms in plan.minimal)

    # an attaining multiset need not be minimal: zero-cost pairs may ride along
    tied = [ms for ms in plan.multisets if sum(flat[f] for f in ms) == best]
    key = _letter_key(star)
    order = sorted(range(len(letters)), key=lambda s: key(letters[s]))
    ranks = tuple(order.index(s) for s in range(len(letters)))
    chosen = min(
        (_first_entry(gsym, inv, max_len, ranks, ms) for ms in tied),
        key=lambda e: (tuple(ranks[s] for s in e[0]), e[1]),
    )
    spelling, phi = chosen
    word = tuple(letters[s] for s in spelling)
    return NormResult(Fraction(best, star.denominator), word, phi, star.basepoint, bound)


# -- oracle route: brute-force filter + every crossing-checked matching ------


def _perfect_matchings(items):
    items = list(items)
    if not items:
        yield []
        return
    first = items.pop(0)
    for i, other in enumerate(items):
        for rest in _perfect_matchings(items[:i] + items[i + 1:]):
            yield [(first, other)] + rest


@lru_cache(maxsize=None)
def _noncrossing_matchings(L: int) -> tuple:
    out = []
    for m in _perfect_matchings(range(L)):
        if all(not (a < c < b < d or c < a < d < b) for (a, b), (c, d) in itertools.combinations(m, 2)):
            out.append(tuple(m))
    return tuple(out)


def _naive_reduce(seq, inv, E):
    """Delete e's, then cancel adjacent inverse pairs until none remain."""
    w = [x for x in seq if x != E]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if inv[w[i]] == w[i + 1]:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


@lru_cache(maxsize=None)
def _oracle_table(pairs: int, singles: int) -> dict:
    """Map reduced canonical word -> spellings, over 2*pairs + singles symbols plus E.

    Symbols 2i and 2i+1 are mutually inverse; the rest have no inverse in the
    alphabet.  Only spellings with len <= 2 * reduced length are kept.
    """
    s = 2 * pairs + singles
    inv = [-1] * s
    for i in range(pairs):
        inv[2 * i], inv[2 * i + 1] = 2 * i + 1, 2 * i
    E = s
    table: dict = defaultdict(list)
    for L in range(2, 2 * ORACLE_BOUND + 1, 2):
        for seq in itertools.product(range(s + 1), repeat=L):
            red = _naive_reduce(seq, inv, E)
            if 2 * len(red) >= L and len(red) <= ORACLE_BOUND:
                table[red].append(seq)
    return dict(table)


def _canonical_alphabet(g):
    """Order g's distinct letters as inverse pairs first, then singletons."""
    distinct: list[Letter] = []
    for a in g:
        if a not in distinct:
            distinct.append(a)
    paired, singles = [], []
    for a in distinct:
        if a.inverse() in distinct:
            if a.inverse() not in paired:
                paired += [a, a.inverse()]
        else:
            singles.append(a)
    return paired + singles, len(paired) // 2, len(singles)


@lru_cache(maxsize=None)
def _oracle_index(red: tuple, pairs: int, singles: int) -> np.ndarray:
    size = 2 * pairs + singles + 1
    zero = size * size
    rows = []
    for seq in _oracle_table(pairs, singles).get(red, ()):
        for m in _noncrossing_matchings(len(seq)):
            row = [seq[a] * size + seq[b] for a, b in m]
            rows.append(row + [zero] * (ORACLE_BOUND - len(row)))
    return np.array(rows, dtype=np.intp).reshape(-1, ORACLE_BOUND)


def oracle_norm(star: StarMetric, g: Sequence[Letter]) -> Fraction:
    """Brute-force prenorm over the same search space as :func:`graev_norm`."""
    g = tuple(g)
    if len(g) > ORACLE_BOUND:
        raise LengthOverBound(f"oracle handles words up to length {ORACLE_BOUND}")
    _check_letters(star, g)
    g = reduce(g)
    if not g:
        return Fraction(0)
    alphabet, pairs, singles = _canonical_alphabet(g)
    red = tuple(alphabet.index(a) for a in g)
    index = _oracle_index(red, pairs, singles)
    flat = _int_costs(star, alphabet + [NEUTRAL]) + [0]
    dtype = np.int64 if max(flat) < 2 ** 60 // ORACLE_BOUND else object
    costs = np.array(flat, dtype=dtype)[index].sum(axis=1)
    return Fraction(int(costs.min()), star.denominator)


# -- the two-pairing formula for words of B ----------------------------------


def claim1_min(star: StarMetric, g: Sequence[Letter]) -> Fraction:
    """min over the two non-crossing pairings of x y z t that keep letters together.

    For g = x^a y^b z^c t^d: the adjacent pairing (1,2)(3,4) and the nested
    pairing (1,4)(2,3).
    """
    g = tuple(g)
    if not in_B(g):
        raise NotInB(f"{g!r} is not a reduced length-4 word with exponent sum 0")
    _check_letters(star, g)
    x, y, z, t = g
    adjacent = star(x.inverse(), y) + star(z.inverse(), t)
    nested = star(x.inverse(), t) + star(y.inverse(), z)
    return min(adjacent, nested)
