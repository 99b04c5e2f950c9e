"""Line-oriented text formats for spaces and word sequences.

Both formats start with ``format 1``; ``#`` starts a comment.

Space file::

    format 1
    space comb
    point k
    point u
    kset k
    d k u 51/100

Sequence file::

    format 1
    tail 3
    scale 2 7/1
    u v^-1
    e
"""

from __future__ import annotations

from fractions import Fraction

from .converge import WordSequence
from .errors import GraevError, MetricViolation, ParseError
from .rational import format_rational, parse_rational
from .space import POINT_RE, PointedSpace, make_space
from .words import format_word, parse_word, reduce

FORMAT_VERSION = "1"


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


def _check_version(lines):
    try:
        n, toks = next(lines)
    except StopIteration:
        raise ParseError(1, "empty input; expected 'format 1'") from None
    if toks != ["format", FORMAT_VERSION]:
        raise ParseError(n, f"expected 'format {FORMAT_VERSION}', got {' '.join(toks)!r}")


def _rational(n: int, text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise ParseError(n, str(exc)) from None


def parse_space(text: str) -> PointedSpace:
    lines = _lines(text)
    _check_version(lines)
    name = "space"
    points: list[str] = []
    K: list[str] = []
    dists: dict = {}
    for n, toks in lines:
        head, args = toks[0], toks[1:]
        if head == "space" and len(args) == 1:
            name = args[0]
        elif head == "point" and len(args) == 1:
            if not POINT_RE.match(args[0]) or args[0] == "e":
                raise ParseError(n, f"invalid point identifier {args[0]!r}")
            points.append(args[0])
        elif head == "kset":
            for p in args:
                if p not in points:
                    raise ParseError(n, f"kset refers to undeclared point {p!r}")
            K.extend(args)
        elif head == "d" and len(args) == 3:
            a, b, value = args
            for p in (a, b):
                if p not in points:
                    raise ParseError(n, f"distance refers to undeclared point {p!r}")
            q = _rational(n, value)
            key = (a, b) if (b, a) not in dists else (b, a)
            if key in dists and dists[key] != q:
                raise MetricViolation("symmetry", (a, b))
            dists[key] = q
        else:
            raise ParseError(n, f"cannot parse {' '.join(toks)!r}")
    return make_space(points, dists, K, name=name)


def format_space(space: PointedSpace) -> str:
    out = [f"format {FORMAT_VERSION}", f"space {space.name}"]
    out += [f"point {p}" for p in space.points]
    out.append(" ".join(["kset"] + [p for p in space.points if p in space.K]))
    for (a, b), q in space.distances().items():
        out.append(f"d {a} {b} {format_rational(q)}")
    return "\n".join(out) + "\n"


def parse_sequence(text: str, points=None) -> WordSequence:
    lines = _lines(text)
    _check_version(lines)
    tail = 1
    scales = []
    words = []
    for n, toks in lines:
        if toks[0] == "tail":
            if len(toks) != 2 or not toks[1].isdigit() or int(toks[1]) < 1:
                raise ParseError(n, "expected 'tail <positive index>'")
            tail = int(toks[1])
        elif toks[0] == "scale":
            if len(toks) != 3 or not toks[1].isdigit():
                raise ParseError(n, "expected 'scale <index> <p>/<q>'")
            q = _rational(n, toks[2])
            if q <= 0:
                raise ParseError(n, "scale must be positive")
            scales.append((int(toks[1]), q))
        else:
            try:
                words.append(reduce(parse_word(" ".join(toks), points)))
            except GraevError as exc:
                raise ParseError(n, str(exc)) from None
    return WordSequence.of(words, tail=tail, scales=sorted(scales))


def format_sequence(seq: WordSequence) -> str:
    out = [f"format {FORMAT_VERSION}", f"tail {seq.tail}"]
    out += [f"scale {i} {format_rational(q)}" for i, q in seq.scales]
    out += [format_word(w) for _, w in seq.items]
    return "\n".join(out) + "\n"
