"""Command-line entry point.

Exit status: 0 for success or a true verdict, 1 for a clean false verdict,
2 for any input or usage error.  ``--machine`` switches to one record per
line of space-separated ``key=value`` fields with rationals as ``p/q``.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import converge, graev, nbhd, space as sp
from .errors import GraevError, MetricViolation
from .fixtures import comb_doublecomb_family, comb_space, doublecomb_space
from .formats import format_space, parse_sequence, parse_space
from .rational import format_rational as fr, parse_rational
from .words import format_word, parse_word, reduce

EXIT_OK, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class Report:
    def __init__(self, machine: bool):
        self.machine = machine
        self.records: list[list[tuple[str, str]]] = []

    def add(self, **fields) -> None:
        self.records.append([(k.replace("_", "-"), str(v)) for k, v in fields.items()])

    def render(self) -> str:
        if self.machine:
            return "".join(" ".join(f"{k}={v}" for k, v in rec) + "\n" for rec in self.records)
        return "".join("  ".join(f"{k}: {v}" for k, v in rec) + "\n" for rec in self.records)


def _w(word) -> str:
    return format_word(word, sep=",")


def _scheme(phi) -> str:
    return ",".join(f"{a}-{b}" for a, b in phi) or "-"


def _load_space(args) -> sp.PointedSpace:
    if getattr(args, "space", None):
        return parse_space(Path(args.space).read_text(encoding="utf-8"))
    if args.fixture == "doublecomb":
        return doublecomb_space(args.m)
    return comb_space()


def _word(args, space, attr="word"):
    return reduce(parse_word(" ".join(getattr(args, attr)), space.points))


def _star(args, space):
    rho = sp.yamada(space)
    if args.scale is not None:
        rho = sp.scale(rho, args.scale)
    return sp.star(rho, args.basepoint)


# -- verbs ---------------------------------------------------------------------


def cmd_validate(args, out: Report) -> int:
    try:
        space = _load_space(args)
    except MetricViolation as exc:
        out.add(valid="false", axiom=exc.axiom, witness=",".join(exc.witness))
        return EXIT_FALSE
    kset = ",".join(p for p in space.points if p in space.K) or "-"
    out.add(valid="true", name=space.name, points=len(space), kset=kset)
    return EXIT_OK


def cmd_rho(args, out: Report) -> int:
    space = _load_space(args)
    rho = sp.yamada(space)
    if args.scale is not None:
        rho = sp.scale(rho, args.scale)
    pts = space.points
    for i, x in enumerate(pts):
        for y in pts[i + 1:]:
            out.add(x=x, y=y, d=fr(space.d(x, y)), rho=fr(rho(x, y)), rule=rho.rule(x, y))
    return EXIT_OK


def cmd_stratum(args, out: Report) -> int:
    space = _load_space(args)
    points = [args.point] if args.point else space.points
    for p in points:
        out.add(point=p, dist=fr(sp.dist_to_K(space, p)), stratum=sp.stratum(space, p))
    return EXIT_OK


def cmd_gap_check(args, out: Report) -> int:
    space = _load_space(args)
    rho = sp.yamada(space)
    ks = [args.k] if args.k else range(1, max(sp.deepest_stratum(space), 1) + 1)
    status = EXIT_OK
    for k in ks:
        v = sp.gap_check(space, rho, k)
        if v.passed:
            out.add(k=k, threshold=fr(v.threshold), verdict="pass")
        else:
            x, y, r, t = v.witness
            out.add(k=k, threshold=fr(t), verdict="fail", x=x, y=y, rho=fr(r))
            status = EXIT_FALSE
    return status


def cmd_schemes(args, out: Report) -> int:
    found = graev.schemes(args.n)
    out.add(count=len(found))
    for phi in found:
        out.add(scheme=_scheme(phi))
    return EXIT_OK


def cmd_norm(args, out: Report) -> int:
    space = _load_space(args)
    st = _star(args, space)
    g = _word(args, space)
    if args.oracle:
        out.add(norm=fr(graev.oracle_norm(st, g)))
        return EXIT_OK
    res = graev.graev_norm(st, g)
    out.add(norm=fr(res.value))
    if args.witness:
        out.add(witness=_w(res.word), scheme=_scheme(res.scheme), basepoint=res.basepoint)
    return EXIT_OK


def cmd_claim1(args, out: Report) -> int:
    space = _load_space(args)
    st = _star(args, space)
    g = _word(args, space)
    value = graev.claim1_min(st, g)
    x, y, z, t = g
    adjacent = st(x.inverse(), y) + st(z.inverse(), t)
    nested = st(x.inverse(), t) + st(y.inverse(), z)
    out.add(claim1=fr(value), adjacent=fr(adjacent), nested=fr(nested))
    return EXIT_OK


def cmd_member_un(args, out: Report) -> int:
    space = _load_space(args)
    st = _star(args, space)
    cert = nbhd.in_Un(st, _word(args, space), args.n)
    out.add(verdict=str(cert.verdict).lower(), threshold=fr(cert.threshold), norm=fr(cert.norm.value))
    return EXIT_OK if cert.verdict else EXIT_FALSE


def cmd_member_ug(args, out: Report) -> int:
    space = _load_space(args)
    rho = sp.yamada(space)
    if args.scale is not None:
        rho = sp.scale(rho, args.scale)
    g = reduce(parse_word(args.g, space.points))
    h = _word(args, space)
    cert = nbhd.in_Ug(rho, g, h, args.basepoint)
    if cert.verdict:
        w = cert.witness
        out.add(verdict="true", cost=fr(w.cost), position=w.position, sign=f"{w.sign:+d}",
                y=w.y, z=w.z, spelling=_w(w.spelling))
        return EXIT_OK
    positions, signs, pairs, slots = cert.searched
    out.add(verdict="false", exhausted="true", positions=positions, signs=signs, pairs=pairs,
            slots=",".join(map(str, slots)))
    return EXIT_FALSE


def _parse_test(text: str) -> tuple[Fraction, int]:
    c, _, n = text.partition(":")
    if not n.isdigit():
        raise argparse.ArgumentTypeError(f"expected C:N, got {text!r}")
    return parse_rational(c), int(n)


def cmd_converge(args, out: Report) -> int:
    space = _load_space(args)
    seq = parse_sequence(Path(args.seq).read_text(encoding="utf-8"), space.points)
    target = reduce(parse_word(args.target, space.points))
    cert = converge.check_convergence(space, seq, target, args.test or None, args.basepoint)
    for rec in cert.tests:
        out.add(scale=fr(rec.scale), n=rec.n, threshold=fr(rec.threshold),
                verdict="pass" if rec.verdict else "fail",
                first="-" if rec.first_index is None else rec.first_index,
                failing="-" if rec.failing_index is None else rec.failing_index)
    if cert.consistent:
        out.add(verdict=cert.verdict)
        return EXIT_OK
    (c, n), index = cert.refuted
    out.add(verdict=cert.verdict, scale=fr(c), n=n, index=index)
    return EXIT_FALSE


def cmd_lemma25(args, out: Report) -> int:
    family = comb_doublecomb_family(args.m)
    space = family.sample(range(1, family.depth + 1))
    g = reduce(parse_word(" ".join(args.word), space.points))
    r, k = converge.lemma25_multiplier(sp.yamada(space), g, args.basepoint)
    seq, cert = converge.lemma25_sequence(family, g, args.count, args.basepoint)
    out.add(r=fr(r), k=k)
    for (n, h), rec in zip(seq.items, cert.tests):
        member = rec.members[0][1]
        cost = fr(member.witness.cost) if member.verdict else "-"
        out.add(n=n, scale=fr(rec.scale), word=_w(h), cost=cost, verdict=str(rec.verdict).lower())
    out.add(verdict=cert.verdict)
    return EXIT_OK if cert.consistent else EXIT_FALSE


def cmd_fixture(args, out: Report) -> int:
    space = doublecomb_space(args.m) if args.name == "doublecomb" else comb_space()
    sys.stdout.write(format_space(space))
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="key=value records, one per line")
    src = argparse.ArgumentParser(add_help=False)
    src.add_argument("--space", help="space file (format 1)")
    src.add_argument("--fixture", choices=("comb", "doublecomb"), default="comb")
    src.add_argument("--m", type=int, default=5, help="depth of the doublecomb fixture")
    metric = argparse.ArgumentParser(add_help=False)
    metric.add_argument("--scale", type=_rational_arg, default=None, help="multiply rho by p/q")
    metric.add_argument("--basepoint", default=None, help="x0 for the extension to e (default: first point)")

    parser = argparse.ArgumentParser(prog="graevkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("validate", parents=[common, src], help="validate a space")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("rho", parents=[common, src], help="print the quantized metric table")
    p.add_argument("--scale", type=_rational_arg, default=None)
    p.set_defaults(func=cmd_rho)
    p = sub.add_parser("stratum", parents=[common, src], help="distance to K and shell of each point")
    p.add_argument("--point")
    p.set_defaults(func=cmd_stratum)
    p = sub.add_parser("gap-check", parents=[common, src], help="check the 1/(k+1)^2 gap")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_gap_check)
    p = sub.add_parser("schemes", parents=[common], help="enumerate schemes on 2n positions")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_schemes)
    p = sub.add_parser("norm", parents=[common, src, metric], help="prenorm of a word")
    p.add_argument("word", nargs="+")
    p.add_argument("--oracle", action="store_true", help="use the brute-force oracle")
    p.add_argument("--witness", action="store_true", help="also print the attaining spelling")
    p.set_defaults(func=cmd_norm)
    p = sub.add_parser("claim1", parents=[common, src, metric], help="two-pairing minimum for a word of B")
    p.add_argument("word", nargs="+")
    p.set_defaults(func=cmd_claim1)
    p = sub.add_parser("member-un", parents=[common, src, metric], help="is N(g) < 1/n")
    p.add_argument("word", nargs="+")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_member_un)
    p = sub.add_parser("member-ug", parents=[common, src, metric], help="is h in U(g)")
    p.add_argument("word", nargs="+", help="the word h")
    p.add_argument("--g", required=True, help="the centre word g")
    p.set_defaults(func=cmd_member_ug)
    p = sub.add_parser("converge", parents=[common, src], help="test a word sequence file")
    p.add_argument("--seq", required=True)
    p.add_argument("--target", default="e")
    p.add_argument("--test", action="append", type=_parse_test, help="C:N, repeatable")
    p.add_argument("--basepoint", default=None)
    p.set_defaults(func=cmd_converge)
    p = sub.add_parser("lemma25", parents=[common], help="build and certify the two-letter sequence")
    p.add_argument("word", nargs="+")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--m", type=int, default=20, help="doublecomb depth layered over the comb")
    p.add_argument("--basepoint", default=None)
    p.set_defaults(func=cmd_lemma25)
    p = sub.add_parser("fixture", parents=[common], help="print a shipped fixture as a space file")
    p.add_argument("name", choices=("comb", "doublecomb"))
    p.add_argument("--m", type=int, default=5)
    p.set_defaults(func=cmd_fixture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Report(args.machine)
    try:
        status = args.func(args, out)
    except (GraevError, OSError) as exc:
        sys.stdout.write(out.render())
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(out.render())
    return status


if __name__ == "__main__":
    raise SystemExit(main())
