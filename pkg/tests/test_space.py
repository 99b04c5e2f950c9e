from __future__ import annotations

import itertools
import random
from fractions import Fraction as F

import pytest

from graevkit.errors import (
    DuplicatePoint,
    EmptyIndexSet,
    GraevError,
    MetricViolation,
    MissingDistance,
    NonpositiveScale,
    UnknownFamily,
    UnknownPoint,
)
from graevkit.fixtures import comb_doublecomb_family, doublecomb_space
from graevkit.rational import INF
from graevkit.space import (
    Stratum,
    deepest_stratum,
    dist_to_K,
    doublecomb,
    gap_check,
    line_space,
    make_space,
    metric_from_table,
    sample_family,
    scale,
    star,
    stratum,
    yamada,
)
from graevkit.words import NEUTRAL, neg, pos
from helpers import random_space


def test_line_embedding_is_valid():
    s = make_space("abc", {("a", "b"): F(1, 2), ("b", "c"): F(1, 2), ("a", "c"): 1})
    assert s.d("c", "a") == 1
    assert len(s) == 3


def test_triangle_violation_witness():
    with pytest.raises(MetricViolation) as exc:
        make_space("abc", {("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 3})
    assert exc.value.axiom == "triangle"
    assert exc.value.witness == ("a", "c", "b")


def test_identity_violation():
    with pytest.raises(MetricViolation) as exc:
        make_space("ab", {("a", "b"): 0})
    assert exc.value.axiom == "identity"
    assert exc.value.witness == ("a", "b")


def test_symmetry_violation():
    with pytest.raises(MetricViolation) as exc:
        make_space("ab", {("a", "b"): 1, ("b", "a"): 2})
    assert exc.value.axiom == "symmetry"


def test_table_errors():
    with pytest.raises(MissingDistance) as exc:
        make_space("abc", {("a", "b"): 1, ("b", "c"): 1})
    assert exc.value.pair == ("a", "c")
    with pytest.raises(DuplicatePoint):
        make_space(["a", "a"], {})
    with pytest.raises(UnknownPoint):
        make_space("ab", {("a", "z"): 1})
    with pytest.raises(UnknownPoint):
        make_space("ab", {("a", "b"): 1}, K=["z"])
    with pytest.raises(GraevError):
        make_space(["e", "a"], {("e", "a"): 1})


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        make_space("ab", {("a", "b"): 0.5})


def test_dist_to_K():
    dc = doublecomb_space(3)
    assert dist_to_K(dc, "c3") == F(1, 3)
    assert dist_to_K(dc, "k") == 0
    no_k = line_space({"a": 0, "b": 1}, K=[])
    assert dist_to_K(no_k, "a") is INF
    assert INF > F(10**9)


@pytest.mark.parametrize(
    "point, expected",
    [("k", "K"), ("p1", "W1"), ("u", "W2"), ("w", "W2"), ("v", "W3"), ("q", "W9"), ("r", "W9")],
)
def test_comb_strata(comb, point, expected):
    assert str(stratum(comb, point)) == expected


def test_stratum_boundaries():
    s = line_space({"k": 0, "a": F(1, 2), "b": F(1, 3), "c": F(2, 5)}, K=["k"])
    # 1/i lands in W_i, just below lands deeper
    assert stratum(s, "a") == Stratum(2)
    assert stratum(s, "b") == Stratum(3)
    assert stratum(s, "c") == Stratum(3)
    empty = line_space({"a": 0, "b": 1})
    assert stratum(empty, "a") == Stratum(1)
    assert deepest_stratum(empty) == 1


def test_yamada_rules_on_comb(rho):
    expected = {
        ("u", "v"): (F(1, 6), 2),
        ("u", "w"): (F(1, 6), 3),
        ("q", "r"): (F(1, 90), 3),
        ("u", "r"): (F(79, 200), 4),
        ("v", "q"): (F(341, 900), 4),
        ("p1", "u"): (F(1, 2), 2),
        ("k", "u"): (F(51, 100), 4),
    }
    for (x, y), (value, rule) in expected.items():
        assert rho(x, y) == value
        assert rho(y, x) == value
        assert rho.rule(x, y) == rule


def test_yamada_is_a_metric_on_random_spaces():
    rng = random.Random(7)
    for _ in range(60):
        s = random_space(rng)
        rho = yamada(s)
        rho.validate()
        for x, y in itertools.combinations(s.points, 2):
            assert rho(x, y) >= s.d(x, y)


def test_yamada_keeps_d_near_K():
    s = line_space({"k": 0, "a": F(1, 100), "b": F(1, 50)}, K=["k"])
    rho = yamada(s)
    assert rho("k", "a") == F(1, 100)
    assert rho.rule("k", "a") == 4


def test_scale(rho):
    six = scale(rho, 6)
    assert six("u", "v") == 1
    assert six.scale_factor == 6
    six.validate()
    with pytest.raises(NonpositiveScale):
        scale(rho, 0)
    with pytest.raises(NonpositiveScale):
        scale(rho, F(-1, 2))


def test_star_values(rho):
    st = star(rho, "k")
    assert st(NEUTRAL, pos("u")) == F(151, 100)
    assert st(neg("u"), NEUTRAL) == F(151, 100)
    assert st(neg("u"), neg("v")) == F(1, 6)
    assert st(pos("u"), pos("v")) == F(1, 6)
    # opposite signs route through e
    assert st(neg("u"), pos("v")) == st(neg("u"), NEUTRAL) + st(NEUTRAL, pos("v"))
    assert st(neg("u"), pos("v")) == 3
    assert st(NEUTRAL, NEUTRAL) == 0
    assert st(pos("u"), neg("u")) == 2 * st.to_e("u")


def test_star_defaults_and_errors(rho):
    assert star(rho).basepoint == "k"
    with pytest.raises(UnknownPoint):
        star(rho, "zz")


def test_star_is_a_metric(rho):
    for base in ("k", "p1"):
        st = star(scale(rho, F(7, 3)), base)
        dom = st.domain()
        for a, b, c in itertools.product(dom, repeat=3):
            assert st(a, b) == st(b, a)
            assert st(a, c) <= st(a, b) + st(b, c)
        for a in dom:
            assert st(a, a) == 0


def test_star_int_tables_match(rho):
    st = star(scale(rho, F(7, 5)), "p1")
    for a, b in itertools.product(st.domain(), repeat=2):
        assert F(st.int_value(a, b), st.denominator) == st(a, b)


def test_gap_check_passes_on_comb(comb, rho):
    for k in range(1, deepest_stratum(comb) + 1):
        assert gap_check(comb, rho, k).passed


def test_gap_instance_u(comb, rho):
    assert dist_to_K(comb, "u") >= F(1, 2)
    assert min(rho("u", y) for y in comb.points if y != "u") == F(1, 6)
    assert gap_check(comb, rho, 2).threshold == F(1, 9)


def test_gap_check_fabricated_failure():
    s = line_space({"k": 0, "x": 1, "y": F(11, 10)}, K=["k"])
    table = {("k", "x"): 1, ("k", "y"): F(11, 10), ("x", "y"): F(1, 10)}
    verdict = gap_check(s, metric_from_table(s, table), 2)
    assert not verdict.passed
    assert verdict.witness == ("x", "y", F(1, 10), F(1, 9))


def test_sample_family():
    s = sample_family("doublecomb", [2, 3])
    assert s.points == ("k", "c2", "c2p", "c3", "c3p")
    assert s.d("c2", "c2p") == F(1, 12)
    with pytest.raises(UnknownFamily):
        sample_family("nope", [1])
    with pytest.raises(EmptyIndexSet):
        sample_family(doublecomb(3), [])


def test_layered_family_identifies_collisions():
    fam = comb_doublecomb_family(9)
    assert fam.twins(1) == ("p1", "c1p")
    assert fam.twins(9) == ("q", "c9p")
    assert fam.twins(4) == ("c4", "c4p")
    pts = fam.sample(range(1, 10)).points
    assert "c1" not in pts and "c9" not in pts
    assert {"u", "v", "w", "r"} <= set(pts)
