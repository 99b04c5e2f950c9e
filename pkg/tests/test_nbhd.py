from __future__ import annotations

import random
from dataclasses import replace
from fractions import Fraction as F

import pytest

from graevkit.errors import EmptyWord, LengthOverBound, NotAdmissible
from graevkit.graev import graev_norm
from graevkit.nbhd import admissible, in_Ug, in_Un, revalidate
from graevkit.space import scale, star
from graevkit.words import Letter, invert, multiply, neg, pos


def test_in_Un_boundary(rho_star, W):
    g = W("u v^-1")
    assert in_Un(rho_star, g, 5).verdict
    cert = in_Un(rho_star, g, 6)
    assert not cert.verdict
    assert cert.threshold == F(1, 6)
    assert cert.norm.value == F(1, 6)
    assert revalidate(cert, rho_star)
    assert in_Un(rho_star, (), 1000).verdict
    with pytest.raises(ValueError):
        in_Un(rho_star, g, 0)


def test_admissible(rho, W):
    g = W("u v^-1")
    assert not admissible(star(rho), g)
    assert admissible(star(scale(rho, 6)), g)
    assert admissible(star(rho), W("u v"))
    assert admissible(star(rho), W("u"))
    with pytest.raises(EmptyWord):
        admissible(star(rho), ())


def test_in_Ug_worked_instance(rho, W):
    six = scale(rho, 6)
    cert = in_Ug(six, W("u v^-1"), W("u q r^-1 v^-1"))
    assert cert.verdict
    w = cert.witness
    assert (w.position, w.sign, w.y, w.z) == (1, 1, "q", "r")
    assert w.xs == (pos("u"), neg("v"))
    assert w.cost == F(1, 15)
    assert revalidate(cert, six)


def test_in_Ug_contains_g(rho, W):
    six = scale(rho, 6)
    g = W("u v^-1")
    cert = in_Ug(six, g, g)
    assert cert.verdict
    assert cert.witness.y == cert.witness.z
    assert cert.witness.cost == 0


def test_in_Ug_exhaustion(rho, W):
    six = scale(rho, 6)
    cert = in_Ug(six, W("u v^-1"), W("p1 q r^-1 v^-1"))
    assert not cert.verdict
    assert cert.exhausted
    assert revalidate(cert, six)
    # wrong parity cannot come from a single inserted pair
    assert not in_Ug(six, W("u v^-1"), W("u q v^-1")).verdict


def test_in_Ug_errors(rho, W):
    with pytest.raises(NotAdmissible):
        in_Ug(rho, W("u v^-1"), W("u v^-1"))
    with pytest.raises(LengthOverBound):
        in_Ug(scale(rho, 6), W("u v^-1"), W("u q r^-1 w q^-1"))


def test_tampered_witness_fails_revalidation(rho, W):
    six = scale(rho, 6)
    cert = in_Ug(six, W("u v^-1"), W("u q r^-1 v^-1"))
    bad = replace(cert, witness=replace(cert.witness, cost=F(1, 16)))
    assert not revalidate(bad, six)


def test_downscale_monotonicity(comb, rho):
    """Shrinking the metric can only grow U(g): h in U_c(g) implies h in U_c'(g) for c' <= c."""
    rng = random.Random(11)
    g = (pos("u"), neg("v"))
    pts = comb.points
    checked = 0
    while checked < 50:
        c_big = F(rng.randint(6, 40))
        c_small = F(rng.randint(6, int(c_big)))
        y, z = rng.choice(pts), rng.choice(pts)
        x1, x2 = rng.choice(pts), rng.choice(pts)
        h = (Letter(x1, 1), Letter(y, 1), Letter(z, -1), Letter(x2, -1))
        big = in_Ug(scale(rho, c_big), g, h)
        small = in_Ug(scale(rho, c_small), g, h)
        if big.verdict:
            assert small.verdict
        checked += 1


def test_members_of_Ug_are_close_to_g(rho, W):
    """Every member of U(g) under c*rho sits within prenorm distance < 1 of g."""
    six = scale(rho, 6)
    st6 = star(six)
    g = W("u v^-1")
    for text in ("u q r^-1 v^-1", "u v^-1", "w v^-1", "u r q^-1 v^-1"):
        h = W(text)
        cert = in_Ug(six, g, h)
        if cert.verdict:
            assert graev_norm(st6, multiply(invert(g), h)).value < 1
