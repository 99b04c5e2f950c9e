from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from graevkit.errors import LengthOutOfRange, UnknownPoint, UnknownToken
from graevkit.words import (
    NEUTRAL,
    Summand,
    classify_f4,
    format_word,
    in_B,
    invert,
    is_reduced,
    multiply,
    neg,
    parse_word,
    pos,
    reduce,
    support,
)

letters = st.builds(lambda p, s: pos(p) if s else neg(p), st.sampled_from("abcd"), st.booleans())
raw_letters = st.one_of(letters, st.just(NEUTRAL))
raw_words = st.lists(raw_letters, max_size=12).map(tuple)
words = raw_words.map(reduce)


def W(text):
    return reduce(parse_word(text))


def naive_reduce(raw):
    w = [a for a in raw if not a.neutral]
    changed = True
    while changed:
        changed = False
        for i in range(len(w) - 1):
            if w[i].point == w[i + 1].point and w[i].exp == -w[i + 1].exp:
                del w[i:i + 2]
                changed = True
                break
    return tuple(w)


def test_reduce_examples():
    assert reduce([pos("u"), neg("u")]) == ()
    assert reduce([pos("u"), NEUTRAL, neg("v")]) == (pos("u"), neg("v"))
    assert reduce([pos("u"), pos("v"), neg("v"), pos("u")]) == (pos("u"), pos("u"))


def test_multiply_and_invert_examples():
    assert multiply(W("u v^-1"), W("v u^-1")) == ()
    assert invert(W("u v^-1 q")) == W("q^-1 v u^-1")
    assert multiply(W("u v"), W("v^-1 w")) == W("u w")


def test_support():
    assert support(W("u v^-1 u")) == {"u", "v"}
    assert support(()) == frozenset()


def test_classify_f4():
    assert classify_f4(()) == (Summand.EVEN, 0)
    assert classify_f4(W("u v^-1 q")) == (Summand.ODD, 3)
    assert classify_f4(W("u v^-1 q r^-1")) == (Summand.EVEN, 4)
    assert Summand.ODD.value == "OddSummand"
    with pytest.raises(LengthOutOfRange):
        classify_f4(W("a b c d a"))


def test_in_B():
    assert in_B(W("u v^-1 q r^-1"))
    assert not in_B(W("u v q^-1 r"))
    assert not in_B(W("u v^-1"))
    assert not in_B((pos("u"), neg("v"), pos("v"), neg("u")))


def test_parse_word():
    assert len(parse_word("u v^-1")) == 2
    raw = parse_word("u u^-1")
    assert len(raw) == 2 and reduce(raw) == ()
    assert parse_word("e") == (NEUTRAL,)
    with pytest.raises(UnknownToken):
        parse_word("u^-2")
    with pytest.raises(UnknownToken):
        parse_word("e^-1")
    with pytest.raises(UnknownPoint):
        parse_word("u z", points=["u"])


def test_format_word():
    assert format_word(()) == "e"
    assert format_word(W("u v^-1"), sep=",") == "u,v^-1"


@given(raw_words)
def test_reduce_matches_naive(raw):
    red = reduce(raw)
    assert red == naive_reduce(raw)
    assert is_reduced(red)
    assert reduce(red) == red


@given(words, words, words)
def test_group_laws(g, h, k):
    assert multiply(multiply(g, h), k) == multiply(g, multiply(h, k))
    assert multiply(g, invert(g)) == ()
    assert invert(invert(g)) == g
    assert invert(multiply(g, h)) == multiply(invert(h), invert(g))


@given(raw_words)
def test_format_parse_round_trip(raw):
    red = reduce(raw)
    assert reduce(parse_word(format_word(red))) == red
