import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pillowtwist.slope import (
    INFINITY,
    ONE,
    ZERO,
    Slope,
    TwistMove,
    TwistWord,
    apply_twist,
    apply_word,
    intersection_number,
    reduce_slope,
)


def test_normalization():
    assert Slope(2, 4) == Slope(1, 2)
    assert Slope(-2, -4) == Slope(1, 2)
    assert Slope(2, -4) == Slope(-1, 2)
    assert Slope(-7, 0) == Slope(1, 0)
    assert Slope(0, -3) == Slope(0, 1)
    with pytest.raises(ValueError):
        Slope(0, 0)


def test_parse_and_str():
    assert Slope.parse("inf") == INFINITY
    assert Slope.parse("-4/5") == Slope(-4, 5)
    assert Slope.parse("3") == Slope(3, 1)
    assert str(INFINITY) == "inf"
    assert str(Slope(-4, 5)) == "-4/5"


def test_intersection_examples():
    assert intersection_number(ZERO, INFINITY) == 2
    assert intersection_number(Slope(2, 3), Slope(4, 5)) == 4
    assert intersection_number(Slope(-4, 5), Slope(-4, 5)) == 0


def test_twist_paper_examples():
    # tau_inf^n(0/1) = 2n/1
    for n in (1, 2, -3):
        assert apply_twist(TwistMove(INFINITY, n), ZERO) == Slope(2 * n, 1)
    # tau_0^n(1/0) = -1/2n
    for n in (1, 2, -3):
        assert apply_twist(TwistMove(ZERO, n), INFINITY) == Slope(-1, 2 * n)
    # tau_1^n(0/1) = 2n/(2n+1)
    for n in (1, 2, -3):
        assert apply_twist(TwistMove(ONE, n), ZERO) == Slope(2 * n, 2 * n + 1)


def test_twist_composition_is_power():
    # Applying tau^1 twice equals tau^2 along any axis, including the cases
    # where the target crosses the axis line.
    axis = ZERO
    s = INFINITY
    once = apply_twist(TwistMove(axis, 1), s)
    twice = apply_twist(TwistMove(axis, 1), once)
    assert twice == apply_twist(TwistMove(axis, 2), s)
    assert once == Slope(-1, 2)
    assert twice == Slope(-1, 4)


slopes = st.builds(
    lambda a, b: Slope(a, b) if (a, b) != (0, 0) else Slope(1, 1),
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=-40, max_value=40),
)
moves = st.builds(
    TwistMove,
    slopes,
    st.integers(min_value=-5, max_value=5).filter(lambda n: n != 0),
)


@given(moves, slopes)
@settings(max_examples=300)
def test_twist_inverse_property(move, s):
    assert apply_twist(move.inverse(), apply_twist(move, s)) == s


@given(moves, slopes)
@settings(max_examples=300)
def test_twist_preserves_numerator_parity(move, s):
    assert apply_twist(move, s).a % 2 == s.a % 2


@given(moves, slopes, slopes)
@settings(max_examples=300)
def test_twist_preserves_intersection(move, s1, s2):
    t1 = apply_twist(move, s1)
    t2 = apply_twist(move, s2)
    assert intersection_number(t1, t2) == intersection_number(s1, s2)


def test_word_canonical_form():
    w = TwistWord(
        (
            TwistMove(INFINITY, 1),
            TwistMove(INFINITY, 2),
            TwistMove(ZERO, 1),
            TwistMove(ZERO, -1),
            TwistMove(INFINITY, -3),
        )
    )
    # inf^1 inf^2 merge to inf^3; zero moves cancel; inf^3 inf^-3 cancel.
    assert len(w) == 0


def test_word_apply_and_inverse():
    w = TwistWord((TwistMove(INFINITY, 2), TwistMove(ZERO, -1)))
    s = Slope(5, 7)
    assert apply_word(TwistWord(()), s) == s
    assert apply_word(TwistWord((TwistMove(INFINITY, 1),)), ZERO) == Slope(2, 1)
    assert apply_word(w.inverse(), apply_word(w, s)) == s


def test_reduce_terminals():
    term, word = reduce_slope(ZERO)
    assert term == ZERO and len(word) == 0
    term, word = reduce_slope(Slope(2, 1))
    assert term == ZERO
    assert word.moves == (TwistMove(INFINITY, -1),)
    term, _ = reduce_slope(INFINITY)
    assert term == INFINITY
    term, _ = reduce_slope(Slope(-1, 1))
    assert term == ONE


@pytest.mark.parametrize("a,b", [(-4, 5), (2, 1), (17, 12), (-101, 77), (999, 1000)])
def test_reduce_roundtrip(a, b):
    s = Slope(a, b)
    term, word = reduce_slope(s)
    assert apply_word(word, s) == term
    if s.a % 2 == 0:
        assert term == ZERO
    else:
        assert term in (INFINITY, ONE)
    # Axes are restricted to 0/1 and 1/0.
    for mv in word:
        assert mv.axis in (ZERO, INFINITY)


@given(slopes)
@settings(max_examples=300)
def test_reduce_roundtrip_property(s):
    term, word = reduce_slope(s)
    assert apply_word(word, s) == term
    assert term in (ZERO, ONE, INFINITY)
    assert apply_word(word.inverse(), term) == s
