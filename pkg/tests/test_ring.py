from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mtk.ring import (
    DELTA, HUMAN_NAMES, ONE, ONE_MINUS_Q, Q, T, V, VINV, ZERO, BiLaurent, InexactDivision,
    RatFn, parse_poly, series_expand,
)

coeff = st.integers(-5, 5)
bilaurents = st.dictionaries(
    st.tuples(st.integers(-4, 4), st.integers(-2, 2)), coeff, max_size=5
).map(BiLaurent)


@given(bilaurents, bilaurents, bilaurents)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(bilaurents, bilaurents)
def test_exact_division_undoes_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a


def test_inexact_division_raises():
    with pytest.raises(InexactDivision):
        (ONE + V).exact_div(ONE - V)


def test_bar_involution():
    assert (V + T).bar() == VINV + T
    assert DELTA.bar() == -DELTA


def test_unit_powers():
    assert V ** -2 == BiLaurent.monomial(1, -2)
    with pytest.raises(Exception):
        (ONE + V) ** -1


@given(bilaurents)
def test_json_round_trip(a):
    assert BiLaurent.from_json(a.to_json()) == a


def test_formatting():
    assert str(VINV + BiLaurent.monomial(1, 2, 1)) == "v^-1 + v^2 t"
    assert str(-T) == "-t"
    assert str(ZERO) == "0"
    assert RatFn(parse_poly("v^-1 + q t"), ONE_MINUS_Q).format() == "(v^-1 + v^2 t)/(1 - v^2)"
    assert RatFn(parse_poly("v^-1 + q t"), ONE_MINUS_Q).format(HUMAN_NAMES) == "(q^-1/2 + q t)/(1 - q)"


def test_parse_poly():
    assert parse_poly("q") == Q
    assert parse_poly("(1 - q)^2") == ONE_MINUS_Q * ONE_MINUS_Q
    assert parse_poly("-t + 2v^-3") == -T + BiLaurent.monomial(2, -3)
    with pytest.raises(ValueError):
        parse_poly("x")


def test_ratfn_equality_and_reduction():
    a = RatFn(ONE - Q * Q, ONE_MINUS_Q)
    assert a == ONE + Q
    r = a.reduced()
    assert r.den == ONE and r.num == ONE + Q
    assert RatFn(V, ONE).is_laurent()
    with pytest.raises(ZeroDivisionError):
        RatFn(ONE, ZERO)


@given(bilaurents, st.integers(1, 3))
def test_reduced_is_equal(num, k):
    f = RatFn(num * ONE_MINUS_Q, ONE_MINUS_Q ** k)
    assert f.reduced() == f


@given(st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(0, 2)), coeff, max_size=4).map(BiLaurent),
       st.integers(1, 3))
def test_series_multiply_back(num, k):
    den = ONE_MINUS_Q ** k
    cutoff = 12
    window = series_expand(RatFn(num, den), cutoff)
    prod = window.partial_sum() * den
    for (ev, et), c in (prod - num).items():
        assert ev > cutoff, (ev, et, c)


def test_series_of_geometric():
    w = series_expand(RatFn(ONE, ONE_MINUS_Q), 10)
    assert [w.coefficient(k) for k in range(0, 11, 2)] == [(1,)] * 6
    assert w.coefficient(1) == ()


def test_series_rejects_t_in_lowest_denominator_term():
    with pytest.raises(ValueError):
        series_expand(RatFn(ONE, T + V), 5)


def test_evaluate():
    assert (V + T).evaluate(Fraction(1, 2), 3) == Fraction(7, 2)
