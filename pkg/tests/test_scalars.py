from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from linfext.scalars import (PARAM, Poly, PoleError, RationalFunction, ScalarError, evaluate_parameter,
                             make_rational_function, normalize, parse_scalar, render_scalar)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def scalars(draw):
    num = draw(st.lists(small, min_size=1, max_size=3))
    den = draw(st.lists(small, min_size=1, max_size=3).filter(lambda c: any(c)))
    return make_rational_function(Poly(num), Poly(den))


nonzero = scalars().filter(bool)


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + 0 == a and a * 1 == a
    assert a - a == 0


@settings(max_examples=40, deadline=None)
@given(nonzero)
def test_inverse(a):
    assert a * (1 / a) == 1


@settings(max_examples=40, deadline=None)
@given(scalars())
def test_render_parse_round_trip(a):
    assert parse_scalar(render_scalar(a)) == a


@settings(max_examples=40, deadline=None)
@given(scalars(), scalars(), small)
def test_evaluation_is_a_homomorphism(a, b, x):
    try:
        va, vb = evaluate_parameter(a, x), evaluate_parameter(b, x)
        vab = evaluate_parameter(a * b, x)
        vsum = evaluate_parameter(a + b, x)
    except PoleError:
        return
    assert vab == va * vb
    assert vsum == va + vb


def test_constants_are_demoted():
    assert isinstance(PARAM / PARAM, Fraction)
    assert normalize(3) == Fraction(3)
    assert (PARAM + 1) * (PARAM - 1) / (PARAM + 1) == PARAM - 1


def test_pole_and_zero_denominator():
    with pytest.raises(PoleError):
        evaluate_parameter(1 / (PARAM - 2), 2)
    with pytest.raises(ScalarError):
        make_rational_function(Poly((1,)), Poly(()))


def test_render():
    assert render_scalar(Fraction(-3, 4)) == "-3/4"
    assert isinstance(PARAM, RationalFunction)
    assert parse_scalar("(c+1)/(c-1)") == (PARAM + 1) / (PARAM - 1)
