from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import KNOWN_TERMS
from permgrid.gf import (
    CLOSED_FORMS,
    DERIVED_CLOSED_FORMS,
    ExpressionError,
    SeriesExpr,
    closed_form,
    expand,
    parse_expr,
    verify_algebraic,
)
from permgrid.grammar import builtin_grammar, start_series
from permgrid.series import SeriesError, TruncatedSeries

ints = st.integers(-20, 20)


def series_strategy(order=8, unit=False):
    return st.lists(ints, min_size=order + 1, max_size=order + 1).map(
        lambda cs: TruncatedSeries([1] + cs[1:] if unit else cs)
    )


# --- TruncatedSeries ---------------------------------------------------------

def test_basic_arithmetic():
    a = TruncatedSeries([1, 2, 3])
    b = TruncatedSeries([0, 1])
    assert (a + b).coeffs == (1, 3)
    assert (a * b).coeffs == (0, 1)
    assert (a * 2).coeffs == (2, 4, 6)
    assert (a - a).valuation() is None
    assert TruncatedSeries.geometric(4).coeffs == (1, 1, 1, 1, 1)


@given(series_strategy(), series_strategy())
def test_ring_laws(a, b):
    assert a * b == b * a
    assert (a + b) - b == a


@given(series_strategy(unit=True))
def test_reciprocal(a):
    assert (a * a.reciprocal()).coeffs == (1,) + (0,) * a.order


@given(series_strategy(unit=True))
@settings(max_examples=50)
def test_sqrt_by_squaring(a):
    r = a.sqrt()
    assert r * r == a


def test_sqrt_binomial_series():
    # sqrt(1-4z) = 1 - 2 sum Catalan(k-1) z^k
    s = expand("sqrt(1-4*z)", 3)
    assert s.coeffs == (1, -2, -2, -4)
    big = expand("sqrt(1-4*z)", 30)
    assert [-c // 2 for c in big.coeffs[1:]] == [comb(2 * k, k) // (k + 1) for k in range(30)]


def test_sqrt_requires_unit_constant():
    with pytest.raises(SeriesError, match="constant term 1"):
        TruncatedSeries([4, 1]).sqrt()


def test_shift_down_pole():
    with pytest.raises(SeriesError, match="uncancelled pole"):
        TruncatedSeries([1, 0, 1]).shift_down(1)


def test_exactness():
    s = TruncatedSeries([1, 1]) / 3
    assert s.coeffs == (Fraction(1, 3), Fraction(1, 3))
    assert not s.is_integral()
    with pytest.raises(SeriesError):
        s.to_integers()
    with pytest.raises(SeriesError, match="float"):
        TruncatedSeries([1.0]).is_integral()


# --- expressions -------------------------------------------------------------

@pytest.mark.parametrize("text", list(CLOSED_FORMS.values()) + list(DERIVED_CLOSED_FORMS.values())
                         + ["1+z", "-(z^2)/3", "sqrt(1-z)*sqrt(1-z)"])
def test_expression_print_parse_roundtrip(text):
    tree = parse_expr(text)
    assert parse_expr(str(tree)) == tree


@pytest.mark.parametrize("bad", ["1+", "sqrt 1-z", "z^x", "(1+z", "1 $ z"])
def test_expression_errors(bad):
    with pytest.raises(ExpressionError):
        parse_expr(bad)


def test_uncancelled_pole_in_expression():
    with pytest.raises(SeriesError):
        expand("1/z", 5)


def test_removable_singularity():
    assert expand("(1-sqrt(1-4*z))/(2*z)", 6, counting=True).coeffs == (1, 1, 2, 5, 14, 42, 132)


def test_catalan_plus_branch_is_not_a_counting_series():
    with pytest.raises(SeriesError):
        expand("(1+sqrt(1-4*z))/(2*z)", 6)


@pytest.mark.parametrize("label", ["A", "B"])
def test_published_closed_forms_match_terms(label):
    assert list(expand(closed_form(label), 12, counting=True))[1:] == KNOWN_TERMS[label]


@pytest.mark.parametrize("label", ["A", "B"])
def test_closed_forms_match_grammar_order_200(label):
    g = builtin_grammar(f"class{label}")
    assert expand(closed_form(label), 200, counting=True) == start_series(g, 200)


def test_class_c_closed_form_only_when_derived():
    with pytest.raises(KeyError):
        closed_form("C")
    derived = expand(closed_form("C", derived=True), 200, counting=True)
    assert derived == start_series(builtin_grammar("classC"), 200)
    assert list(derived)[1:13] == KNOWN_TERMS["C"]


@pytest.mark.parametrize("radicand", ["1-4*z", "1-5*z", "1-z", "1-6*z+5*z^2"])
def test_radicands_square_back(radicand):
    r = expand(f"sqrt({radicand})", 60)
    assert r * r == expand(radicand, 60)


@pytest.mark.parametrize("label", ["A", "B", "C"])
def test_verify_algebraic(label):
    assert verify_algebraic(label, 50)


def test_series_expr_wrapper():
    e = SeriesExpr("1/(1-z)")
    assert e.expand(3).coeffs == (1, 1, 1, 1)
    assert "SeriesExpr" in repr(e)
