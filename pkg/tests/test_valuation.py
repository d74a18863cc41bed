import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from poissonfield.arith import X, Y
from poissonfield.bracket import PoissonField
from poissonfield.errors import NotDistinctForms, Unsupported
from poissonfield.forms import factor_flag
from poissonfield.parse import parse
from poissonfield.valuation import (
    MonomialValuation,
    gamma1_zero,
    height,
    is_flabby,
    mono_val,
    recognize,
    verify_witness,
    w_level,
)
from strategies import polys, ratfuncs

nus = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def field(text, mode="q"):
    return PoissonField.from_text(text, mode)


@given(polys(5, 6), nus)
def test_mono_val_matches_brute_force(pt, nu):
    p, terms = pt
    expected = oracles.brute_mono_val(terms, nu)
    assert mono_val(nu, p) == (math.inf if expected is None else expected)


@given(ratfuncs(), ratfuncs(), nus)
def test_valuation_axioms(a, b, nu):
    va, vb = mono_val(nu, a), mono_val(nu, b)
    assert (va == math.inf) == (not a)
    assert mono_val(nu, a * b) == va + vb
    assert mono_val(nu, a + b) >= min(va, vb)
    if va != vb:
        assert mono_val(nu, a + b) == min(va, vb)


def test_scalars_have_value_zero():
    assert mono_val((3, -2), parse("7/3")) == 0
    assert MonomialValuation(-1, -1)(parse("x^2*y - 1/2")) == -3


def test_w_level():
    assert w_level((-1, -1), X ** 5 * Y) == 4
    assert w_level((1, 0), X * Y) == 0


@pytest.mark.parametrize("text, flabby", [
    ("x*y*(x+y)*(x+2*y)", True),
    ("x*y*(x-1)*(x+1)*(y-1)*(y+1)", True),
    ("x*y*(x+y)", False),
    ("x*(x-1)*(x-2)*y", False),
])
def test_is_flabby(text, flabby):
    assert is_flabby(text).flabby is flabby


def test_is_flabby_rejects():
    with pytest.raises(NotDistinctForms):
        is_flabby("x^2*y*(x+y)*(x-y)")
    with pytest.raises(NotDistinctForms):
        is_flabby("x^2 + y^2")


def test_recognize_families():
    assert recognize(field("x*y")).family == "canonical"
    assert recognize(field("(x^2-1)*x*y")).family == "family2"
    assert recognize(field("x*y*(x+y)*(x+2*y)")).family == "flabby"
    assert recognize(field("x^2 + y^3")).family is None


def test_height_rows():
    assert height(field("1")).summary() == "fht=0 vht1=-inf witness=(-1,-1)@w=-2"
    assert height(field("x^5*y")).summary() == "fht=6 vht1=6 witness=(-1,-1)@w=4"
    r = height(field("(x^3-x)*x*y"))
    assert (r.flag_height, r.valuation_height1) == (5, 5) and r.cohereditary
    r = height(field("x*y*(x-1)*(x+1)*(y-1)*(y+1)"))
    assert (r.flag_height, r.valuation_height1) == (6, 6)
    with pytest.raises(Unsupported):
        height(field("x^2 + y^3"))


def test_verify_witness():
    K = field("x^4*y")
    assert verify_witness(K, (-1, -1), 3)
    assert not verify_witness(K, (-1, -1), 4)
    assert not verify_witness(K, (1, 1), 99)


def test_gamma1_zero():
    assert gamma1_zero(field("x*y")).ring == "k"
    assert gamma1_zero(field("x^3*y")).ring == "k[x]"
    assert gamma1_zero(field("(y^2+1)*x*y")).ring == "k[y]"
    assert gamma1_zero(field("x*y*(x+y)*(x+2*y)")).ring == "k[x,y]"
    with pytest.raises(Unsupported):
        gamma1_zero(field("x^2 + y^3"))


def test_factored_input_negative_exponents():
    ff = factor_flag("x^(-2)*y*(x-2)^(-1)", allow_negative=True)
    assert ff.expand() == Y / (X ** 2 * (X - 2))
