from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from poissonfield.arith import X, Y
from poissonfield.bracket import PoissonField, bracket
from poissonfield.classify import (
    ChangeOfVars,
    K1n0,
    Kq,
    OutsideScope,
    Weyl,
    affine_change,
    canonicalize_family1,
    classify_flag,
    iso_decide_canonical,
)
from strategies import nonzero_small, small


def field(text, mode="q"):
    return PoissonField.from_text(text, mode)


@pytest.mark.parametrize("text, expected", [
    ("1", Weyl()),
    ("x + y", Weyl()),
    ("x*(y+2)^2", Weyl()),
    ("x*y*(x+y)", Weyl()),
    ("x*y", Kq(1)),
    ("x*y*(y-1)", Kq(1)),
    ("(3*x+2)*x*y", Kq(2)),
    ("-5*x*y", Kq(-5)),
    ("x^3*y", K1n0(2)),
    ("8*x^4*y", K1n0(3)),
    ("x^2*y", Weyl()),
])
def test_fixtures(text, expected):
    c = classify_flag(field(text))
    assert c.resolved and c.verified
    assert iso_decide_canonical(c.type, expected)


def test_qt_mode_result():
    c = classify_flag(field("t*x*y", "qt"))
    assert c.verified and isinstance(c.type, Kq)
    c = classify_flag(field("t*x^3*y", "qt"))
    assert c.verified and isinstance(c.type, K1n0) and c.type.n == 2


def test_outside_scope():
    c = classify_flag(field("x^2 + y^3"))
    assert isinstance(c.type, OutsideScope) and not c.resolved


@given(st.sampled_from([Weyl(), Kq(1), Kq(3)]), nonzero_small, small, small, nonzero_small, small)
def test_invariant_under_affine_change(t, a, b, c, d, e):
    # K{f} in new coordinates u = a x + b y + c, v = d y + e
    cov = affine_change(a * X + b * Y + c, d * Y + e)
    got = classify_flag(PoissonField(cov.transform_flag(t.canonical_flag())))
    assert got.resolved and got.verified
    assert iso_decide_canonical(got.type, t)


@given(st.sampled_from([K1n0(2), K1n0(3, 2), K1n0(4, -1)]), nonzero_small, small, small, nonzero_small)
def test_monomial_family_under_linear_change(t, a, b, c, d):
    if a * d == b * c:
        return
    cov = affine_change(a * X + b * Y, c * X + d * Y)
    got = classify_flag(PoissonField(cov.transform_flag(t.canonical_flag())))
    assert got.resolved and got.verified
    assert iso_decide_canonical(got.type, t)


@given(st.sampled_from([Kq(2), K1n0(2), K1n0(4, 3)]), st.sampled_from([(1, 1, 0, 1), (2, 1, 1, 1), (1, 0, 3, 1), (-1, 0, 0, 1)]))
def test_invariant_under_monomial_change(t, m):
    A, B, C, D = m
    cov = ChangeOfVars((X ** A * Y ** B, X ** C * Y ** D), (X ** D * Y ** -B, X ** -C * Y ** A) if A * D - B * C == 1 else None)
    if cov.inverse is None:
        # det -1: invert by hand
        cov = ChangeOfVars((X ** A * Y ** B, X ** C * Y ** D), (X ** -D * Y ** B, X ** C * Y ** -A))
    assert cov.check_inverse()
    f = cov.transform_flag(t.canonical_flag())
    got = classify_flag(PoissonField(f))
    assert got.verified and iso_decide_canonical(got.type, t)


def test_iso_decide_canonical_table():
    assert iso_decide_canonical(Kq(2), Kq(-2))
    assert not iso_decide_canonical(Kq(2), Kq(3))
    assert iso_decide_canonical(K1n0(2, 4), K1n0(2, 1))
    assert iso_decide_canonical(K1n0(3, -8), K1n0(3, 1))
    assert not iso_decide_canonical(K1n0(2, 2), K1n0(2, 1))
    assert not iso_decide_canonical(K1n0(2), K1n0(3))
    assert not iso_decide_canonical(Weyl(), Kq(1))


def test_canonicalize_family1_unimodular():
    kind, (A, B, C, D) = canonicalize_family1(Fraction(1), 2, 4)
    assert abs(A * D - B * C) == 1


def test_verification_is_real():
    K = field("(3*x+2)*x*y")
    c = classify_flag(K)
    u, v = c.cov.forward
    assert bracket(K, u, v) == 2 * u * v
