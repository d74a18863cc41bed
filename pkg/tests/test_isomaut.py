import math
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from poissonfield.arith import ONE, X, Y
from poissonfield.bracket import PoissonField, weyl_bracket
from poissonfield.classify import K1n0, Kq, Weyl
from poissonfield.errors import DegreeTooSmall, IdentityFails, InputError, NotMonic, TooFewRoots, Unsupported
from poissonfield.forms import factor_flag
from poissonfield.isomaut import (
    WITNESS_KINDS,
    AffineMap,
    affine_iso_search,
    aut_family1_structure,
    aut_family2,
    trivial_gp_hypotheses,
    dixmier_report,
    embed_decide,
    iso_decide,
    iso_family2,
    monic_family2,
    subfield_witness,
    trivial_aut_criteria,
    z_independent,
)
from poissonfield.parse import parse
from poissonfield.unipoly import UniPoly

root_sets = st.lists(st.integers(-4, 4), min_size=1, max_size=4, unique=True)


def field(text, mode="q"):
    return PoissonField.from_text(text, mode)


def brute_family2(p1, p2):
    # every (a, b, e) with a = +-1 and b an integer in a wide window,
    # checked as a polynomial identity by sympy
    x = oracles.x
    P1, P2 = oracles.to_sympy(p1.to_ratfunc()), oracles.to_sympy(p2.to_ratfunc())
    out = set()
    for a in (1, -1):
        for b in range(-8, 9):
            for e in (1, -1):
                lhs = (a * x - b) * P1.subs(x, a * x - b) / a
                if sp.expand(lhs - e * x * P2) == 0:
                    out.add((a, b, e))
    return out


@settings(max_examples=12)
@given(root_sets, root_sets)
def test_iso_family2_matches_brute_force(r1, r2):
    p1, p2 = UniPoly.from_roots([Fraction(r) for r in r1]), UniPoly.from_roots([Fraction(r) for r in r2])
    got = {(int(e.a), int(e.b), e.e) for e in iso_family2(p1, p2)}
    assert got == brute_family2(p1, p2)


@given(st.lists(st.integers(-6, 6), min_size=2, max_size=4, unique=True))
def test_aut_family2_is_a_bounded_group(roots):
    p = UniPoly.from_roots([Fraction(r) for r in roots])
    G = aut_family2(p)
    d = p.degree
    assert 1 <= len(G.finite_part) <= d * (d + 1)
    assert len(iso_family2(p, p)) <= 2 * d * (d + 1)
    K = PoissonField(p.to_ratfunc() * X * Y)
    for phi in G.finite_part:
        assert phi.is_poisson(K.flag, K.flag)


def test_iso_family2_errors():
    with pytest.raises(NotMonic):
        iso_family2(UniPoly([1, 2]), UniPoly([1, 1]))
    with pytest.raises(InputError):
        iso_family2(UniPoly([1]), UniPoly([1, 1]))
    with pytest.raises(DegreeTooSmall):
        aut_family2(UniPoly([1, 1]))
    assert iso_family2(UniPoly([1, 1]), UniPoly([1, 0, 1])) == []


def test_trivial_gp_hypotheses():
    t = parse("t", "qt")
    assert trivial_gp_hypotheses([t, t ** 2 + 1])
    assert not trivial_gp_hypotheses([Fraction(1), Fraction(2)])
    assert not z_independent([t, 2 * t])
    assert z_independent([t, t + 1])


FLABBY = [
    [(1, 0, 0), (0, 1, 0), (1, 1, 0), (1, 2, 0)],
    [(1, 0, 0), (0, 1, 0), (1, 0, -1), (1, 0, 1), (0, 1, -1), (0, 1, 1)],
    [(1, 0, 0), (1, 0, -1), (1, 0, 2), (0, 1, 0), (0, 1, -3), (0, 1, 1)],
]


def _text(lines, coeff=1):
    return "*".join([f"({coeff})"] + [f"({a}*x + {b}*y + {c})" for a, b, c in lines])


@settings(max_examples=5)
@given(st.sampled_from(range(len(FLABBY))),
       st.tuples(*[st.integers(-2, 2)] * 6).filter(lambda m: m[0] * m[3] != m[1] * m[2]))
def test_affine_iso_search_against_oracle(which, m):
    lines = FLABBY[which]
    c11, c12, c21, c22, c1, c2 = m
    phi = AffineMap(c11, c12, c21, c22, c1, c2)
    det = phi.det
    # G(x, y) = F(phi(x, y)) / det
    moved = [(a * c11 + b * c21, a * c12 + b * c22, a * c1 + b * c2 + c) for a, b, c in lines]
    F, G = factor_flag(_text(lines)), factor_flag(_text(moved, 1 / det))
    maps = affine_iso_search(F, G)
    assert phi.key() in {g.key() for g in maps}
    assert len(maps) == len(oracles.affine_automorphisms(lines))
    fx = F.expand()
    for g in maps:
        assert fx.subs(x=g.c11 * X + g.c12 * Y + g.c1, y=g.c21 * X + g.c22 * Y + g.c2) / g.det == G.expand()


def test_affine_iso_search_negative():
    F = factor_flag("x*y*(x+y)*(x+2*y)")
    G = factor_flag("x*y*(x+y)*(x+3*y)")
    # cross ratios 2 and 3 are not in the same anharmonic orbit
    assert affine_iso_search(F, G) == []


def test_trivial_aut_criteria_letters():
    assert trivial_aut_criteria([0, 1, 3], [0, 1, 3, 7]).failed_hypothesis == "c"
    assert trivial_aut_criteria([0, 1, 2, 3], [0, 1, 2, 5]).failed_hypothesis == "b"
    t = parse("t", "qt")
    assert trivial_aut_criteria([0, t, t ** 2], [0, t, t ** 3 + 1, t ** 5]).applies
    # t and 5t are dependent
    assert trivial_aut_criteria([0, t, t ** 2], [0, t, t ** 3 + 1, 5 * t]).failed_hypothesis == "c"
    with pytest.raises(TooFewRoots):
        trivial_aut_criteria([0, 1], [0, 1, 2])


EMBED = [
    (Weyl(), Weyl(), True), (Weyl(), Kq(1), False), (Weyl(), K1n0(2), True),
    (Kq(1), Kq(2), False), (Kq(2), Kq(1), True), (Kq(-6), Kq(2), True),
    (K1n0(2), K1n0(4), True), (K1n0(2), K1n0(3), False), (K1n0(2), Kq(1), False),
    (Kq(1), K1n0(2), False), (K1n0(2, 3), K1n0(2), True), (K1n0(2, 2), K1n0(2), True), (K1n0(2, parse("t", "qt")), K1n0(2), False), (K1n0(3), K1n0(6, 2), True),
]


@pytest.mark.parametrize("t1, t2, expected", EMBED)
def test_embed_decide(t1, t2, expected):
    r = embed_decide(t1, t2)
    assert r.embeds is expected
    if expected:
        u, v = r.witness.generators
        assert r.witness.verified
        assert weyl_bracket(u, v) * t2.canonical_flag() == t1.canonical_flag().subs(x=u, y=v)
    else:
        assert r.reason


def test_embed_both_ways_means_iso_for_kq():
    for p, q in [(2, -2), (3, 3)]:
        assert embed_decide(Kq(p), Kq(q)).embeds and embed_decide(Kq(q), Kq(p)).embeds


WITNESS_PARAMS = {
    "weyl-derivative": {"f": "x^3 + x"},
    "weyl-power": {"a": "3"},
    "torus-monomial": {"q": "2", "a": "1", "b": "2", "c": "3", "d": "-1"},
    "monomial-power": {"q": "1/2", "a": "1", "b": "0", "c": "2", "d": "3"},
    "shifted-power": {"q": "2", "b": "3", "a": "2"},
    "log-derivative": {"f": "x", "g": "y", "r": "x", "lambda": "2", "p": "x^2"},
    "power-derivative": {"f": "-2*x^3", "g": "1", "m": "3", "lambda": "-2", "p": "x"},
    "weyl-antiderivative": {"f": "1/(3*x^2)", "g": "y^2", "lambda": "1", "p": "x^3"},
    "log-derivative-pair": {"f": "x", "g": "y", "lambda": "1", "mu": "1", "p": "x", "q": "y"},
    "cubic-log": {"alpha1": "1", "alpha2": "-1"},
}


@pytest.mark.parametrize("kind", WITNESS_KINDS)
def test_every_witness_kind_verifies(kind):
    w = subfield_witness(kind, WITNESS_PARAMS[kind])
    assert w.verified
    u, v = w.generators
    lhs = oracles.bracket(w.source_flag, u, v)
    rhs = oracles.to_sympy(w.target_flag).subs({oracles.x: oracles.to_sympy(u), oracles.y: oracles.to_sympy(v)}, simultaneous=True)
    assert sp.cancel(lhs - rhs) == 0


def test_witness_errors():
    with pytest.raises(IdentityFails):
        subfield_witness("log-derivative", {"f": "x", "g": "y", "r": "x", "lambda": "3", "p": "x^2"})
    with pytest.raises(InputError):
        subfield_witness("weyl-derivative", {"f": "y"})
    with pytest.raises(InputError):
        subfield_witness("nope", {})
    with pytest.raises(InputError):
        subfield_witness("weyl-power", {})


def test_monic_family2():
    p, a, e = monic_family2(parse("4*(x^2-1)*x*y"))
    assert p.is_monic() and e * p.lc == 1 and a ** 2 * 4 * e == 1
    p, a, e = monic_family2(parse("(y^2+1)*x*y"))
    assert p.is_monic()
    assert monic_family2(parse("2*(x^2+1)*x*y")) is None
    assert monic_family2(parse("x^2 + y")) is None


def test_iso_decide_routes():
    r = iso_decide(field("(x^2-1)*x*y"), field("(y^2-1)*x*y"))
    assert r.isomorphic and r.method.startswith("family")
    assert not iso_decide(field("(x^2-1)*x*y"), field("(x^2-4)*x*y")).isomorphic
    r = iso_decide(field("x*y*(y-1)"), field("-x*y"))
    assert r.isomorphic and r.method == "canonical types"
    r = iso_decide(field("x*y*(x+y)*(x+2*y)"), field("y*(x+y)*(x+2*y)*(x+3*y)"))
    assert r.isomorphic and r.method == "affine search"
    r = iso_decide(field("x*y*(x+y)*(x+2*y)"), field("x*y*(x-1)*(x+1)*(y-1)*(y+1)"))
    assert not r.isomorphic
    with pytest.raises(Unsupported):
        iso_decide(field("x^2 + y^3"), field("x^2 + y^5"))


def test_dixmier_report():
    assert dixmier_report(field("x*y")).dixmier is False
    r = dixmier_report(field("x^3*y"))
    assert r.dixmier is False and r.certificate.verified
    assert dixmier_report(field("(x^2-1)*x*y")).dixmier is True
    assert dixmier_report(field("x*y*(x+y)*(x+2*y)")).dixmier is True
    with pytest.raises(Unsupported):
        dixmier_report(field("x^2 + y^3"))


def test_aut_family1_structure():
    odd, even = aut_family1_structure(3), aut_family1_structure(2)
    assert "right-split" in odd.exact_sequence and "not right-split" in even.exact_sequence
    assert odd.rational_points == {"eta_a": [1], "tau_c": [-1]}
    assert even.rational_points == {"eta_a": [1, -1], "tau_c": []}
    assert odd.order == math.inf
    with pytest.raises(DegreeTooSmall):
        aut_family1_structure(1)


def test_affine_map_group_ops():
    g = AffineMap(1, 2, 0, 1, 3, -1)
    assert g.compose(g.inverse()).key() == AffineMap.identity().key()
    with pytest.raises(InputError):
        AffineMap(1, 2, 2, 4)
    assert AffineMap.identity().field_map()(X * Y + ONE) == X * Y + 1
