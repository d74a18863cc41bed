"""Reduction of a flag to a canonical Poisson field.

Each reduction rule proposes an elementary birational change of
variables (new generators u, v written in x, y, together with x, y
written in u, v).  The bracket of the new generators, rewritten in the
new coordinates, is the new flag, so the rules can simply be re-applied
until a canonical flag is reached:

    Weyl          {x, y} = 1
    K_q           {x, y} = q x y
    K_{1,n,0}     {x, y} = q x^(n+1) y,  n >= 2

The composite change is re-verified by recomputing the bracket of the
final generators in the original field.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import ONE, X, Y, RatFunc2, as_scalar, nth_root, scalar_str
from .bracket import bracket, weyl_bracket
from .errors import UnresolvedInput
from .forms import LinearForm, split_linear
from .unipoly import UniPoly


# canonical types --------------------------------------------------------
@dataclass(frozen=True)
class Weyl:
    name = "Weyl"

    def canonical_flag(self):
        return ONE

    def __str__(self):
        return "Weyl"


@dataclass(frozen=True)
class Kq:
    q: object
    name = "Kq"

    def __post_init__(self):
        object.__setattr__(self, "q", as_scalar(self.q))
        if self.q == 0:
            raise ValueError("q must be nonzero")

    def canonical_flag(self):
        return self.q * X * Y

    def __str__(self):
        return f"K_q(q={scalar_str(self.q)})"


@dataclass(frozen=True)
class K1n0:
    n: int
    q: object = Fraction(1)
    name = "K1n0"

    def __post_init__(self):
        object.__setattr__(self, "q", as_scalar(self.q))
        if self.n < 1 or self.q == 0:
            raise ValueError("need n >= 1 and q != 0")

    def canonical_flag(self):
        return self.q * X ** (self.n + 1) * Y

    def __str__(self):
        extra = "" if self.q == 1 else f", q={scalar_str(self.q)}"
        return f"K_1n0(n={self.n}{extra})"


@dataclass(frozen=True)
class UnresolvedOverField:
    reason: str
    name = "UnresolvedOverField"

    def __str__(self):
        return f"unresolved over the scalar field: {self.reason}"


@dataclass(frozen=True)
class OutsideScope:
    reason: str
    name = "OutsideScope"

    def __str__(self):
        return f"outside the recognized shapes: {self.reason}"


RESOLVED = (Weyl, Kq, K1n0)


# changes of variables ---------------------------------------------------
@dataclass(frozen=True, eq=False)
class ChangeOfVars:
    """New generators ``forward = (u, v)`` in terms of x, y, and
    ``inverse = (x(u, v), y(u, v))`` written with x, y standing for u, v."""

    forward: tuple
    inverse: tuple

    @classmethod
    def identity(cls):
        return cls((X, Y), (X, Y))

    def then(self, step):
        """The change obtained by applying ``step`` in the new coordinates."""
        u, v = self.forward
        a, b = self.inverse
        su, sv = step.inverse
        return ChangeOfVars(
            (step.forward[0].subs(x=u, y=v), step.forward[1].subs(x=u, y=v)),
            (a.subs(x=su, y=sv), b.subs(x=su, y=sv)),
        )

    def check_inverse(self):
        u, v = self.forward
        a, b = self.inverse
        return (
            a.subs(x=u, y=v) == X
            and b.subs(x=u, y=v) == Y
            and u.subs(x=a, y=b) == X
            and v.subs(x=a, y=b) == Y
        )

    def transform_flag(self, f):
        """The flag of the same field in the coordinates (u, v)."""
        u, v = self.forward
        a, b = self.inverse
        return (weyl_bracket(u, v) * f).subs(x=a, y=b)


SWAP = ChangeOfVars((Y, X), (Y, X))


def affine_change(u, v):
    """ChangeOfVars for affine new generators u, v (inverse solved linearly)."""
    u, v = RatFunc2(u), RatFunc2(v)
    lu, lv = LinearForm.from_ratfunc(u), LinearForm.from_ratfunc(v)
    det = lu.a * lv.b - lu.b * lv.a
    if det == 0:
        raise ValueError("affine change is not invertible")
    U, V = X - lu.c, Y - lv.c
    return ChangeOfVars((u, v), ((lv.b * U - lu.b * V) / det, (lu.a * V - lv.a * U) / det))


@dataclass(frozen=True, eq=False)
class Classification:
    type: object
    cov: ChangeOfVars
    verified: bool
    steps: tuple = ()

    @property
    def resolved(self):
        return isinstance(self.type, RESOLVED)


# family (1): monomial flags ---------------------------------------------
def _egcd(a, b):
    if b == 0:
        return (1 if a >= 0 else -1), 0, abs(a)
    s, t, g = _egcd(b, a % b)
    return t, s - (a // b) * t, g


def canonicalize_family1(q, k1, k2):
    """Canonical type of K{q x^(1+k1) y^(1+k2)} and the unimodular matrix.

    Returns ``(type, (a, b, c, d))`` with ad - bc = 1; the new generators
    x^a y^b, x^c y^d satisfy {X, Y} = q X^(1+k0) Y with k0 = gcd(k1, k2).

    >>> canonicalize_family1(1, 2, 4)
    (K1n0(n=2, q=Fraction(1, 1)), (1, 2, 0, 1))
    >>> canonicalize_family1(1, -1, -1)[0]
    Weyl()
    """
    q = as_scalar(q)
    k0 = gcd(k1, k2)
    if k0 == 0:
        return Kq(q), (1, 0, 0, 1)
    a, b = k1 // k0, k2 // k0
    s, t, g = _egcd(a, b)
    assert g == 1 and a * s + b * t == 1
    d, c = s, -t
    kind = Weyl() if k0 == 1 else K1n0(k0, q)
    return kind, (a, b, c, d)


def _normalizer(q, n):
    alpha = nth_root(q, n)
    if alpha is not None:
        return 1, alpha
    alpha = nth_root(-q, n)
    if alpha is not None:
        return -1, alpha
    return None


def _terminal(f):
    if f == 1:
        return Weyl()
    m = f.monomial()
    if m is None:
        return None
    q, a, b = m
    if (a, b) == (1, 1):
        return Kq(q)
    if b == 1 and a >= 3 and (q == 1 or _normalizer(q, a - 1) is None):
        return K1n0(a - 1, q)
    return None


# reduction rules --------------------------------------------------------
def _ypoly(f):
    """Coefficients of f as a polynomial in y over k, or None."""
    if f.uses("x") or not f.is_polynomial():
        return None
    return UniPoly.from_ratfunc(f, "y")


def _reduce_shape(f):
    """Reductions for flags of low degree in x (and the two trivial cases)."""
    if not f.uses("y"):
        return "y -> y/f", ChangeOfVars((X, Y / f), (X, Y * f))
    if not f.uses("x"):
        return "x -> x/f", ChangeOfVars((X / f, Y), (X * f, Y))
    fy = f.diff("y")
    if fy.is_scalar():
        g = f - fy * Y
        return "y -> f", ChangeOfVars((X, f), (X, (Y - g) / fy))
    fx = f.diff("x")
    if not fx.uses("x"):
        F, G = fx, f - X * fx
        if G != 0:
            return "x -> x*F + G", ChangeOfVars((X * F + G, Y), ((X - G) / F, Y))
        p = _ypoly(F)
        if p is None:
            return None
        if p.degree == 1:
            q, r = p.coeff(1), p.coeff(0)
            return "y -> q*y + r", ChangeOfVars((X, q * Y + r), (X, (Y - r) / q))
        if p.degree == 2:
            al, be, ga = p.coeff(2), p.coeff(1), p.coeff(0)
            if be != 0:
                s = be / (2 * al)
                return "complete the square in y", ChangeOfVars((X, Y + s), (X, Y - s))
            if ga == 0:
                return "(1/y, x)", ChangeOfVars((1 / Y, X), (Y, 1 / X))
            return "(c*x, x*y)", ChangeOfVars((ga * X, X * Y), (X / ga, ga * Y / X))
        return None
    fxx = fx.diff("x")
    if not fxx.uses("x"):
        F = fxx / 2
        G = fx - 2 * X * F
        H = f - X * X * F - X * G
        if F == 1 and G == 0:
            p = _ypoly(H)
            if p is None or p.degree != 2:
                return None
            al, be = p.coeff(2), p.coeff(1)
            if be != 0:
                s = be / (2 * al)
                return "complete the square in y", ChangeOfVars((X, Y + s), (X, Y - s))
            zeta = nth_root(-al, 2)
            if zeta is None:
                return UnresolvedOverField(f"needs a square root of {scalar_str(-al)}")
            return "(x - z*y, x + z*y)", ChangeOfVars((X - zeta * Y, X + zeta * Y), ((X + Y) / 2, (Y - X) / (2 * zeta)))
        h2 = F * H - G * G / 4
        p = _ypoly(h2)
        if p is None or p.degree > 2:
            return None
        return "x -> x*F + G/2", ChangeOfVars((X * F + G / 2, Y), ((X - G / 2) / F, Y))
    return None


def _homogeneous(f, K):
    if not f.is_polynomial():
        return None
    terms = f.terms()
    degs = {a + b for a, b in terms}
    if len(degs) != 1:
        return None
    d = degs.pop()
    if d < 1:
        return None
    forms = None
    if K.factored is not None and f == K.flag and K.factored.is_polynomial():
        forms = [fm for fm, m in K.factored.forms() for _ in range(m)]
    elif K.mode == "q":
        split = split_linear(f)
        if split is not None:
            forms = split[1]
    if forms is None:
        return UnresolvedOverField("linear factors of a homogeneous flag are not available over k")
    distinct = []
    for fm in forms:
        nf = fm.normalized()[1]
        if nf not in distinct:
            distinct.append(nf)
    xy = [LinearForm(1, 0), LinearForm(0, 1)]
    if len(distinct) <= 2 and all(v in xy for v in distinct):
        return None
    if len(distinct) == 1:
        l1 = distinct[0].to_ratfunc()
        return "(l, other)", affine_change(l1, Y if distinct[0].a != 0 else X)
    if len(distinct) == 2:
        return "(l1, l2)", affine_change(distinct[0].to_ratfunc(), distinct[1].to_ratfunc())
    if len(distinct) == 3 and d == 3:
        if all(v in distinct for v in xy):
            return "(1/x, 1/y)", ChangeOfVars((1 / X, 1 / Y), (1 / X, 1 / Y))
        return "(l1, l2)", affine_change(distinct[0].to_ratfunc(), distinct[1].to_ratfunc())
    return OutsideScope("homogeneous with at least three distinct linear factors and degree >= 4")


def separate(f):
    """Write a polynomial f as A(x) * g(y); returns (A, g) or None."""
    f = RatFunc2(f)
    if not f.is_polynomial() or not f:
        return None
    for x0 in range(4):
        for y0 in range(4):
            f00 = f.subs(x=RatFunc2(x0), y=RatFunc2(y0))
            if f00 != 0:
                A, g = f.subs(y=RatFunc2(y0)) / f00, f.subs(x=RatFunc2(x0))
                return (A, g) if A * g == f else None
    return None


def _separable_quadratic(f, K):
    if not f.uses("x") or not f.uses("y"):
        return None
    sep = separate(f)
    if sep is None:
        return None
    A, g = sep
    p = UniPoly.from_ratfunc(g, "y")
    if p.degree != 2:
        return None
    al, be, ga = p.coeff(2), p.coeff(1), p.coeff(0)
    disc = be * be - 4 * al * ga
    if disc == 0:
        root = -be / (2 * al)
        if root != 0:
            return "move the double root to 0", ChangeOfVars((X, Y - root), (X, Y + root))
        return "(x, 1/y)", ChangeOfVars((X, 1 / Y), (X, 1 / Y))
    s = nth_root(disc, 2)
    if s is None:
        return UnresolvedOverField(f"roots of {g} need a square root of {scalar_str(disc)}")
    r1, r2 = (-be + s) / (2 * al), (-be - s) / (2 * al)
    if r1 != 0 and r2 != 0:
        return "move a root to 0", ChangeOfVars((X, Y - r1), (X, Y + r1))
    r = r1 if r1 != 0 else r2
    return "(x, 1 - r/y)", ChangeOfVars((X, 1 - r / Y), (X, r / (1 - Y)))


def _monomial(f, K):
    m = f.monomial()
    if m is None:
        return None
    q, a, b = m
    kind, (A, B, C, D) = canonicalize_family1(q, a - 1, b - 1)
    if (A, B, C, D) != (1, 0, 0, 1):
        return "monomial change", ChangeOfVars((X ** A * Y ** B, X ** C * Y ** D), (X ** D * Y ** (-B), X ** (-C) * Y ** A))
    n = a - 1
    if n == 1:
        return "(1/x, y)", ChangeOfVars((1 / X, Y), (1 / X, Y))
    norm = _normalizer(q, n)
    if norm is None:
        return None
    sign, alpha = norm
    if sign > 0:
        return "x -> a*x", ChangeOfVars((alpha * X, Y), (X / alpha, Y))
    return "(a*x, 1/y)", ChangeOfVars((alpha * X, 1 / Y), (X / alpha, 1 / Y))


def _next_step(f, K):
    found = _reduce_shape(f)
    if found is not None:
        return found
    swapped = SWAP.transform_flag(f)
    other = _reduce_shape(swapped)
    if isinstance(other, tuple):
        return "swap x and y", SWAP
    for rule in (_homogeneous, _separable_quadratic):
        found = rule(f, K)
        if found is not None:
            return found
        found = rule(swapped, K)
        if isinstance(found, tuple):
            return "swap x and y", SWAP
        if found is not None:
            return found
    found = _monomial(f, K)
    if found is not None:
        return found
    if other is not None:
        return other
    return OutsideScope(f"no reduction applies to {f}")


def classify_flag(K, max_steps=32):
    """Reduce K to a canonical type.

    Returns a :class:`Classification` whose ``cov`` maps the canonical
    generators to elements of K; ``verified`` records the exact check
    {u, v}_K = canonical_flag(u, v) plus the inverse check.

    >>> from poissonfield.bracket import PoissonField
    >>> str(classify_flag(PoissonField.from_text("(3*x + 2)*x*y")).type)
    'K_q(q=2)'
    """
    f = K.flag
    cov = ChangeOfVars.identity()
    notes = []
    kind = None
    for _ in range(max_steps):
        kind = _terminal(f)
        if kind is not None:
            break
        found = _next_step(f, K)
        if not isinstance(found, tuple):
            return Classification(found, cov, False, tuple(notes))
        note, step = found
        f = step.transform_flag(f)
        cov = cov.then(step)
        notes.append(note)
    if kind is None:
        return Classification(OutsideScope("no canonical form within the step limit"), cov, False, tuple(notes))
    u, v = cov.forward
    verified = cov.check_inverse() and bracket(K, u, v) == kind.canonical_flag().subs(x=u, y=v)
    return Classification(kind, cov, verified, tuple(notes))


def iso_decide_canonical(t1, t2):
    """Isomorphism of two canonical types.

    K_p and K_q are isomorphic iff p = +-q; q x^(m+1) y and r x^(n+1) y
    iff m = n and +-q/r is an n-th power in k; different kinds never are.
    """
    for t in (t1, t2):
        if not isinstance(t, RESOLVED):
            raise UnresolvedInput(f"not a canonical type: {t}")
    if type(t1) is not type(t2):
        return False
    if isinstance(t1, Weyl):
        return True
    if isinstance(t1, Kq):
        return t1.q == t2.q or t1.q == -t2.q
    if t1.n != t2.n:
        return False
    ratio = t1.q / t2.q
    return nth_root(ratio, t1.n) is not None or nth_root(-ratio, t1.n) is not None
