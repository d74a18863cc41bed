"""Denominator bounds and flags of infinite flag height.

For h = prod(u - a_i) / prod(u - b_j) (j = 0..w) the denominator of h in
any fractional frame has at least w coprime nonscalar factors, and the
same holds for every image of h under an algebra map.  Taking the flag
x y f(h) with deg f >= 2 puts h in the 1-Gamma_0 cap, and that cap has
prime-divisor bound at most the number of denominator primes of any
flag of an isomorphic (or larger) field.  Hence no polynomial flag.
"""

from dataclasses import dataclass, field

from .arith import ONE, X, Y, RatFunc2, as_scalar
from .bracket import PoissonField
from .errors import ConstantH, DegreeTooSmall, InputError, UnfactoredDenominator
from .forms import FactoredFlag, split_linear
from .unipoly import UniPoly


@dataclass(frozen=True, eq=False)
class BoundedElement:
    """h = prod(u - a_i) / prod(u - b_j), b_0 first; all shifts distinct."""

    u: RatFunc2
    a_roots: tuple
    b_roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "u", RatFunc2(self.u))
        object.__setattr__(self, "a_roots", tuple(as_scalar(a) for a in self.a_roots))
        object.__setattr__(self, "b_roots", tuple(as_scalar(b) for b in self.b_roots))
        shifts = self.a_roots + self.b_roots
        if len(set(shifts)) != len(shifts):
            raise InputError("shifts must be pairwise distinct")
        if not self.b_roots:
            raise InputError("need at least one denominator shift b_0")

    @property
    def w(self):
        return len(self.b_roots) - 1

    @property
    def w_prime(self):
        return len(self.a_roots)

    def h(self):
        out = ONE
        for a in self.a_roots:
            out = out * (self.u - a)
        for b in self.b_roots:
            out = out / (self.u - b)
        return out


@dataclass(frozen=True)
class Bounds:
    dpb_lower: int
    ddb_exact: int = None
    dpb_exact: int = None
    fdb_exact: int = None
    frame_form: RatFunc2 = None


def bounds_certified(h):
    """Lower bound dpb >= w always; exact values when u = x + b_0 and w + 1 >= w'.

    In the exact case h is rewritten in the frame (1/x, y) and the
    denominator degree of that representation is checked to be w.

    >>> from fractions import Fraction
    >>> from poissonfield.arith import X
    >>> b = bounds_certified(BoundedElement(X, (1,), (0, 2)))
    >>> (b.dpb_lower, b.ddb_exact, b.dpb_exact, b.fdb_exact)
    (1, 1, 1, 1)
    """
    w = h.w
    if h.u - h.b_roots[0] != X or w + 1 < h.w_prime:
        return Bounds(w)
    framed = h.h().subs(x=1 / X)  # x now stands for s_1 = 1/x
    if framed.den_degree() != w:
        raise AssertionError("frame representation has the wrong denominator degree")
    fdb = framed.num_degree() - framed.den_degree()
    return Bounds(w, w, w, fdb, framed)


@dataclass(frozen=True, eq=False)
class InfiniteFlagCertificate:
    h: BoundedElement
    fpoly: UniPoly
    flag: RatFunc2
    w_threshold: int
    notes: tuple = field(default_factory=tuple)

    def field(self, mode=None):
        if mode is None:
            mode = "qt" if self.flag.uses_t() else "q"
        return PoissonField(self.flag, mode, None, self)

    def blocks_morphism_into(self, g, mode="q"):
        """True when no Poisson morphism K{flag} -> K{g} can exist."""
        return dpb_upper_for_flag(g, mode) < self.w_threshold


def build_infinite_flag(h, fpoly):
    """The flag x y f(h) together with its no-morphism certificate.

    >>> from poissonfield.arith import X
    >>> cert = build_infinite_flag(BoundedElement(X, (1,), (0, 2)), UniPoly([0, 0, 1], "t"))
    >>> str(cert.flag)
    '(x^2*y - 2*x*y + y)/(x^3 - 4*x^2 + 4*x)'
    """
    if fpoly.degree < 2:
        raise DegreeTooSmall("f needs degree at least 2")
    value = h.h()
    if value.is_scalar():
        raise ConstantH("h must be nonconstant")
    if h.w < 1:
        raise InputError("a certificate needs w >= 1 (at least two denominator shifts)")
    flag = X * Y * fpoly(value)
    if flag != X * Y * sum((c * value ** i for i, c in enumerate(fpoly.coeffs)), RatFunc2(0)):
        raise AssertionError("flag expansion mismatch")
    notes = (
        f"h lies in the d-Gamma_0 cap for d < deg f = {fpoly.degree}",
        f"dpb(phi(h)) >= {h.w} for every algebra map phi",
        f"no morphism into K{{g}} when g has fewer than {h.w} denominator primes; "
        "in particular no polynomial flag",
    )
    return InfiniteFlagCertificate(h, fpoly, flag, h.w, notes)


def _count_univariate(p):
    roots = p.rational_roots()
    rest = p
    for r, m in roots:
        for _ in range(m):
            rest, _ = rest.divide_linear(r)
    if rest.degree == 0:
        return len(roots)
    if rest.degree in (2, 3):
        # no rational root left, so irreducible over Q
        return len(roots) + 1
    raise UnfactoredDenominator(f"cannot certify the factorization of {rest}")


def dpb_upper_for_flag(g, mode="q"):
    """Number of non-associate prime factors of the denominator of g.

    Polynomials give 0.  A FactoredFlag is read directly; otherwise the
    denominator must be a monomial, linear, or (in Q mode) split by
    rational roots.
    """
    if isinstance(g, FactoredFlag):
        count = (g.alpha < 0) + (g.beta < 0)
        return count + sum(1 for _, m in g.factors if m < 0)
    g = RatFunc2(g)
    if g.is_polynomial():
        return 0
    den = g.den
    mono = den.monomial()
    if mono is not None:
        return (mono[1] > 0) + (mono[2] > 0)
    if den.total_degree() == 1:
        return 1
    if mode != "q" or den.uses_t():
        raise UnfactoredDenominator("supply the denominator in factored form in Q(t) mode")
    for v, other in (("x", "y"), ("y", "x")):
        if not den.uses(other):
            return _count_univariate(UniPoly.from_ratfunc(den, v))
    split = split_linear(den)
    if split is None:
        raise UnfactoredDenominator(f"cannot factor the denominator {den}")
    _, forms = split
    distinct = []
    for f in forms:
        if not any(f.is_associate(d) for d in distinct):
            distinct.append(f)
    return len(distinct)
