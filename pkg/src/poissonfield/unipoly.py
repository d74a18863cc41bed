"""Dense univariate polynomials over k.

Coefficients are scalars (``Fraction`` or t-only ``RatFunc2``), stored
low degree first.  The variable name only matters when converting to and
from :class:`RatFunc2`.
"""

from fractions import Fraction
from math import gcd, isqrt

from .arith import RatFunc2, as_scalar, var
from .errors import RootsUnavailable


def _trim(coeffs):
    coeffs = list(coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class UniPoly:
    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs, var="x"):
        self.coeffs = _trim(as_scalar(c) for c in coeffs)
        self.var = var

    @classmethod
    def from_ratfunc(cls, f, var="x"):
        """Read off a polynomial in ``var`` whose coefficients lie in k."""
        f = RatFunc2(f)
        others = [v for v in ("x", "y") if v != var]
        if not f.is_polynomial() or any(f.uses(v) for v in others):
            raise ValueError(f"{f} is not a polynomial in {var} alone")
        if var == "t":
            coeffs = {}
            for (c,), q in _t_terms(f).items():
                coeffs[c] = q
        else:
            i = 0 if var == "x" else 1
            coeffs = {ab[i]: c for ab, c in f.terms().items()}
        n = max(coeffs, default=-1)
        return cls([coeffs.get(i, 0) for i in range(n + 1)], var)

    @classmethod
    def from_roots(cls, roots, lc=1, var="x"):
        p = cls([lc], var)
        for r in roots:
            p = p * cls([-as_scalar(r), 1], var)
        return p

    def to_ratfunc(self, value=None):
        return self(var(self.var) if value is None else value)

    # basics -------------------------------------------------------------
    @property
    def degree(self):
        return len(self.coeffs) - 1

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_monic(self):
        return bool(self.coeffs) and self.lc == 1

    def monic(self):
        lc = self.lc
        return UniPoly([c / lc for c in self.coeffs], self.var)

    def uses_t(self):
        return any(isinstance(c, RatFunc2) for c in self.coeffs)

    def __call__(self, value):
        out = Fraction(0)
        for c in reversed(self.coeffs):
            out = out * value + c
        return RatFunc2(out) if isinstance(value, RatFunc2) else as_scalar(out)

    def derivative(self):
        return UniPoly([i * c for i, c in enumerate(self.coeffs)][1:], self.var)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly([self.coeff(i) + other.coeff(i) for i in range(n)], self.var)

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs], self.var)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, UniPoly):
            return UniPoly([c * other for c in self.coeffs], self.var)
        if not self.coeffs or not other.coeffs:
            return UniPoly([], self.var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out, self.var)

    __rmul__ = __mul__

    def divide_linear(self, root):
        """Synthetic division by (var - root); returns (quotient, remainder)."""
        acc = 0
        quot = []
        for c in reversed(self.coeffs):
            acc = acc * root + c
            quot.append(acc)
        rem = quot.pop() if quot else Fraction(0)
        return UniPoly(reversed(quot), self.var), as_scalar(rem)

    def __str__(self):
        return str(self.to_ratfunc())

    def __repr__(self):
        return f"UniPoly({str(self)!r})"

    # roots --------------------------------------------------------------
    def rational_roots(self):
        """Rational roots with multiplicity, by the rational-root theorem.

        Only available when every coefficient is rational.

        >>> UniPoly([0, -1, 0, 1]).rational_roots()
        [(Fraction(-1, 1), 1), (Fraction(0, 1), 1), (Fraction(1, 1), 1)]
        """
        if self.uses_t():
            raise RootsUnavailable("rational-root extraction is only available over Q")
        if self.degree <= 0:
            return []
        roots = {}
        p = self
        while p.coeffs and p.coeffs[0] == 0:
            roots[Fraction(0)] = roots.get(Fraction(0), 0) + 1
            p = UniPoly(p.coeffs[1:], p.var)
        while p.degree > 0:
            den = 1
            for c in p.coeffs:
                den = den * c.denominator // gcd(den, c.denominator)
            ints = [int(c * den) for c in p.coeffs]
            found = None
            for r in sorted(_candidates(ints[0], ints[-1])):
                if p(r) == 0:
                    found = r
                    break
            if found is None:
                break
            while True:
                q, rem = p.divide_linear(found)
                if rem != 0:
                    break
                roots[found] = roots.get(found, 0) + 1
                p = q
        return sorted(roots.items())

    def split(self):
        """Return ``(lc, roots)`` with roots listed by multiplicity, or None.

        None means some factor has no rational root.
        """
        total = []
        for r, m in self.rational_roots():
            total.extend([r] * m)
        if len(total) != self.degree:
            return None
        return self.lc, total


def _divisors(n):
    n = abs(n)
    if n == 0:
        return [1]
    small = [d for d in range(1, isqrt(n) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _candidates(a0, an):
    out = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            out.add(Fraction(p, q))
            out.add(Fraction(-p, q))
    return out


def _t_terms(f):
    """Coefficients of a polynomial in t (with x, y absent)."""
    num, den = f.canonical()
    d = dict(den)
    if list(d) != [(0, 0, 0)]:
        raise ValueError(f"{f} has a non-constant denominator")
    scale = d[(0, 0, 0)]
    return {(m[2],): c / scale for m, c in num}
