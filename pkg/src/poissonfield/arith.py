"""Exact rational functions in x, y over k = Q or k = Q(t).

Every value lives in the field Q(x, y, t).  The parameter t is a constant
for d/dx and d/dy, and Q(t)(x, y) is the same field as Q(x, y, t), so one
representation serves both scalar modes.  In Q mode t simply never occurs.

Field arithmetic and cancellation are delegated to sympy's sparse
rational-function field; everything visible from outside (normal forms,
printing, substitution, roots) is defined here.
"""

from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import lex

from .errors import DivisionByZero, IndeterminateResult

_FIELD, _FX, _FY, _FT = field("x,y,t", QQ, lex)
_GENS = {"x": _FX, "y": _FY, "t": _FT}
VARIABLES = ("x", "y", "t")


def _qq(value):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def _fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


def _lift(value):
    if isinstance(value, RatFunc2):
        return value._f
    if isinstance(value, (int, Fraction)):
        return _FIELD.ground_new(_qq(value))
    return None


def term_key(monom):
    """Sort key of a monomial (a, b, c) = x^a y^b t^c.

    Graded lexicographic on (x, y) with x > y, ties broken by the power
    of t.  The largest key is the leading term.
    """
    a, b, c = monom
    return (a + b, a, c)


def _leading(poly):
    return max(poly.terms(), key=lambda tc: term_key(tc[0]))


def _frac_str(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _poly_string(terms):
    items = sorted(terms.items(), key=lambda kv: term_key(kv[0]), reverse=True)
    if not items:
        return "0"
    out = []
    for i, (monom, c) in enumerate(items):
        neg = c < 0
        c = abs(c)
        mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(VARIABLES, monom) if e)
        if not mono:
            body = _frac_str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{_frac_str(c)}*{mono}"
        if i == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class RatFunc2:
    """An element of k(x, y), kept reduced.

    Supports ``+ - * / **`` with ints, ``Fraction`` and other ``RatFunc2``
    values; equality is exact.

    >>> f = (X**2 + Y) / (X*Y - 1)
    >>> str(f)
    '(x^2 + y)/(x*y - 1)'
    >>> str(f.diff("x"))
    '(x^2*y - y^2 - 2*x)/(x^2*y^2 - 2*x*y + 1)'
    """

    __slots__ = ("_f", "_canon")

    def __init__(self, value=0):
        self._canon = None
        if isinstance(value, RatFunc2):
            self._f = value._f
        elif isinstance(value, FracElement):
            self._f = value
        else:
            lifted = _lift(value)
            if lifted is None:
                raise TypeError(f"cannot convert {value!r} to RatFunc2")
            self._f = lifted

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _lift(other)
        return NotImplemented if o is None else RatFunc2(self._f + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = _lift(other)
        return NotImplemented if o is None else RatFunc2(self._f - o)

    def __rsub__(self, other):
        o = _lift(other)
        return NotImplemented if o is None else RatFunc2(o - self._f)

    def __mul__(self, other):
        o = _lift(other)
        return NotImplemented if o is None else RatFunc2(self._f * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        if not o:
            raise DivisionByZero("division by zero")
        return RatFunc2(self._f / o)

    def __rtruediv__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        if not self._f:
            raise DivisionByZero("division by zero")
        return RatFunc2(o / self._f)

    def __neg__(self):
        return RatFunc2(-self._f)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0 and not self._f:
            raise DivisionByZero("zero to a negative power")
        return RatFunc2(self._f ** n)

    def __bool__(self):
        return bool(self._f)

    def __eq__(self, other):
        o = _lift(other)
        if o is None:
            return NotImplemented
        return self._f.numer * o.denom == o.numer * self._f.denom

    def __hash__(self):
        if self.is_constant():
            return hash(self.to_fraction())
        return hash(self.canonical())

    # normal form ------------------------------------------------------
    def canonical(self):
        """Return ``(num, den)`` as sorted term tuples over Q.

        num and den are coprime in Q[x, y, t] and the leading coefficient
        of den (see :func:`term_key`) is 1, which makes the pair unique.
        """
        if self._canon is None:
            N, D = self._f.numer, self._f.denom
            lc = _leading(D)[1]
            num = tuple(sorted(((m, _fraction(c / lc)) for m, c in N.terms()), key=lambda mc: term_key(mc[0])))
            den = tuple(sorted(((m, _fraction(c / lc)) for m, c in D.terms()), key=lambda mc: term_key(mc[0])))
            self._canon = (num, den)
        return self._canon

    def __str__(self):
        num, den = self.canonical()
        if den == (((0, 0, 0), Fraction(1)),):
            return _poly_string(dict(num))
        n = _poly_string(dict(num))
        d = _poly_string(dict(den))
        if len(num) > 1:
            n = f"({n})"
        if len(den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"RatFunc2({str(self)!r})"

    # structure --------------------------------------------------------
    @property
    def numer(self):
        """Numerator in Q[x, y, t] (paired with :attr:`denom`)."""
        num, _ = self.canonical()
        return RatFunc2(_FIELD(_FIELD.ring.from_dict({m: _qq(c) for m, c in num})))

    @property
    def denom(self):
        _, den = self.canonical()
        return RatFunc2(_FIELD(_FIELD.ring.from_dict({m: _qq(c) for m, c in den})))

    def _xy_lc(self):
        D = self._f.denom
        lead = max(((m[0], m[1]) for m in D.monoms()), key=lambda ab: (ab[0] + ab[1], ab[0]))
        lc = _FIELD.zero
        for (a, b, c), coeff in D.terms():
            if (a, b) == lead:
                lc += _FIELD.ground_new(coeff) * _FT ** c
        return lc

    @property
    def num(self):
        """Numerator as a polynomial in x, y over k.

        Paired with :attr:`den`, whose leading coefficient in x, y is 1.
        """
        return RatFunc2(_FIELD(self._f.numer) / self._xy_lc())

    @property
    def den(self):
        return RatFunc2(_FIELD(self._f.denom) / self._xy_lc())

    def degree(self, var):
        """Degree in ``var`` of the numerator minus that of the denominator."""
        i = VARIABLES.index(var)
        dn = max((m[i] for m in self._f.numer.monoms()), default=0)
        dd = max((m[i] for m in self._f.denom.monoms()), default=0)
        return dn - dd

    def num_degree(self, var=None):
        """Degree of the numerator in ``var`` (total x, y degree if None)."""
        return _xy_degree(self._f.numer, var)

    def den_degree(self, var=None):
        return _xy_degree(self._f.denom, var)

    def total_degree(self):
        """Total degree in x, y of a polynomial (raises otherwise)."""
        if not self.is_polynomial():
            raise ValueError("total_degree of a non-polynomial")
        if not self:
            return -1
        return self.num_degree()

    def is_polynomial(self):
        """True when the denominator involves neither x nor y."""
        return _xy_degree(self._f.denom) == 0

    def is_scalar(self):
        """True when the value lies in k, i.e. involves neither x nor y."""
        return _xy_degree(self._f.numer) == 0 and _xy_degree(self._f.denom) == 0

    def is_constant(self):
        """True when the value is a rational number."""
        return self._f.numer.is_ground and self._f.denom.is_ground

    def uses(self, var):
        i = VARIABLES.index(var)
        return any(m[i] for m in self._f.numer.monoms()) or any(m[i] for m in self._f.denom.monoms())

    def uses_t(self):
        return self.uses("t")

    def to_fraction(self):
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return _fraction(self._f.numer.LC) / _fraction(self._f.denom.LC)

    def terms(self):
        """Map ``(a, b) -> coefficient`` of a polynomial in x, y over k."""
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial in x, y")
        den = RatFunc2(_FIELD(self._f.denom))
        grouped = {}
        for (a, b, c), coeff in self._f.numer.terms():
            grouped[(a, b)] = grouped.get((a, b), _FIELD.zero) + _FIELD.ground_new(coeff) * _FT ** c
        return {ab: as_scalar(RatFunc2(v) / den) for ab, v in grouped.items()}

    @classmethod
    def from_terms(cls, terms):
        out = RatFunc2(0)
        for (a, b), c in terms.items():
            out = out + c * X ** a * Y ** b
        return out

    def monomial(self):
        """Return ``(q, a, b)`` if the value is ``q x^a y^b`` with q in k."""
        if not self:
            return None
        nt, dt = self.num.terms(), self.den.terms()
        if len(nt) != 1 or len(dt) != 1:
            return None
        (na, nb), q = next(iter(nt.items()))
        (da, db), r = next(iter(dt.items()))
        return as_scalar(q / r), na - da, nb - db

    # calculus and substitution ----------------------------------------
    def diff(self, var):
        return RatFunc2(self._f.diff(_GENS[var]))

    def subs(self, x=None, y=None, t=None):
        """Substitute rational functions for x, y (and t).

        Raises ``IndeterminateResult`` if the denominator becomes zero.
        """
        new = [_lift(v) if v is not None else g for v, g in ((x, _FX), (y, _FY), (t, _FT))]
        if any(v is None for v in new):
            raise TypeError("substitution values must be RatFunc2, int or Fraction")
        den = _evaluate(self._f.denom, new)
        if not den:
            raise IndeterminateResult(f"denominator of {self} vanishes after substitution")
        return RatFunc2(_evaluate(self._f.numer, new) / den)


def _xy_degree(poly, var=None):
    if var is None:
        return max((m[0] + m[1] for m in poly.monoms()), default=0)
    i = VARIABLES.index(var)
    return max((m[i] for m in poly.monoms()), default=0)


def _evaluate(poly, values):
    cache = [{0: _FIELD.one} for _ in values]

    def power(i, e):
        table = cache[i]
        if e not in table:
            table[e] = values[i] ** e
        return table[e]

    out = _FIELD.zero
    for monom, coeff in poly.terms():
        term = _FIELD.ground_new(coeff)
        for i, e in enumerate(monom):
            if e:
                term = term * power(i, e)
        out += term
    return out


X = RatFunc2(_FX)
Y = RatFunc2(_FY)
T = RatFunc2(_FT)
ONE = RatFunc2(1)
ZERO = RatFunc2(0)


def var(name):
    return {"x": X, "y": Y, "t": T}[name]


# scalars --------------------------------------------------------------
def as_scalar(value):
    """Normalize an element of k: ``Fraction`` if rational, else ``RatFunc2``."""
    if isinstance(value, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, RatFunc2):
        if not value.is_scalar():
            raise ValueError(f"{value} is not a scalar")
        return value.to_fraction() if value.is_constant() else value
    raise TypeError(f"not a scalar: {value!r}")


def is_zero(value):
    return value == 0


def is_integer(value):
    s = as_scalar(value)
    return isinstance(s, Fraction) and s.denominator == 1


def scalar_str(value):
    s = as_scalar(value)
    return _frac_str(s) if isinstance(s, Fraction) else str(s)


def _iroot(m, n):
    """Largest integer r >= 0 with r**n <= m."""
    lo, hi = 0, 1
    while hi ** n <= m:
        hi *= 2
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid ** n <= m:
            lo = mid
        else:
            hi = mid
    return lo


def _fraction_root(q, n):
    neg = q < 0
    if neg and n % 2 == 0:
        return None
    a, b = abs(q.numerator), q.denominator
    ra, rb = _iroot(a, n), _iroot(b, n)
    if ra ** n != a or rb ** n != b:
        return None
    r = Fraction(ra, rb)
    return -r if neg else r


def _poly_root(poly, n):
    coeff, factors = poly.sqf_list()
    c = _fraction_root(_fraction(coeff), n)
    if c is None or any(k % n for _, k in factors):
        return None
    root = _FIELD.ground_new(_qq(c))
    for f, k in factors:
        root *= _FIELD(f) ** (k // n)
    return root


def nth_root(value, n):
    """An n-th root of a scalar inside k, or None.

    In Q(t) mode only squarefree decomposition is used, never
    factorization; the result is re-checked by raising it to the n-th
    power.
    """
    s = as_scalar(value)
    if n <= 0:
        raise ValueError("n must be positive")
    if s == 0:
        return Fraction(0)
    if isinstance(s, Fraction):
        return _fraction_root(s, n)
    for sign in (1, -1) if n % 2 else (1,):
        num = _poly_root(sign * s._f.numer, n)
        den = _poly_root(s._f.denom, n)
        if num is not None and den is not None:
            r = RatFunc2(num / den) * sign
            if r ** n == s:
                return as_scalar(r)
    return None
