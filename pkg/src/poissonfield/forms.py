"""Linear forms and flags given as products of linear forms.

No polynomial factorization is ever attempted.  A flag is recognized as
a product of linear forms either from the syntax of the expression that
defined it, or (over Q only) by rational-root extraction on univariate,
homogeneous or separable polynomials.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import ONE, X, Y, RatFunc2, as_scalar, scalar_str
from .errors import NotDistinctForms
from .parse import evaluate, parse_ast
from .unipoly import UniPoly


@dataclass(frozen=True)
class LinearForm:
    """The affine linear form a*x + b*y + c, with (a, b) != (0, 0)."""

    a: object
    b: object
    c: object = Fraction(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if self.a == 0 and self.b == 0:
            raise ValueError("a linear form needs a nonzero linear part")

    def to_ratfunc(self):
        return self.a * X + self.b * Y + self.c

    @property
    def linear_part(self):
        return (self.a, self.b)

    def normalized(self):
        """Return ``(scale, form)`` with form's first nonzero coefficient 1."""
        s = self.a if self.a != 0 else self.b
        return s, LinearForm(self.a / s, self.b / s, self.c / s)

    def is_associate(self, other):
        return self.normalized()[1] == other.normalized()[1]

    def independent(self, other):
        """True when the linear parts are linearly independent."""
        return self.a * other.b - self.b * other.a != 0

    @classmethod
    def from_ratfunc(cls, f):
        f = RatFunc2(f)
        if not f.is_polynomial() or f.total_degree() != 1:
            raise ValueError(f"{f} is not a linear form")
        terms = f.terms()
        return cls(terms.get((1, 0), 0), terms.get((0, 1), 0), terms.get((0, 0), 0))

    def __str__(self):
        return str(self.to_ratfunc())


def _form_key(form):
    return (str(form.to_ratfunc()),)


@dataclass(frozen=True)
class FactoredFlag:
    """coeff * x^alpha * y^beta * prod(form_i ^ mult_i).

    Forms are normalized, pairwise non-associate, and never equal to x
    or y (those go into the monomial exponents).
    """

    coeff: object
    alpha: int
    beta: int
    factors: tuple

    @classmethod
    def build(cls, coeff, alpha, beta, forms):
        """Collect ``forms`` (an iterable of (LinearForm, mult)) into normal form."""
        coeff = as_scalar(coeff)
        merged = {}
        for form, mult in forms:
            s, nf = form.normalized()
            coeff = coeff * s ** mult
            if nf == LinearForm(1, 0):
                alpha += mult
            elif nf == LinearForm(0, 1):
                beta += mult
            else:
                merged[nf] = merged.get(nf, 0) + mult
        factors = tuple(sorted(((f, m) for f, m in merged.items() if m), key=lambda fm: _form_key(fm[0])))
        return cls(as_scalar(coeff), alpha, beta, factors)

    def expand(self):
        out = self.coeff * X ** self.alpha * Y ** self.beta
        for form, mult in self.factors:
            out = out * form.to_ratfunc() ** mult
        return RatFunc2(out)

    @property
    def degree(self):
        return self.alpha + self.beta + sum(m for _, m in self.factors)

    def forms(self):
        """All linear factors with multiplicity, x and y included.

        Only meaningful when the flag is a polynomial.
        """
        out = []
        if self.alpha > 0:
            out.append((LinearForm(1, 0), self.alpha))
        if self.beta > 0:
            out.append((LinearForm(0, 1), self.beta))
        out.extend(self.factors)
        return out

    def is_polynomial(self):
        return self.alpha >= 0 and self.beta >= 0 and all(m > 0 for _, m in self.factors)

    def distinct_forms(self):
        """The factors as a list of distinct forms, or raise NotDistinctForms."""
        if not self.is_polynomial():
            raise NotDistinctForms("flag is not a polynomial product of linear forms")
        forms = self.forms()
        if any(m != 1 for _, m in forms):
            raise NotDistinctForms("a linear factor is repeated")
        return [f for f, _ in forms]

    def __str__(self):
        parts = [] if self.coeff == 1 else [f"({scalar_str(self.coeff)})"]
        for name, e in (("x", self.alpha), ("y", self.beta)):
            if e == 1:
                parts.append(name)
            elif e:
                parts.append(f"{name}^{e}" if e > 0 else f"{name}^({e})")
        for form, m in self.factors:
            parts.append(f"({form})" + ("" if m == 1 else f"^{m}" if m > 0 else f"^({m})"))
        return "*".join(parts) or "1"


# recognition ----------------------------------------------------------
def _combine(a, b, sign=1):
    ca, xa, ya, fa = a
    cb, xb, yb, fb = b
    out = dict(fa)
    for f, m in fb.items():
        out[f] = out.get(f, 0) + sign * m
    return (ca * cb if sign == 1 else ca / cb, xa + sign * xb, ya + sign * yb, out)


def _power(a, n):
    c, xa, ya, fa = a
    return (c ** n, xa * n, ya * n, {f: m * n for f, m in fa.items()})


def _from_value(v, mode):
    v = RatFunc2(v)
    if not v:
        return None
    if v.is_scalar():
        return (as_scalar(v), 0, 0, {})
    mono = v.monomial()
    if mono is not None:
        q, a, b = mono
        return (q, a, b, {})
    if not v.is_polynomial():
        return None
    if v.total_degree() == 1:
        return (ONE, 0, 0, {LinearForm.from_ratfunc(v): 1})
    if mode == "q" and not v.uses_t():
        split = split_linear(v)
        if split is not None:
            c, forms = split
            found = (c, 0, 0, {})
            for form in forms:
                found = _combine(found, (ONE, 0, 0, {form: 1}))
            return found
    return None


def _from_node(node, mode):
    kind = node[0]
    if kind == "num":
        return (node[1], 0, 0, {})
    if kind == "var":
        if node[1] == "x":
            return (ONE, 1, 0, {})
        if node[1] == "y":
            return (ONE, 0, 1, {})
        return _from_value(evaluate(node), mode)
    if kind == "neg":
        inner = _from_node(node[1], mode)
        return None if inner is None else _combine((-ONE, 0, 0, {}), inner)
    if kind == "mul" or kind == "div":
        a, b = _from_node(node[1], mode), _from_node(node[2], mode)
        if a is None or b is None:
            return None
        if kind == "div" and b[0] == 0:
            return None
        return _combine(a, b, 1 if kind == "mul" else -1)
    if kind == "pow":
        inner = _from_node(node[1], mode)
        return None if inner is None else _power(inner, node[2])
    return _from_value(evaluate(node), mode)


def factor_flag(source, mode="q", allow_negative=False):
    """Recognize a flag as a product of linear forms and monomials.

    ``source`` is expression text or a :class:`RatFunc2`.  Returns a
    :class:`FactoredFlag` or None.  Forms with negative exponents (a
    factored denominator) are only accepted with ``allow_negative``.

    >>> str(factor_flag("x*y*(x^2 - 1)*(y^2 - 1)"))
    'x*y*(x + 1)*(x - 1)*(y + 1)*(y - 1)'
    """
    if isinstance(source, str):
        ast = parse_ast(source, mode)
        found = _from_node(ast, mode)
        value = evaluate(ast)
    else:
        value = RatFunc2(source)
        found = _from_value(value, mode)
    if found is None:
        return None
    c, a, b, forms = found
    if not allow_negative and any(m < 0 for m in forms.values()):
        return None
    ff = FactoredFlag.build(c, a, b, forms.items())
    if ff.expand() != value:
        raise AssertionError(f"factorization of {value} does not expand back")
    return ff


def split_linear(f):
    """Split a polynomial over Q into linear factors, if rational roots allow.

    Handles univariate, homogeneous and separable (p(x)q(y)) inputs.
    Returns ``(coeff, [LinearForm, ...])`` with repetitions, or None.
    """
    f = RatFunc2(f)
    if f.uses_t() or not f.is_polynomial() or not f:
        return None
    if not f.uses("y"):
        return _split_uni(UniPoly.from_ratfunc(f, "x"), lambda r: LinearForm(1, 0, -r))
    if not f.uses("x"):
        return _split_uni(UniPoly.from_ratfunc(f, "y"), lambda r: LinearForm(0, 1, -r))
    terms = f.terms()
    degs = {a + b for a, b in terms}
    if len(degs) == 1:
        d = degs.pop()
        p = UniPoly.from_ratfunc(f.subs(y=ONE), "x")
        split = _split_uni(p, lambda r: LinearForm(1, -r, 0))
        if split is None:
            return None
        c, forms = split
        forms = forms + [LinearForm(0, 1)] * (d - p.degree)
        return c, forms
    for x0 in range(4):
        for y0 in range(4):
            f00 = f.subs(x=RatFunc2(x0), y=RatFunc2(y0))
            if f00 != 0:
                fx, fy = f.subs(y=RatFunc2(y0)), f.subs(x=RatFunc2(x0))
                if fx * fy != f * f00:
                    return None
                sx = split_linear(fx)
                sy = split_linear(fy)
                if sx is None or sy is None:
                    return None
                return as_scalar(sx[0] * sy[0] / f00), sx[1] + sy[1]
    return None


def _split_uni(p, make):
    split = p.split()
    if split is None:
        return None
    lc, roots = split
    return lc, [make(r) for r in roots]
