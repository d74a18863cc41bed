"""Logarithmic derivatives of power products and their inversion.

The indeterminate is called t in text output.  Internally the univariate
rational functions are built in the generator x, so that Q(t) mode (where
t is a scalar parameter) can still be served; in that case output keeps
the name x for the indeterminate.
"""

from dataclasses import dataclass
from fractions import Fraction

from .arith import ONE, X, RatFunc2, as_scalar, is_integer, scalar_str
from .errors import EmptyProduct, InputError, TooFewRoots
from .unipoly import UniPoly


def _show(f, scalars):
    text = str(f)
    if any(isinstance(s, RatFunc2) for s in scalars):
        return text
    return text.replace("x", "t")


@dataclass(frozen=True)
class SplitPoly:
    """gamma * prod(t - a_i) with pairwise distinct roots a_i."""

    gamma: object
    roots: tuple

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_scalar(self.gamma))
        object.__setattr__(self, "roots", tuple(as_scalar(r) for r in self.roots))
        if self.gamma == 0:
            raise InputError("gamma must be nonzero")
        if len(set(self.roots)) != len(self.roots):
            raise InputError("roots must be pairwise distinct")

    @classmethod
    def from_unipoly(cls, p):
        """Split a polynomial over Q by rational roots (None if impossible)."""
        split = p.split()
        if split is None or len(set(split[1])) != len(split[1]):
            return None
        return cls(split[0], tuple(split[1]))

    def to_ratfunc(self):
        out = RatFunc2(self.gamma)
        for a in self.roots:
            out = out * (X - a)
        return out

    def to_unipoly(self):
        return UniPoly.from_roots(self.roots, self.gamma, "t")

    def __str__(self):
        return _show(self.to_ratfunc(), (self.gamma,) + self.roots)


@dataclass(frozen=True)
class PowerProduct:
    """scale * prod((t - a_i)^(z_i)) with distinct a_i and integer z_i."""

    scale: object
    factors: tuple

    def __post_init__(self):
        object.__setattr__(self, "scale", as_scalar(self.scale))
        object.__setattr__(self, "factors", tuple((as_scalar(a), int(z)) for a, z in self.factors))
        roots = [a for a, _ in self.factors]
        if self.scale == 0:
            raise InputError("scale must be nonzero")
        if len(set(roots)) != len(roots):
            raise InputError("roots must be pairwise distinct")

    def to_ratfunc(self):
        out = RatFunc2(self.scale)
        for a, z in self.factors:
            out = out * (X - a) ** z
        return out

    def logderiv(self):
        """s'/s computed by differentiating the expanded product."""
        s = self.to_ratfunc()
        return s.diff("x") / s

    def __str__(self):
        scalars = [self.scale] + [a for a, _ in self.factors]
        v = "x" if any(isinstance(c, RatFunc2) for c in scalars) else "t"
        parts = [] if self.scale == 1 else [f"({scalar_str(self.scale)})"]
        for a, z in self.factors:
            if a == 0:
                base = v
            elif _negative(a):
                base = f"({v} + {scalar_str(-a)})"
            else:
                base = f"({v} - ({scalar_str(a)}))" if isinstance(a, RatFunc2) else f"({v} - {scalar_str(a)})"
            parts.append(base if z == 1 else f"{base}^{z}" if z > 0 else f"{base}^({z})")
        return "*".join(parts) or "1"


def _negative(a):
    return isinstance(a, Fraction) and a < 0


def logderiv_residues(s):
    """Residues ``[(a_i, z_i)]`` of s'/s, computed from the expanded quotient.

    Each residue is the value at a_i of (t - a_i) s'/s; the partial
    fraction sum is re-checked against s'/s before returning.
    """
    L = s.logderiv()
    out = []
    for a, _ in s.factors:
        r = as_scalar(((X - a) * L).subs(x=RatFunc2(a)))
        if r != 0:
            out.append((a, r))
    total = sum((z / (X - a) for a, z in out), RatFunc2(0))
    if total != L:
        raise AssertionError("partial fractions do not reproduce s'/s")
    return out


def _exponents(f):
    out = []
    for i, a in enumerate(f.roots):
        prod = ONE
        for j, b in enumerate(f.roots):
            if j != i:
                prod = prod * (a - b)
        out.append(as_scalar(1 / (f.gamma * prod)))
    return out


def solve_inverse_logderiv(f):
    """Find s with s'/s = 1/f, or return None if no power product works.

    The exponents are forced: z_i = 1 / (gamma * prod_{j != i}(a_i - a_j)).
    A solution exists exactly when they are all integers.  The result is
    normalized to scale 1 and checked exactly before it is returned.

    >>> s = solve_inverse_logderiv(SplitPoly(Fraction(1, 2), (0, 1, -1)))
    >>> str(s)
    't^(-2)*(t - 1)*(t + 1)'
    """
    if not f.roots:
        raise EmptyProduct("f must have at least one root")
    z = _exponents(f)
    if not all(is_integer(zi) for zi in z):
        return None
    s = PowerProduct(1, tuple((a, int(zi)) for a, zi in zip(f.roots, z)))
    if s.logderiv() * f.to_ratfunc() != 1:
        raise AssertionError("inverse logarithmic derivative failed its own check")
    return s


@dataclass(frozen=True)
class NecessaryConditions:
    sum_z: object
    sum_za: object

    @property
    def hold(self):
        return self.sum_z == 0 and self.sum_za == 0


def necessary_conditions(f):
    """The two linear conditions on the residues of 1/f (needs n >= 3 roots)."""
    if len(f.roots) < 3:
        raise TooFewRoots("the conditions need at least three roots")
    z = _exponents(f)
    return NecessaryConditions(as_scalar(sum(z, Fraction(0))), as_scalar(sum((zi * a for zi, a in zip(z, f.roots)), Fraction(0))))
