"""Poisson fields K{f}: the bracket {g, h} = (g_x h_y - g_y h_x) * f on k(x, y)."""

from dataclasses import dataclass

from .arith import ONE, X, Y, RatFunc2
from .errors import InputError, UnknownVariable
from .forms import FactoredFlag, factor_flag
from .gcd import gcd_bi
from .linalg import nullspace
from .parse import MODES, parse


@dataclass(frozen=True, eq=False)
class PoissonField:
    """The Poisson field K{flag} over k (``mode`` "q" or "qt").

    ``factored`` optionally records the flag as a product of linear forms;
    ``certificate`` optionally carries an infinite-flag certificate.
    """

    flag: RatFunc2
    mode: str = "q"
    factored: FactoredFlag = None
    certificate: object = None

    def __post_init__(self):
        object.__setattr__(self, "flag", RatFunc2(self.flag))
        if self.mode not in MODES:
            raise InputError(f"unknown scalar mode {self.mode!r}")
        if not self.flag:
            raise InputError("the flag must be nonzero")
        if self.mode == "q" and self.flag.uses_t():
            raise UnknownVariable("t is only available in Q(t) mode")
        if self.factored is not None and self.factored.expand() != self.flag:
            raise InputError("factored form does not expand to the flag")

    @classmethod
    def from_text(cls, text, mode="q"):
        """Parse a flag, keeping its product-of-linear-forms structure if any."""
        flag = parse(text, mode)
        return cls(flag, mode, factor_flag(text, mode))

    @classmethod
    def from_flag(cls, flag, mode=None):
        flag = RatFunc2(flag)
        if mode is None:
            mode = "qt" if flag.uses_t() else "q"
        return cls(flag, mode, factor_flag(flag, mode))

    def bracket(self, g, h):
        return bracket(self, g, h)

    def __str__(self):
        return f"K{{{self.flag}}}"


def weyl_bracket(g, h):
    """g_x h_y - g_y h_x."""
    g, h = RatFunc2(g), RatFunc2(h)
    return g.diff("x") * h.diff("y") - g.diff("y") * h.diff("x")


def bracket(K, g, h):
    """The bracket of K{f}.

    >>> K = PoissonField.from_text("x*y")
    >>> str(bracket(K, X, Y))
    'x*y'
    """
    g, h = RatFunc2(g), RatFunc2(h)
    if K.mode == "q" and (g.uses_t() or h.uses_t()):
        raise UnknownVariable("t is only available in Q(t) mode")
    return lazy_bracket(K.flag, g, h)


def monomial_bracket(flag, a, b, c, d):
    """{x^a y^b, x^c y^d} = (ad - bc) x^(a+c-1) y^(b+d-1) * flag, for any integers."""
    return (a * d - b * c) * X ** (a + c - 1) * Y ** (b + d - 1) * RatFunc2(flag)


class _Lazy:
    """Values num / prod(B_i^e_i) over fixed denominator bases B_i.

    Brackets of the inputs only ever have denominators built from the
    inputs' own denominators, so sums can use the exponentwise maximum
    instead of the full product and no gcd is needed until the end.
    """

    def __init__(self, values):
        fs = [RatFunc2(v)._f for v in values]
        self.ring = fs[0].denom.ring
        self.bases = [f.denom for f in fs]
        self.dbases = [[B.diff(g) for g in self.ring.gens[:2]] for B in self.bases]
        self.inputs = []
        for i, f in enumerate(fs):
            e = [0] * len(fs)
            e[i] = 1
            self.inputs.append((f.numer, tuple(e)))

    def _scale(self, p, e):
        n, have = p
        for B, k, h in zip(self.bases, e, have):
            if k > h:
                n = n * B ** (k - h)
        return n

    def add(self, p, q):
        e = tuple(max(i, j) for i, j in zip(p[1], q[1]))
        return self._scale(p, e) + self._scale(q, e), e

    def mul(self, p, q):
        return p[0] * q[0], tuple(i + j for i, j in zip(p[1], q[1]))

    def diff(self, p, k):
        # (n/D)' = (n' P - n sum e_i B_i' P/B_i) / (D P) with P the product of the live bases
        n, e = p
        live = [i for i, x in enumerate(e) if x]
        P = self.ring.one
        for i in live:
            P = P * self.bases[i]
        out = n.diff(self.ring.gens[k]) * P
        for i in live:
            rest = self.ring.one
            for j in live:
                if j != i:
                    rest = rest * self.bases[j]
            out = out - n * e[i] * self.dbases[i][k] * rest
        return out, tuple(x + (i in live) for i, x in enumerate(e))

    def bracket(self, flag, g, h):
        gx, gy, hx, hy = self.diff(g, 0), self.diff(g, 1), self.diff(h, 0), self.diff(h, 1)
        w = self.add(self.mul(gx, hy), self.mul(gy, (-hx[0], hx[1])))
        return self.mul(w, flag)

    def value(self, p):
        n, e = p
        if not n:
            return RatFunc2(0)
        den = self.ring.one
        for B, k in zip(self.bases, e):
            den = den * B ** k
        return RatFunc2(self.ring.to_field().new(n, den))


def lazy_bracket(flag, g, h):
    """Same value as ``bracket`` on K{flag}, computed without intermediate gcds."""
    L = _Lazy((flag, g, h))
    f, g, h = L.inputs
    return L.value(L.bracket(f, g, h))


def jacobiator(flag, a, b, c):
    """{{a,b},c} + {{b,c},a} + {{c,a},b}; identically zero for every flag."""
    L = _Lazy((flag, a, b, c))
    f, a, b, c = L.inputs
    br = L.bracket
    return L.value(L.add(L.add(br(f, br(f, a, b), c), br(f, br(f, b, c), a)), br(f, br(f, c, a), b)))


def _lcm(p, q):
    return p * q / gcd_bi(p, q)


def algebraic_relation(g, h, degree=2):
    """Coefficients ``{(i, j): c}`` of a relation sum c g^i h^j = 0, i + j <= degree.

    Returns None when g and h satisfy no such relation.
    """
    g, h = RatFunc2(g), RatFunc2(h)
    exps = [(i, d - i) for d in range(degree + 1) for i in range(d + 1)]
    vals = [g ** i * h ** j for i, j in exps]
    common = ONE
    for v in vals:
        common = _lcm(common, v.den)
    polys = [v * common for v in vals]
    monos = sorted({ab for p in polys for ab in p.terms()})
    rows = [[p.terms().get(m, 0) for p in polys] for m in monos]
    kernel = nullspace(rows, len(exps))
    if not kernel:
        return None
    return {e: c for e, c in zip(exps, kernel[0]) if c != 0}
