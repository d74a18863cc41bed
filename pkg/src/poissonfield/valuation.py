"""Monomial valuations, w-levels, flabbiness, and height tables.

A monomial valuation nu = (z1, z2) gives x^a y^b the value a z1 + b z2;
a polynomial gets the minimum over its terms and a quotient the
difference.  For a flag f the w-level of nu is z1 + z2 - nu(f).
"""

import math
from dataclasses import dataclass

from .classify import K1n0, Kq, Weyl, classify_flag
from .errors import NotDistinctForms, Unsupported
from .families import as_factored, family2
from .forms import FactoredFlag


@dataclass(frozen=True)
class MonomialValuation:
    z1: int
    z2: int

    def __call__(self, u):
        return mono_val((self.z1, self.z2), u)


def _poly_val(terms, z1, z2):
    return min(a * z1 + b * z2 for (a, b, _), _c in terms)


def mono_val(nu, u):
    """The monomial valuation of u; ``math.inf`` for u = 0.

    >>> from poissonfield.parse import parse
    >>> mono_val((-1, -1), parse("x^2*y - 1/2"))
    -3
    """
    z1, z2 = nu
    if not u:
        return math.inf
    num, den = u.canonical()
    return _poly_val(num, z1, z2) - _poly_val(den, z1, z2)


def w_level(nu, flag):
    z1, z2 = nu
    return z1 + z2 - mono_val(nu, flag)


@dataclass(frozen=True)
class FlabbyResult:
    flabby: bool
    failing_index: int = None


def is_flabby(F):
    """Check that each factor has three partners with independent linear parts.

    ``F`` is a FactoredFlag, expression text or a value that can be read
    as a product of linear forms.  Raises NotDistinctForms if a factor
    repeats or the flag is not such a product.
    """
    ff = F if isinstance(F, FactoredFlag) else as_factored(F)
    if ff is None:
        raise NotDistinctForms("flag is not a product of linear forms")
    forms = ff.distinct_forms()
    for i, li in enumerate(forms):
        partners = sum(1 for j, lj in enumerate(forms) if j != i and li.independent(lj))
        if partners < 3:
            return FlabbyResult(False, i)
    return FlabbyResult(True, None)


# recognition shared by heights, Gamma and Dixmier ------------------------
@dataclass(frozen=True)
class Recognition:
    family: str
    data: object = None
    classification: object = None


def recognize(K):
    """Identify which table row applies to K.

    family is one of "infinite", "canonical", "family2", "flabby", or
    None when nothing applies.
    """
    if K.certificate is not None:
        return Recognition("infinite", K.certificate)
    c = classify_flag(K)
    if c.resolved and c.verified:
        return Recognition("canonical", c.type, c)
    fam2 = family2(K.flag)
    if fam2 is not None and fam2[0].degree >= 2:
        return Recognition("family2", fam2, c)
    ff = as_factored(K)
    if ff is not None:
        try:
            if is_flabby(ff).flabby:
                return Recognition("flabby", ff, c)
        except NotDistinctForms:
            pass
    return Recognition(None, None, c)


@dataclass(frozen=True)
class HeightReport:
    flag_height: object
    valuation_height1: object
    witness: tuple
    cohereditary: object
    theorem: str
    witness_flag: object = None
    vht1_lower_bound: object = None

    def summary(self):
        def show(v):
            if v is None:
                return "?"
            if v == math.inf:
                return "+inf"
            if v == -math.inf:
                return "-inf"
            return str(v)

        text = f"fht={show(self.flag_height)} vht1={show(self.valuation_height1)}"
        if self.witness is not None:
            (z1, z2), w = self.witness
            text += f" witness=({z1},{z2})@w={w}"
        elif self.vht1_lower_bound is not None:
            text += f" vht1>={self.vht1_lower_bound}"
        return text


WITNESS = (-1, -1)


def _finite(fht, vht, flag, tag):
    w = w_level(WITNESS, flag)
    assert w == fht - 2
    # equal heights force coheredity; fht = 0 is trivially minimal
    coh = True if (vht == fht or fht == 0) else None
    return HeightReport(fht, vht, (WITNESS, w), coh, tag, flag)


def height(K):
    """Flag height and 1-valuation height for the recognized families."""
    rec = recognize(K)
    if rec.family == "infinite":
        cert = rec.data
        return HeightReport(math.inf, None, None, None, "xy*f(h) with a high-pole h: infinite flag height",
                            K.flag, cert.fpoly.degree + 2)
    if rec.family == "canonical":
        t = rec.data
        if isinstance(t, Weyl):
            return _finite(0, -math.inf, t.canonical_flag(), "Weyl field: flag height 0, no finite valuation level")
        if isinstance(t, Kq):
            return _finite(2, 2, t.canonical_flag(), "q-skew field: both heights equal 2")
        if isinstance(t, K1n0):
            return _finite(t.n + 2, t.n + 2, t.canonical_flag(), "monomial family: both heights equal n + 2")
    if rec.family == "family2":
        d = rec.data[0].degree
        return _finite(d + 2, d + 2, K.flag, "p(x)xy family: both heights equal deg p + 2")
    if rec.family == "flabby":
        d = K.flag.total_degree()
        return _finite(d, d, K.flag, "flabby product of linear forms: both heights equal deg f")
    raise Unsupported(f"no height theorem covers {K.flag}")


def verify_witness(K, nu, claimed_w, flag=None):
    """Check a claimed w-level; for nu = (-1, -1) also the degree relation."""
    flag = K.flag if flag is None else flag
    if w_level(nu, flag) != claimed_w:
        return False
    if tuple(nu) == WITNESS and flag.is_polynomial():
        if claimed_w != flag.total_degree() - 2:
            return False
        from .arith import X, Y

        return mono_val(nu, X) < 0 and mono_val(nu, Y) < 0
    return True


@dataclass(frozen=True)
class GammaReport:
    ring: str
    theorem: str
    coordinates: str = "canonical"


def gamma1_zero(K):
    """The subring of elements with a 1-step vanishing Poisson structure."""
    rec = recognize(K)
    if rec.family == "canonical":
        t = rec.data
        if isinstance(t, (Weyl, Kq)):
            return GammaReport("k", "Weyl and q-skew fields: only constants")
        return GammaReport("k[x]", "monomial family: polynomials in x")
    if rec.family == "family2":
        var = rec.data[1]
        return GammaReport(f"k[{var}]", "p(x)xy family with deg p >= 2", "given")
    if rec.family == "flabby":
        return GammaReport("k[x,y]", "flabby product of linear forms", "given")
    raise Unsupported(f"no description of this subring is known for {K.flag}")
