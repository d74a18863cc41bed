"""Recognizers for the flag shapes that have their own theory.

family 2:  p(x) x y                      (p in k[x])
family 4:  c prod(x + xi_i) prod(y + chi_j)
flabby:    product of distinct linear forms, each with at least three
           other factors whose linear parts are independent of its own
"""

from dataclasses import dataclass

from .arith import X, Y, RatFunc2
from .forms import FactoredFlag, factor_flag
from .unipoly import UniPoly


def family2(flag):
    """Return ``(p, var)`` if flag = p(var) * x * y with p a polynomial, else None.

    ``var`` is "x" or "y"; monomial flags x^a y are reported with var "x".
    """
    flag = RatFunc2(flag)
    if not flag.is_polynomial():
        return None
    rest = flag / (X * Y)
    if not rest.is_polynomial():
        return None
    if not rest.uses("y"):
        return UniPoly.from_ratfunc(rest, "x"), "x"
    if not rest.uses("x"):
        return UniPoly.from_ratfunc(rest, "y"), "y"
    return None


def as_factored(K_or_flag):
    """The FactoredFlag of a PoissonField, FactoredFlag, text or value."""
    if isinstance(K_or_flag, FactoredFlag):
        return K_or_flag
    if isinstance(K_or_flag, str):
        return factor_flag(K_or_flag)
    factored = getattr(K_or_flag, "factored", None)
    if factored is not None:
        return factored
    flag = getattr(K_or_flag, "flag", K_or_flag)
    mode = getattr(K_or_flag, "mode", "qt" if RatFunc2(flag).uses_t() else "q")
    return factor_flag(flag, mode)


@dataclass(frozen=True)
class Family4:
    coeff: object
    xi: tuple
    chi: tuple


def family4(ff):
    """Split a product of distinct x- and y-parallel forms into (c, xi, chi)."""
    if ff is None or not ff.is_polynomial():
        return None
    xi, chi = [], []
    for form, m in ff.forms():
        if m != 1:
            return None
        if form.b == 0:
            xi.append(form.c)
        elif form.a == 0:
            chi.append(form.c)
        else:
            return None
    return Family4(ff.coeff, tuple(xi), tuple(chi))
