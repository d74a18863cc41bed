"""Polynomial gcd in k[x, y] by content / primitive-part recursion.

A polynomial is viewed as a polynomial in y whose coefficients are
polynomials in x (whose coefficients, in Q(t) mode, are polynomials in
t).  Each level runs a primitive pseudo-remainder sequence and recurses
on contents.  Dense nested tuples are used internally: a level-0 value is
a ``Fraction``, a level-L value is a tuple of level-(L-1) values, low
degree first, with no trailing zeros.

The rational-function field itself reduces fractions through sympy; this
module is the independent, hand-written route, and the tests cross-check
the two.
"""

from fractions import Fraction

from .arith import RatFunc2, X, Y, T

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _is_zero(a, level):
    return a == 0 if level == 0 else not a


def _trim(coeffs, level):
    coeffs = list(coeffs)
    while coeffs and _is_zero(coeffs[-1], level - 1):
        coeffs.pop()
    return tuple(coeffs)


def _const(c, level):
    if level == 0:
        return c
    return _trim((_const(c, level - 1),), level) if c != 0 else ()


def _add(a, b, level):
    if level == 0:
        return a + b
    n = max(len(a), len(b))
    zero = _const(_ZERO, level - 1)
    return _trim((_add(a[i] if i < len(a) else zero, b[i] if i < len(b) else zero, level - 1) for i in range(n)), level)


def _neg(a, level):
    if level == 0:
        return -a
    return tuple(_neg(c, level - 1) for c in a)


def _sub(a, b, level):
    return _add(a, _neg(b, level), level)


def _mul(a, b, level):
    if level == 0:
        return a * b
    if not a or not b:
        return ()
    zero = _const(_ZERO, level - 1)
    out = [zero] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if _is_zero(ca, level - 1):
            continue
        for j, cb in enumerate(b):
            out[i + j] = _add(out[i + j], _mul(ca, cb, level - 1), level - 1)
    return _trim(out, level)


def _shift(a, k, level):
    return _trim((_const(_ZERO, level - 1),) * k + tuple(a), level)


def _exact_div(a, b, level):
    """a / b if b divides a exactly, else None."""
    if level == 0:
        return a / b
    if not a:
        return ()
    quot = ()
    r = a
    while r and len(r) >= len(b):
        c = _exact_div(r[-1], b[-1], level - 1)
        if c is None:
            return None
        k = len(r) - len(b)
        term = _shift((c,), k, level)
        quot = _add(quot, term, level)
        r = _sub(r, _mul(term, b, level), level)
    return quot if not r else None


def _prem(a, b, level):
    r = a
    lb = (b[-1],)
    while r and len(r) >= len(b):
        k = len(r) - len(b)
        r = _sub(_mul(lb, r, level), _mul(_shift((r[-1],), k, level), b, level), level)
    return r


def _base_lc(a, level):
    while level > 0:
        a = a[-1]
        level -= 1
    return a


def _normalize(a, level):
    if _is_zero(a, level):
        return a
    return _mul(_const(_ONE / _base_lc(a, level), level), a, level)


def _content(a, level):
    g = _const(_ZERO, level - 1)
    for c in a:
        g = _gcd(g, c, level - 1)
        if _is_unit(g, level - 1):
            break
    return g


def _is_unit(a, level):
    while level > 0:
        if len(a) != 1:
            return False
        a = a[0]
        level -= 1
    return a != 0


def _primitive(a, level):
    c = _content(a, level)
    return tuple(_exact_div(x, c, level - 1) for x in a)


def _gcd(a, b, level):
    if level == 0:
        return _ONE if (a != 0 or b != 0) else _ZERO
    if not a:
        return _normalize(b, level)
    if not b:
        return _normalize(a, level)
    cont = _gcd(_content(a, level), _content(b, level), level - 1)
    pa, pb = _primitive(a, level), _primitive(b, level)
    if len(pa) < len(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, level)
        pa, pb = pb, (_primitive(r, level) if r else ())
    if len(pa) == 1:
        pa = _const(_ONE, level)
    return _normalize(_mul((cont,), pa, level), level)


def _to_nested(f):
    """Numerator of a polynomial f as y-over-x-over-t nested tuples."""
    num, _ = f.canonical()
    dense = {}
    for (a, b, c), coeff in num:
        dense[(b, a, c)] = coeff
    if not dense:
        return ()
    by = max(k[0] for k in dense)
    out = []
    for b in range(by + 1):
        xs = [k for k in dense if k[0] == b]
        ax = max((k[1] for k in xs), default=-1)
        xcoeffs = []
        for a in range(ax + 1):
            ts = [k[2] for k in xs if k[1] == a]
            ct = max(ts, default=-1)
            xcoeffs.append(_trim((dense.get((b, a, c), _ZERO) for c in range(ct + 1)), 1))
        out.append(_trim(xcoeffs, 2))
    return _trim(out, 3)


def _from_nested(p):
    out = RatFunc2(0)
    for b, xc in enumerate(p):
        for a, tc in enumerate(xc):
            for c, coeff in enumerate(tc):
                if coeff:
                    out = out + coeff * X ** a * Y ** b * T ** c
    return out


def gcd_bi(p, q):
    """Greatest common divisor of two polynomials in x, y over k.

    The result is normalized so that its leading coefficient (graded
    lexicographic, x > y) is 1.  ``gcd_bi(0, 0)`` is 0.

    >>> from poissonfield.parse import parse
    >>> str(gcd_bi(parse("x^2*y"), parse("x*y^2")))
    'x*y'
    """
    p, q = RatFunc2(p), RatFunc2(q)
    for f in (p, q):
        if not f.is_polynomial():
            raise ValueError(f"{f} is not a polynomial in x, y")
    if not p and not q:
        return RatFunc2(0)
    g = _gcd(_to_nested(p), _to_nested(q), 3)
    # drop the factor that only involves t: it is a unit of k[x, y]
    tcont = ()
    for xc in g:
        for tc in xc:
            tcont = _gcd(tcont, tc, 1)
    g = tuple(tuple(_exact_div(tc, tcont, 1) for tc in xc) for xc in g)
    out = _from_nested(g)
    return out / _xy_lc(out)


def _xy_lc(f):
    terms = f.terms()
    lead = max(terms, key=lambda ab: (ab[0] + ab[1], ab[0]))
    return terms[lead]
