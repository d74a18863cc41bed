"""Independent reference computations for the tests.

Everything here goes through sympy expressions and solvers directly, never
through the package's own field arithmetic, so that a bug in one route
cannot hide in the other.
"""

import functools
import itertools
import random
from fractions import Fraction

import sympy as sp

x, y, t = sp.symbols("x y t")


def to_sympy(value):
    return sp.sympify(str(value).replace("^", "**"), locals={"x": x, "y": y, "t": t})


def same(a, b):
    return sp.cancel(sp.together(to_sympy(a) - to_sympy(b))) == 0


def bracket(flag, g, h):
    f, g, h = (to_sympy(v) for v in (flag, g, h))
    return sp.cancel((sp.diff(g, x) * sp.diff(h, y) - sp.diff(g, y) * sp.diff(h, x)) * f)


def brute_mono_val(terms, nu):
    """min of a z1 + b z2 over a dict {(a, b): c} with the zero terms dropped."""
    live = [ab for ab, c in terms.items() if c != 0]
    if not live:
        return None
    return min(a * nu[0] + b * nu[1] for a, b in live)


def residues(roots, gamma):
    """Residues of 1 / (gamma prod(t - a)) from sympy's partial fractions."""
    f = sp.Rational(gamma) * sp.prod([t - sp.Rational(a) for a in roots])
    pf = sp.apart(1 / f, t)
    out = {}
    for term in sp.Add.make_args(pf):
        num, den = sp.fraction(sp.together(term))
        root = sp.solve(den, t)[0]
        out[root] = sp.cancel(num / sp.diff(den, t))
    return out


KT = sp.QQ.frac_field(t)


def k_elem(v):
    return KT.from_sympy(sp.sympify(str(v).replace("^", "**"), locals={"t": t}))


def affine_automorphisms(lines, coeff=1):
    return set(_affine_automorphisms(tuple(map(tuple, lines)), coeff))


@functools.lru_cache(maxsize=None)
def _affine_automorphisms(lines, coeff):
    """All affine maps p -> A p + v with F(A p + v) = det(A) F(p), where
    F = coeff * prod(a x + b y + c) over ``lines = [(a, b, c), ...]``.

    Such a map permutes the zero lines of F, so it is pinned down by the
    images of three intersection points, which must again be intersection
    points of assigned lines.  Every assignment is tried and the identity
    is checked on an (n+1) x (n+1) grid, which is exact for polynomials of
    degree <= n in each variable.  Arithmetic is sympy's Q(t) domain.
    Returns tuples (A00, A01, v0, A10, A11, v1) of domain elements.
    """
    L = [tuple(k_elem(c) for c in l) for l in lines]
    coeff = k_elem(coeff)
    n = len(L)

    def meet(l1, l2):
        d = l1[0] * l2[1] - l2[0] * l1[1]
        if not d:
            return None
        return ((l1[1] * l2[2] - l2[1] * l1[2]) / d, (l1[2] * l2[0] - l2[2] * l1[0]) / d)

    def F(p):
        out = coeff
        for a, b, c in L:
            out = out * (a * p[0] + b * p[1] + c)
        return out

    frame = _frame(L, meet)
    if frame is None:
        return _concurrent(L, coeff, meet, F)
    i, j, k, m = frame
    P1, P2, P3 = meet(L[i], L[j]), meet(L[i], L[k]), meet(L[m], L[j])
    used = sorted({i, j, k, m})
    grid = [(KT(a), KT(b)) for a in range(n + 1) for b in range(n + 1)]
    found = set()
    for images in itertools.permutations(range(n), len(used)):
        s = dict(zip(used, images))
        Q1, Q2, Q3 = meet(L[s[i]], L[s[j]]), meet(L[s[i]], L[s[k]]), meet(L[s[m]], L[s[j]])
        if None in (Q1, Q2, Q3):
            continue
        A = _solve2(P1, P2, P3, Q1, Q2, Q3)
        if A is None:
            continue
        a00, a01, a10, a11 = A
        det = a00 * a11 - a01 * a10
        if not det:
            continue
        v0 = Q1[0] - a00 * P1[0] - a01 * P1[1]
        v1 = Q1[1] - a10 * P1[0] - a11 * P1[1]
        if all(F((a00 * p + a01 * q + v0, a10 * p + a11 * q + v1)) == det * F((p, q)) for p, q in grid):
            found.add((a00, a01, v0, a10, a11, v1))
    return found


def _frame(L, meet):
    n = len(L)
    for i, j in itertools.permutations(range(n), 2):
        P1 = meet(L[i], L[j])
        if P1 is None:
            continue
        for k in range(n):
            P2 = meet(L[i], L[k]) if k not in (i, j) else None
            if P2 is None or P2 == P1:
                continue
            for m in range(n):
                if m == i:
                    continue
                P3 = meet(L[m], L[j])
                a, b, c = L[i]
                if P3 is not None and a * P3[0] + b * P3[1] + c:
                    return i, j, k, m
    return None


def _concurrent(L, coeff, meet, F):
    # all lines pass through P0; maps fix P0 and are linear about it up to
    # a common scale lam with lam^(n-2) r = 1
    n = len(L)
    P0 = next(meet(a, b) for a, b in itertools.combinations(L, 2) if meet(a, b) is not None)
    d = [(b, -a) for a, b, _ in L]
    i, j = next((i, j) for i, j in itertools.combinations(range(n), 2) if _det(d[i], d[j]))
    k = next(k for k in range(n) if k not in (i, j))
    al, be = _coords(d[k], d[i], d[j])
    lam = sp.Symbol("lam")
    grid = [(KT(a), KT(b)) for a in range(n + 1) for b in range(n + 1)]
    found = set()
    for si, sj, sk in itertools.permutations(range(n), 3):
        # lam_k d_sk = al lam_i d_si + be lam_j d_sj with lam_k = 1
        ci, cj = _coords(d[sk], d[si], d[sj]) if _det(d[si], d[sj]) else (None, None)
        if ci is None or not ci or not cj:
            continue
        li, lj = ci / al, cj / be
        # A d_i = li d_si, A d_j = lj d_sj
        u, w = d[i], d[j]
        D = _det(u, w)
        inv = (w[1] / D, -w[0] / D, -u[1] / D, u[0] / D)
        du = (li * d[si][0], li * d[si][1])
        dw = (lj * d[sj][0], lj * d[sj][1])
        A = (du[0] * inv[0] + dw[0] * inv[2], du[0] * inv[1] + dw[0] * inv[3],
             du[1] * inv[0] + dw[1] * inv[2], du[1] * inv[1] + dw[1] * inv[3])
        det = A[0] * A[3] - A[1] * A[2]

        def image(p, A=A):
            q = (p[0] - P0[0], p[1] - P0[1])
            return (A[0] * q[0] + A[1] * q[1] + P0[0], A[2] * q[0] + A[3] * q[1] + P0[1])

        base = next(p for p in grid if F(p))
        r = F(image(base)) / (det * F(base))
        if not all(F(image(p)) == r * det * F(p) for p in grid):
            continue
        rs = KT.to_sympy(r)
        for fac, _ in sp.factor_list(sp.together(lam ** (n - 2) * rs - 1), lam)[1]:
            if sp.degree(fac, lam) != 1:
                continue
            root = k_elem(sp.solve(fac, lam)[0])
            a00, a01, a10, a11 = (root * v for v in A)
            v0 = P0[0] - a00 * P0[0] - a01 * P0[1]
            v1 = P0[1] - a10 * P0[0] - a11 * P0[1]
            found.add((a00, a01, v0, a10, a11, v1))
    return found


def _det(u, w):
    return u[0] * w[1] - u[1] * w[0]


def _coords(v, u, w):
    D = _det(u, w)
    return _det(v, w) / D, _det(u, v) / D


def _solve2(P1, P2, P3, Q1, Q2, Q3):
    # A (P2 - P1) = Q2 - Q1 and A (P3 - P1) = Q3 - Q1
    u = (P2[0] - P1[0], P2[1] - P1[1])
    w = (P3[0] - P1[0], P3[1] - P1[1])
    d = u[0] * w[1] - u[1] * w[0]
    if not d:
        return None
    du = (Q2[0] - Q1[0], Q2[1] - Q1[1])
    dw = (Q3[0] - Q1[0], Q3[1] - Q1[1])
    # A = [du dw] [u w]^-1
    inv = (w[1] / d, -w[0] / d, -u[1] / d, u[0] / d)
    return (du[0] * inv[0] + dw[0] * inv[2], du[0] * inv[1] + dw[0] * inv[3],
            du[1] * inv[0] + dw[1] * inv[2], du[1] * inv[1] + dw[1] * inv[3])


# random inputs ---------------------------------------------------------
def random_poly_terms(rng, max_deg=4, max_terms=5, lo=-5, hi=5):
    out = {}
    for _ in range(rng.randint(1, max_terms)):
        d = rng.randint(0, max_deg)
        a = rng.randint(0, d)
        c = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
        out[(a, d - a)] = out.get((a, d - a), 0) + c
    return out


def random_rational(rng):
    return Fraction(rng.randint(-6, 6), rng.randint(1, 4))


def rng(seed):
    return random.Random(seed)
