"""Gaussian elimination over k (``Fraction`` or t-only ``RatFunc2`` entries)."""

from .arith import as_scalar


def rref(rows, ncols):
    """Reduced row echelon form; returns ``(rows, pivot_columns)``."""
    m = [[as_scalar(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for col in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = 1 / m[r][col]
        m[r] = [as_scalar(v * inv) for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [as_scalar(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve(matrix, rhs):
    """Solve ``matrix @ v = rhs``.

    Returns ``(particular, kernel_basis)`` or None if inconsistent.
    """
    n = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    m, pivots = rref(aug, n + 1)
    if n in pivots:
        return None
    particular = [as_scalar(0)] * n
    for i, col in enumerate(pivots):
        particular[col] = m[i][n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [as_scalar(0)] * n
        v[fc] = as_scalar(1)
        for i, col in enumerate(pivots):
            v[col] = as_scalar(-m[i][fc])
        basis.append(v)
    return particular, basis


def nullspace(matrix, ncols):
    if not matrix:
        return [[as_scalar(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    return solve(matrix, [0] * len(matrix))[1]


def rank(matrix, ncols):
    return len(rref(matrix, ncols)[1])
