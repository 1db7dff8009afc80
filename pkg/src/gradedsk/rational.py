"""Exact rational scalars and dense exact linear algebra.

All field coefficients in this package are rationals of type ``QQ``
(gmpy2.mpq when available, fractions.Fraction otherwise).  The linear
algebra here is textbook Gaussian elimination; matrices are lists of
lists of QQ and stay small (dimension <= 64).
"""

from __future__ import annotations

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    from fractions import Fraction as QQ

QQ0 = QQ(0)
QQ1 = QQ(1)


def qq(value) -> QQ:
    """Coerce ints, strings like '3/2', and rationals to QQ."""
    if isinstance(value, str):
        if "/" in value:
            num, den = value.split("/", 1)
            return QQ(int(num), int(den))
        return QQ(int(value))
    return QQ(value)


def qq_str(value) -> str:
    v = QQ(value)
    return str(v)


def solve_right(matrix, rhs):
    """Solve ``matrix @ x = rhs`` exactly; return None if singular.

    ``matrix`` is a list of n rows of length n, ``rhs`` a list of length n.
    """
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if aug[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = QQ1 / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                prow = aug[col]
                aug[r] = [v - f * p for v, p in zip(aug[r], prow)]
    return [aug[i][n] for i in range(n)]


def nullspace(rows, width):
    """Basis of the right null space {x : rows @ x = 0}, as lists of QQ."""
    mat = [list(r) for r in rows]
    m = len(mat)
    pivots = []
    r = 0
    for col in range(width):
        piv = None
        for k in range(r, m):
            if mat[k][col] != 0:
                piv = k
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = QQ1 / mat[r][col]
        mat[r] = [v * inv for v in mat[r]]
        for k in range(m):
            if k != r and mat[k][col] != 0:
                f = mat[k][col]
                prow = mat[r]
                mat[k] = [v - f * p for v, p in zip(mat[k], prow)]
        pivots.append(col)
        r += 1
        if r == m:
            break
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fc in free:
        vec = [QQ0] * width
        vec[fc] = QQ1
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis


def left_fixed_space(matrices, dim):
    """Basis of {x : x @ M = x for every M in matrices} (row vectors)."""
    rows = []
    for mat in matrices:
        # transpose of (M - I): columns of M become constraint rows
        for col in range(dim):
            row = [mat[r][col] - (QQ1 if r == col else QQ0) for r in range(dim)]
            rows.append(row)
    if not rows:
        return [[QQ1 if i == j else QQ0 for j in range(dim)] for i in range(dim)]
    return nullspace(rows, dim)
