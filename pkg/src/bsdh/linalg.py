"""Small exact linear algebra over ``Fraction``.

Matrices are lists of rows.  Every space the engine touches is a single weight
space, so dimensions stay in the tens and dense Gaussian elimination is fine.
"""

from fractions import Fraction

__all__ = [
    "Matrix", "zeros", "identity", "matmul", "transpose", "rref", "rank",
    "nullspace", "column_basis", "annihilator", "is_zero",
]

Matrix = list  # list[list[Fraction]]


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(size):
    m = zeros(size, size)
    for i in range(size):
        m[i][i] = Fraction(1)
    return m


def is_zero(m):
    return all(x == 0 for row in m for x in row)


def transpose(m, rows=None, cols=None):
    if rows is None:
        rows = len(m)
    if cols is None:
        cols = len(m[0]) if m else 0
    return [[m[r][c] for r in range(rows)] for c in range(cols)]


def matmul(a, b, inner=None):
    """Product ``a @ b``; ``inner`` is needed only when ``a`` has no rows to infer it from."""
    if not a:
        return []
    if inner is None:
        inner = len(a[0])
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k in range(inner):
            x = row[k]
            if x == 0:
                continue
            bk = b[k]
            for c in range(cols):
                y = bk[c]
                if y:
                    acc[c] += x * y
        out.append(acc)
    return out


def rref(m, cols=None):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``; zero rows dropped."""
    rows = [list(r) for r in m]
    if cols is None:
        cols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / Fraction(rows[r][c])
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m, cols=None):
    return len(rref(m, cols)[1])


def nullspace(m, cols):
    """Basis (list of column vectors) of ``{x : m x = 0}`` for an ``? x cols`` matrix."""
    red, pivots = rref(m, cols) if m else ([], [])
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_basis(vectors, size):
    """Canonical basis of the span of ``vectors`` (each of length ``size``).

    The result is in reduced column-echelon form: at each pivot coordinate exactly
    one basis vector is 1 and the others vanish, so coordinates of any vector in
    the span can be read off at the pivots.  Returns ``(basis, pivots)``.
    """
    if not vectors:
        return [], []
    red, pivots = rref(vectors, size)
    return red, pivots


def annihilator(basis, size):
    """Rows ``y`` spanning ``{y : y . b = 0 for all b in basis}``."""
    if not basis:
        return [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    return nullspace(basis, size)
