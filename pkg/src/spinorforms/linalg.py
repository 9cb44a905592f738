"""Exact linear algebra over the rationals.

Matrices are lists of rows of :class:`fractions.Fraction`.  Everything here is
deterministic: row reduction always picks the first usable pivot, so bases
returned by :func:`nullspace` and :func:`row_space` are reproducible.
"""

from fractions import Fraction


class SingularMatrixError(ValueError):
    pass


def to_fractions(matrix):
    return [[Fraction(x) for x in row] for row in matrix]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(n, m=None):
    m = n if m is None else m
    return [[Fraction(0)] * m for _ in range(n)]


def transpose(matrix):
    return [list(col) for col in zip(*matrix)]


def matmul(a, b):
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col) if x and y), Fraction(0))
             for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def matadd(a, b, scale=1):
    return [[x + scale * y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def matscale(a, s):
    return [[s * x for x in row] for row in a]


def trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def rref(matrix):
    """Reduced row echelon form.  Returns ``(rows, pivot_columns)``."""
    rows = [list(map(Fraction, r)) for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        pivot_row = rows[r]
        nz = [j for j in range(c, ncols) if pivot_row[j] != 0]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                row_i = rows[i]
                for j in nz:
                    row_i[j] -= f * pivot_row[j]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, ncols=None):
    """Basis of ``{x : matrix @ x = 0}``, one vector per free column."""
    if not matrix:
        if ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    ncols = len(matrix[0])
    rows, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def row_space(vectors):
    """Echelonised basis of the span of ``vectors``."""
    if not vectors:
        return []
    return rref(vectors)[0]


def solve(matrix, rhs):
    """Solve ``matrix @ x = rhs`` for one solution; raise if inconsistent."""
    n = len(matrix[0])
    aug = [list(row) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    rows, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        raise SingularMatrixError("inconsistent linear system")
    x = [Fraction(0)] * n
    for row, p in zip(rows, pivots):
        x[p] = row[n]
    return x


def inverse(matrix):
    n = len(matrix)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(matrix)]
    rows, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is not invertible")
    return [row[n:] for row in rows]


def det(matrix):
    n = len(matrix)
    if n == 0:
        return Fraction(1)
    a = [list(map(Fraction, row)) for row in matrix]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] / piv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return sign * result


def in_span(basis_rref, pivots, v):
    """Reduce ``v`` against an rref basis; return the residual vector."""
    w = list(v)
    for row, p in zip(basis_rref, pivots):
        if w[p] != 0:
            f = w[p]
            w = [a - f * b for a, b in zip(w, row)]
    return w


def coordinates(basis, v):
    """Coordinates of ``v`` in the (linearly independent) ``basis``."""
    return solve(transpose(basis), v)


def congruence_diagonal(sym):
    """Diagonal entries of a rational matrix congruent to the symmetric ``sym``.

    Symmetric Gaussian elimination; a zero pivot with a nonzero off-diagonal
    entry is repaired by adding a row/column pair first.
    """
    a = [list(map(Fraction, row)) for row in sym]
    n = len(a)
    diag = []
    for k in range(n):
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is not None:
                    # e_k <- e_k + e_j makes the (k,k) entry 2 a[k][j]
                    for c in range(n):
                        a[k][c] += a[j][c]
                    for r in range(n):
                        a[r][k] += a[r][j]
        piv = a[k][k]
        diag.append(piv)
        if piv == 0:
            continue
        for i in range(k + 1, n):
            if a[i][k] != 0:
                f = a[i][k] / piv
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
    return diag


def signature(sym):
    d = congruence_diagonal(sym)
    return sum(1 for x in d if x > 0), sum(1 for x in d if x < 0)


def rational_sqrt(q):
    """Exact square root of a non-negative rational, or ``None``."""
    from math import isqrt

    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None
