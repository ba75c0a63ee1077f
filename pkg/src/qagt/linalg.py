"""Dense exact linear algebra over ``Fraction`` (plain lists of rows)."""

from __future__ import annotations

from fractions import Fraction


class SingularMatrixError(ArithmeticError):
    pass


def _copy(rows):
    return [[Fraction(x) for x in row] for row in rows]


def row_echelon(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(row_echelon(rows)[1])


def nullspace(rows) -> list:
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return []
    ncols = len(rows[0])
    m, pivots = row_echelon(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][f]
        basis.append(v)
    return basis


def det(rows) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = _copy(rows)
    sign = 1
    acc = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        acc *= piv
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / piv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return sign * acc


def solve(rows, rhs) -> list:
    """Unique solution of ``A x = b``; A may be overdetermined but must be consistent.

    Raises
    ------
    SingularMatrixError
        If the solution is not unique or the system is inconsistent.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    m, pivots = row_echelon(aug)
    if ncols in pivots:
        raise SingularMatrixError("inconsistent system")
    if len(pivots) < ncols:
        raise SingularMatrixError(f"solution not unique (rank {len(pivots)} < {ncols})")
    return [m[i][ncols] for i in range(ncols)]


def inverse(rows) -> list:
    n = len(rows)
    aug = [list(r) + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    m, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in m]


def matmul(a, b) -> list:
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def is_symmetric(rows) -> bool:
    return all(rows[i][j] == rows[j][i] for i in range(len(rows)) for j in range(i))
