"""Small dense exact linear algebra over the rationals.

Matrices are lists of lists of Fractions.  Everything runs at desk scale
(a few dozen rows), so plain fraction Gaussian elimination with
largest-pivot selection is exact and fast enough.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Vec, as_vec, vsub

Matrix = list[list[Fraction]]


def copy_matrix(rows) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def _rref(m: Matrix) -> list[int]:
    """Reduce m in place to reduced row echelon form; return pivot columns."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        best_abs = Fraction(0)
        for i in range(r, nrows):
            a = abs(m[i][c])
            if a > best_abs:
                best, best_abs = i, a
        if best < 0:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return pivots


def rank(rows) -> int:
    if not rows:
        return 0
    m = copy_matrix(rows)
    return len(_rref(m))


def nullspace(rows, ncols: int | None = None) -> list[Vec]:
    """Basis of the right kernel; ``ncols`` is required when rows is empty."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty system")
        return [
            tuple(Fraction(1 if j == i else 0) for j in range(ncols))
            for i in range(ncols)
        ]
    m = copy_matrix(rows)
    ncols = len(m[0])
    pivots = _rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis: list[Vec] = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, pcol in zip(m, pivots):
            v[pcol] = -row[fcol]
        basis.append(tuple(v))
    return basis


def solve_square(a_rows, b) -> Vec | None:
    """Solve the square system a x = b exactly; None when a is singular."""
    n = len(a_rows)
    m = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(a_rows, b)]
    for c in range(n):
        best = -1
        best_abs = Fraction(0)
        for i in range(c, n):
            v = abs(m[i][c])
            if v > best_abs:
                best, best_abs = i, v
        if best < 0:
            return None
        m[c], m[best] = m[best], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return tuple(row[n] for row in m)


def det(a_rows) -> Fraction:
    n = len(a_rows)
    m = copy_matrix(a_rows)
    result = Fraction(1)
    for c in range(n):
        best = -1
        best_abs = Fraction(0)
        for i in range(c, n):
            v = abs(m[i][c])
            if v > best_abs:
                best, best_abs = i, v
        if best < 0:
            return Fraction(0)
        if best != c:
            m[c], m[best] = m[best], m[c]
            result = -result
        result *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] * inv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a_rows) -> Matrix | None:
    n = len(a_rows)
    m = [
        list(map(Fraction, row)) + [Fraction(1 if j == i else 0) for j in range(n)]
        for i, row in enumerate(a_rows)
    ]
    pivots = _rref(m)
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in m]


def adjugate_int(a_rows) -> tuple[list[list[int]], int]:
    """Adjugate and determinant of an integer matrix, both exact integers.

    adj(A) @ A == det(A) * I, so signs of A^-1 y can be read off integer
    products adj(A) @ y against the sign of det(A).
    """
    d = det(a_rows)
    if d == 0:
        raise ValueError("adjugate of a singular matrix is not useful here")
    inv = inverse(a_rows)
    assert inv is not None
    adj = [[x * d for x in row] for row in inv]
    out = []
    for row in adj:
        int_row = []
        for x in row:
            assert x.denominator == 1
            int_row.append(int(x))
        out.append(int_row)
    return out, int(d)


def affine_rank(points) -> int:
    """Dimension of the affine hull; -1 for no points, 0 for a single point."""
    pts = [as_vec(p) for p in points]
    if not pts:
        return -1
    if len(pts) == 1:
        return 0
    base = pts[0]
    return rank([list(vsub(p, base)) for p in pts[1:]])
