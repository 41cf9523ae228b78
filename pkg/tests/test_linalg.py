"""Exact Gaussian elimination helpers."""

import random
from fractions import Fraction as F

from momentkit import linalg


def test_solve_square():
    x = linalg.solve_square([[2, 1], [1, -1]], [F(3), F(0)])
    assert x == (F(1), F(1))
    assert linalg.solve_square([[1, 2], [2, 4]], [1, 2]) is None


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert linalg.rank(rows) == 2
    basis = linalg.nullspace(rows)
    assert len(basis) == 1
    v = basis[0]
    for row in rows:
        assert sum(F(a) * b for a, b in zip(row, v)) == 0
    assert len(linalg.nullspace([], ncols=3)) == 3


def test_det_and_inverse():
    a = [[1, 2], [3, 4]]
    assert linalg.det(a) == -2
    inv = linalg.inverse(a)
    prod = [
        [sum(F(a[i][k]) * inv[k][j] for k in range(2)) for j in range(2)]
        for i in range(2)
    ]
    assert prod == [[1, 0], [0, 1]]
    assert linalg.inverse([[1, 2], [2, 4]]) is None


def test_adjugate_int_identity():
    rng = random.Random(2)
    for _ in range(50):
        n = rng.randint(1, 4)
        a = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if linalg.det(a) == 0:
            continue
        adj, d = linalg.adjugate_int(a)
        prod = [
            [sum(adj[i][k] * a[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        expected = [[d if i == j else 0 for j in range(n)] for i in range(n)]
        assert prod == expected


def test_affine_rank():
    assert linalg.affine_rank([]) == -1
    assert linalg.affine_rank([(F(1), F(2))]) == 0
    assert linalg.affine_rank([(F(0), F(0)), (F(1), F(1)), (F(2), F(2))]) == 1
    assert linalg.affine_rank([(F(0), F(0)), (F(1), F(0)), (F(0), F(1))]) == 2
