from fractions import Fraction as F

import pytest

from qagt import linalg


def test_det_inverse_solve():
    a = [[F(2), F(1)], [F(7), F(4)]]
    assert linalg.det(a) == 1
    inv = linalg.inverse(a)
    assert linalg.matmul(a, inv) == [[1, 0], [0, 1]]
    assert linalg.solve(a, [F(3), F(11)]) == [1, 1]


def test_overdetermined_consistent_and_inconsistent():
    rows = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert linalg.solve(rows, [F(2), F(3), F(5)]) == [2, 3]
    with pytest.raises(linalg.SingularMatrixError, match="inconsistent"):
        linalg.solve(rows, [F(2), F(3), F(6)])


def test_singular_and_nullspace():
    s = [[F(1), F(2)], [F(2), F(4)]]
    assert linalg.det(s) == 0 and linalg.rank(s) == 1
    with pytest.raises(linalg.SingularMatrixError):
        linalg.inverse(s)
    with pytest.raises(linalg.SingularMatrixError, match="not unique"):
        linalg.solve(s, [F(1), F(2)])
    (v,) = linalg.nullspace(s)
    assert linalg.matmul(s, [[c] for c in v]) == [[0], [0]]
