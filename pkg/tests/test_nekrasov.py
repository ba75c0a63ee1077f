from fractions import Fraction as F

import pytest

from qagt import nekrasov as nk
from qagt.exact import HigherOrderPoleError
from qagt.params import ParamPoint
from qagt.partitions import EMPTY, Partition, partition_pairs, rectangle

ONE = Partition((1,))

# independent oracle: sympy rebuild of N and Z_{lam,mu} from the product
# definitions, summed in symbolic q, t, Q and then specialised
Z_AT_Q5_Q2_T3 = {1: F(50, 91), 2: F(2153075, 2195193), 3: F(154052881250, 2387362390413)}
Z2_AT_Q11_4_Q5_3_T7_2 = F(23280061738450, 58030207061229)


def z10_closed(Q, q, t):
    return 1 / ((t - 1) * (1 / q - 1) * (1 - Q) * (1 - t / (q * Q)))


def test_n_factor_examples(base):
    assert nk.n_factor(EMPTY, EMPTY, 1, base) == 1
    assert nk.n_factor(ONE, ONE, 1, base) == -1


@pytest.mark.parametrize("r,s", [(1, 1), (2, 1), (1, 2), (2, 2)])
def test_n_factor_rectangle_at_pole(base, r, s):
    Q = base.grid_point(r, s)
    want = F(1)
    for i in range(-r, 0):
        for j in range(-s, 0):
            want *= 1 - base.monomial(i, -j)
    assert nk.n_factor(rectangle(r, s), EMPTY, 1 / Q, base) == want


def test_z_pair_closed_form(base):
    assert nk.z_pair(ONE, EMPTY, 5, base) == F(5, 14)
    for Q in (F(5), F(-3, 7), F(11, 2)):
        assert nk.z_pair(ONE, EMPTY, Q, base) == z10_closed(Q, base.q, base.t)
    assert nk.z_pair(EMPTY, EMPTY, 7, base) == 1


def test_vanishing_factor_is_named(base):
    with pytest.raises(nk.VanishingFactorError, match=r"N_\{lam,mu\}\(Q\)"):
        nk.z_pair(ONE, EMPTY, 1, base)


def test_level_symbolic_matches_oracle(base):
    assert nk.z_level_symbolic(0, base) == 1
    for n, v in Z_AT_Q5_Q2_T3.items():
        assert nk.z_level_symbolic(n, base)(5) == v
        assert nk.z_level_value(n, 5, base) == v
    assert nk.z_level_symbolic(2, ParamPoint(F(5, 3), F(7, 2)))(F(11, 4)) == Z2_AT_Q11_4_Q5_3_T7_2


def test_level_one_is_pair_sum(base):
    f = nk.z_level_symbolic(1, base)
    for Q in (F(5), F(7, 3), F(-2), F(13, 11), F(9)):
        assert f(Q) == nk.z_pair(ONE, EMPTY, Q, base) + nk.z_pair(EMPTY, ONE, Q, base)


def test_level_two_poles_are_the_grid(base):
    rep = nk.pole_report(2, base)
    assert rep["ok"] and rep["off_grid_degree"] == 0
    assert rep["poles"] == {(1, 1): 1, (2, 1): 1, (1, 2): 1, (-1, -1): 1, (-2, -1): 1, (-1, -2): 1}


def test_kernel_values(base):
    assert nk.g_kernel(1, 1, base) == F(-4, 3)
    q, t = base.q, base.t
    assert nk.g_kernel(1, 1, base) == -q / t / ((1 - t / q) * (1 - 1 / q) * (1 - t))
    assert nk.g_kernel(-1, -1, base) == 3
    with pytest.raises(ValueError):
        nk.g_kernel(1, -1, base)


@pytest.mark.parametrize("n", range(6))
def test_recursion_at_base(base, n):
    assert nk.recursion_residual(n, base).is_zero()


def test_recursion_at_samples(points):
    for pt in points:
        for n in range(1, 5):
            assert nk.recursion_residual(n, ParamPoint(pt.q, pt.t)).is_zero()


def test_residue_examples(base):
    assert nk.residue_check(1, 1, 1, base) == (F(-4, 3), F(-4, 3))
    lhs, rhs = nk.residue_check(2, 1, 2, base)
    assert lhs == rhs == nk.g_kernel(2, 1, base)
    assert nk.rectangle_residue(1, 1, base) == nk.g_kernel(1, 1, base)
    with pytest.raises(ValueError):
        nk.residue_check(2, 2, 3, base)


def test_residue_reports_higher_order_pole(monkeypatch, base):
    from qagt.exact import Polynomial, RationalFunction

    fake = RationalFunction(1, Polynomial.from_roots([base.grid_point(1, 1)] * 2))
    monkeypatch.setattr(nk, "z_level_symbolic", lambda n, pt: fake)
    with pytest.raises(HigherOrderPoleError):
        nk.residue_check(1, 1, 1, base)


def test_duality(base, points):
    assert nk.duality_check(ONE, EMPTY, 5, base) == (F(5, 14), F(5, 14))
    for pt in points:
        for n in range(1, 5):
            for lam, mu in partition_pairs(n):
                a, b = nk.duality_check(lam, mu, pt.Q, pt)
                assert a == b


def test_level_function_symmetry_and_decay(base):
    for n in range(1, 5):
        f = nk.z_level_symbolic(n, base)
        assert f.num.degree < f.den.degree
        for k in range(2, 12):
            Q = F(k, 13) + 5
            assert f(Q) == f(1 / Q)


def test_series(base):
    assert nk.z_series(1, 0, 5, base) == [1]
    assert nk.z_series(0, 3, 5, base) == [1, 0, 0, 0]
    assert nk.z_series(1, 2, 5, base) == [1, Z_AT_Q5_Q2_T3[1], Z_AT_Q5_Q2_T3[2]]
    with pytest.raises(ValueError):
        nk.z_series(1, -1, 5, base)
