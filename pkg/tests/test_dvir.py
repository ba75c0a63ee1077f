from fractions import Fraction as F
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qagt import dvir, linalg
from qagt import nekrasov as nk
from qagt.exact import Polynomial
from qagt.params import NonGenericError, ParamPoint
from qagt.partitions import EMPTY, Partition, enumerate_partitions

PT = ParamPoint(2, 3, 2)
# sympy series of exp(sum (1-q^n)(1-t^-n)/(1+p^n) x^n/n) at q=2, t=3
F_ORACLE = [F(1), F(-2, 5), F(-274, 325), F(-2234, 1625), F(-20964538, 10245625), F(-747471274, 256140625)]
# same with the printed numerator (1-q)(1-1/t) in every term
F_LITERAL_2 = F(-49, 325)


def exp_series(c, L):
    """Truncated exp(sum c_n x^n / n) as a product of single-term exponentials."""
    out = [F(1)] + [F(0)] * L
    for n in range(1, L + 1):
        a = c[n] / n
        term = [F(0)] * (L + 1)
        k, coef = 0, F(1)
        while n * k <= L:
            term[n * k] = coef
            k += 1
            coef = coef * a / k
        out = [sum(out[i] * term[j - i] for i in range(j + 1)) for j in range(L + 1)]
    return out


def add(a, b, s=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + s * v
        if out[k] == 0:
            del out[k]
    return out


def test_structure_series_oracles():
    fs = dvir.structure_series(5, PT)
    assert list(fs.f) == F_ORACLE
    q, t = PT.q, PT.t
    p = q / t
    c = [0] + [(1 - q**n) * (1 - t**-n) / (1 + p**n) for n in range(1, 6)]
    assert exp_series(c, 5) == F_ORACLE
    assert fs.coeff(1) == (1 - q) * (1 - 1 / t) / (1 + p)
    with pytest.raises(dvir.RewritingError):
        fs.coeff(6)
    with pytest.raises(ValueError):
        dvir.structure_series(0, PT)
    with pytest.raises(NonGenericError):
        dvir.structure_series(3, ParamPoint(2, -2))


def test_central_term():
    fs = dvir.structure_series(2, PT)
    p = PT.p
    for r in (1, 2, -1):
        assert fs.central(r) == (1 - PT.q) * (1 - 1 / PT.t) * (p**r - p**-r) / (1 - p)
    assert fs.central(0) == 0


def test_printed_structure_function_breaks_symmetry(monkeypatch):
    """Regression witness for the choice of log-series numerator."""

    def literal(L, q, t):
        q, t = F(q), F(t)
        return [F(0)] + [(1 - q) * (1 - 1 / t) / (1 + (q / t) ** n) for n in range(1, L + 1)]

    monkeypatch.setattr(dvir, "log_coeffs", literal)
    assert dvir.structure_series(2, PT).f[2] == F_LITERAL_2
    mod = dvir.VermaModule(PT, PT.h, 3)
    rows = [[mod.pairing(a, b) for b in enumerate_partitions(3)] for a in enumerate_partitions(3)]
    assert not linalg.is_symmetric(rows)


def test_highest_weight_conditions():
    hw = dvir.highest_weight()
    for k in range(1, 7):
        assert dvir.apply_mode(k, hw, PT) == {}
    assert dvir.apply_mode(0, hw, PT) == {EMPTY: PT.h}
    assert dvir.apply_mode(-2, hw, PT) == {Partition((2,)): 1}
    fs = dvir.structure_series(2, PT)
    v = dvir.apply_mode(1, dvir.basis_vector((1,)), PT)
    assert v == {EMPTY: -fs.coeff(1) * PT.h**2 - fs.central(1)}


def test_relations_hold_on_low_levels():
    mod = dvir.VermaModule(PT, PT.h, 7)
    fs = mod.fs
    for lev in range(4):
        for lam in enumerate_partitions(lev):
            v = {lam: F(1)}
            for n, m in product(range(-3, 4), repeat=2):
                if lev - n - m > 7:
                    continue
                lhs = add(mod.apply_vec(n, mod.apply_vec(m, v)), mod.apply_vec(m, mod.apply_vec(n, v)), -1)
                rhs = {}
                for l in range(1, lev + 4):
                    if lev - (m + l) >= 0:
                        rhs = add(rhs, mod.apply_vec(n - l, mod.apply_vec(m + l, v)), -fs.coeff(l))
                    if lev - (n + l) >= 0:
                        rhs = add(rhs, mod.apply_vec(m - l, mod.apply_vec(n + l, v)), fs.coeff(l))
                if n + m == 0:
                    rhs = add(rhs, {lam: -fs.central(n)})
                assert lhs == rhs, (lam, n, m)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(0, 4).flatmap(lambda n: st.sampled_from(enumerate_partitions(n))),
    st.integers(-3, 3),
)
def test_grading(lam, k):
    if lam.size - k < 0:
        return
    out = dvir.apply_mode(k, dvir.basis_vector(lam), PT, cap=8)
    assert all(mu.size == lam.size - k for mu in out)


def test_cap_is_enforced():
    mod = dvir.VermaModule(PT, PT.h, 2)
    with pytest.raises(dvir.RewritingError):
        mod.apply_basis(-1, Partition((2,)))


def test_gram_small():
    assert dvir.gram_matrix(0, PT).entries == ((1,),)
    fs = dvir.structure_series(2, PT)
    assert dvir.gram_matrix(1, PT).entries == ((-fs.coeff(1) * PT.h**2 - fs.central(1),),)
    assert dvir.gram_matrix(1, PT).entries == ((F(5, 6),),)
    with pytest.raises(ValueError):
        dvir.gram_matrix(-1, PT)


def test_gram_symmetric_and_paths_agree(dvir_points):
    for pt in dvir_points:
        for n in range(5):
            g = dvir.gram_matrix(n, pt)
            assert linalg.is_symmetric(g.rows())
            if n <= 3:
                assert g.entries == dvir.gram_matrix_direct(n, pt).entries
    poly = dvir.gram_matrix_poly(2, PT.q, PT.t)
    assert all(isinstance(e, Polynomial) for row in poly.entries for e in row)
    j = dvir.gram_matrix(2, PT).to_json()
    assert j["basis"] == [[2], [1, 1]] and all("/" in e or e.lstrip("-").isdigit() for r in j["entries"] for e in r)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_kac_h_independence(n):
    rep = dvir.kac_check(n, PT, [2, 3, 4])
    assert rep["h_values"] == [F(5, 2), F(10, 3), F(17, 4)]
    assert rep["ok"]
    assert rep["constant"] == dvir.kac_constant_fit(n, PT.t)
    assert dvir.kac_constant_fit(1, PT.t) == -PT.t


def test_kac_degenerate_point():
    deg = ParamPoint(4, 9, F(3, 2))
    assert deg.h**2 == dvir.h_rs_squared(1, 1, deg)
    for n in range(1, 5):
        assert dvir.gram_matrix(n, deg).det() == 0
        assert dvir.gram_matrix(n, deg, h=F(7, 3)).det() != 0
    with pytest.raises(NonGenericError):
        dvir.kac_check(1, deg, [F(3, 2), 5, 7])
    with pytest.raises(ValueError):
        dvir.kac_check(1, PT, [2, 2, 3])


def test_partition_count():
    assert [dvir.partition_count(n) for n in range(-1, 6)] == [0, 1, 1, 2, 3, 5, 7]


def test_gaiotto_examples():
    g = dvir.gaiotto_coeffs(2, PT)
    assert g.level(0) == {EMPTY: 1}
    s1 = dvir.gram_matrix(1, PT).entries[0][0]
    assert g.level(1) == {Partition((1,)): 1 / s1}
    assert all(not d for _, _, d in dvir.whittaker_residuals(g, PT))
    assert dvir.gaiotto_norm_level(0, PT) == 1
    assert dvir.gaiotto_norm_level(1, PT) == 1 / s1
    assert g.to_json()["levels"][1] == [{"partition": [1], "coeff": str(1 / s1)}]


def test_gaiotto_unique_and_norms(dvir_points):
    for pt in dvir_points:
        g = dvir.gaiotto_coeffs(4, pt)
        assert all(not d for _, _, d in dvir.whittaker_residuals(g, pt))
        for n in range(1, 5):
            assert dvir.gaiotto_norm_direct(n, pt) == dvir.gaiotto_norm_level(n, pt)


def test_gaiotto_singular_at_degenerate_point():
    with pytest.raises(linalg.SingularMatrixError):
        dvir.gaiotto_coeffs(1, ParamPoint(4, 9, F(3, 2)))


def test_agt(dvir_points):
    for pt in dvir_points:
        assert dvir.determine_prefactor(pt) == 1
        for n in range(4):
            rep = dvir.agt_check(n, pt, 1)
            assert rep["ok"], rep
            assert rep["prefactor"] == "(q/t)^n"
    rep = dvir.agt_check(1, PT)
    assert rep["nekrasov"] == nk.z_level_symbolic(1, ParamPoint(2, 3))(4)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_f_recursion(n):
    assert dvir.f_recursion_residual(n, 2, 3).is_zero()
