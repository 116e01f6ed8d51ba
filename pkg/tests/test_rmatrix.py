from fractions import Fraction as F

import pytest

from gl3bethe.errors import ParameterCollision, SingularParameters
from gl3bethe.rmatrix import (
    ChainSpec,
    cartan_eigen_residual,
    check_rtt,
    check_yang_baxter,
    gauss_decompose,
    gauss_recomposition_residual,
    highest_vector,
    lambda_values,
    monodromy,
    r_matrix,
    singular_vector_residuals,
    site_factors,
    weight_functions,
)
from gl3bethe.tensor import StateVector, apply_string

Q = F(-7, 5)


def test_r_matrix_entries():
    u, v = F(3), F(2, 9)
    R = r_matrix(Q, u, v)
    den = Q * u - v / Q
    assert R.get(0, 0) == 1
    assert R.get(1, 1) == (u - v) / den  # |1,2> -> |1,2>
    assert R.get(1, 3) == (Q - 1 / Q) * u / den  # |2,1> -> |1,2>
    assert R.get(3, 1) == (Q - 1 / Q) * v / den


def test_r_matrix_at_equal_arguments_is_permutation():
    R = r_matrix(Q, F(4), F(4))
    for i in range(3):
        for j in range(3):
            assert R.get(3 * i + j, 3 * j + i) == 1


def test_yang_baxter(distinct):
    for _ in range(5):
        q, u, v, w = distinct(4)
        assert check_yang_baxter(q, u, v, w) == 0


def test_rtt_small_chain(distinct):
    q, x1, x2, u, v = distinct(5)
    assert check_rtt(ChainSpec(q, [x1, x2]), u, v) == 0


def test_rtt_detects_a_wrong_r_matrix(monkeypatch):
    import gl3bethe.rmatrix as rm

    chain = ChainSpec(Q, [F(2), F(-3, 4)])
    real = rm.r_matrix
    calls = {"n": 0}

    def skewed(q, u, v):
        calls["n"] += 1
        # the exchange R (built first inside check_rtt) uses a different q
        return real(q * 2 if calls["n"] == 1 else q, u, v)

    monkeypatch.setattr(rm, "r_matrix", skewed)
    assert check_rtt(chain, F(1, 3), F(5, 2)) != 0


def test_highest_weight_conditions():
    chain = ChainSpec(Q, [F(2), F(5, 3), F(-1, 4)])
    res = singular_vector_residuals(chain, F(7, 11))
    assert all(v == 0 for v in res.values())


def test_lambda_closed_form():
    chain = ChainSpec(Q, [F(2), F(9, 7)])
    z = F(-3, 10)
    T = monodromy(chain, z)
    v = highest_vector(chain)
    lam = lambda_values(chain, z)
    for i in range(3):
        assert T[i][i].apply(v) == v.scale(lam[i])
    assert lam[0] == 1
    assert lam[1] == lam[2] == (z - 2) * (z - F(9, 7)) / ((Q * z - 2 / Q) * (Q * z - F(9, 7) / Q))


def test_weight_functions_psi():
    chain = ChainSpec(Q, [F(2)])
    w = weight_functions(chain)
    z = F(3, 8)
    assert w.psi(1, z) == w.lam(2, z)
    assert w.psi(2, z) == 1
    assert w.psi_poles(1) == [F(2) / Q**2]


def test_gauss_recomposes(distinct):
    q, x1, x2, z = distinct(4)
    chain = ChainSpec(q, [x1, x2])
    g = gauss_decompose(chain, z)
    assert gauss_recomposition_residual(chain, z, g) == 0
    assert cartan_eigen_residual(chain, z, g) == 0
    assert set(g.F) == {(2, 1), (3, 1), (3, 2)}
    assert set(g.E) == {(1, 2), (1, 3), (2, 3)}


def test_monodromy_pole_rejected():
    chain = ChainSpec(Q, [F(2)])
    with pytest.raises(SingularParameters):
        site_factors(chain, F(2) / Q**2, 0, 1)


def test_chain_guards():
    with pytest.raises(SingularParameters):
        ChainSpec(F(-1), [F(2)])
    with pytest.raises(ParameterCollision):
        ChainSpec(Q, [F(2), F(2)])


def test_site_string_on_quantum_legs():
    chain = ChainSpec(Q, [F(2), F(3)])
    # L(z) acting on aux e_1 (x) v keeps aux e_1 with coefficient lambda_1 = 1 on v
    psi = StateVector(3, {0: F(1)})
    out = apply_string(site_factors(chain, F(1, 7), 0, 1), psi)
    assert out.entries.get(0) == 1
