from fractions import Fraction as F

import pytest

from gl3bethe.bethe import bethe_vector, check_parameters, direct_scalar_product, dual_bethe_vector
from gl3bethe.errors import ParameterCollision
from gl3bethe.rmatrix import ChainSpec, highest_vector, monodromy, r_matrix
from gl3bethe.tensor import StateVector

Q = F(5, 3)


def _two_aux(chain, u1, u2, rows, cols):
    """X_{rows, cols} of T1(u1) T2(u2) R21(u2, u1), contracted by hand from 3x3 blocks."""
    T1, T2 = monodromy(chain, u1), monodromy(chain, u2)
    R = r_matrix(chain.q, u2, u1)
    (i, j), (k, l) = rows, cols
    acc = None
    for c in range(3):
        for d in range(3):
            coeff = R.get(3 * d + c, 3 * l + k)
            if coeff == 0:
                continue
            term = (T1[i][c] @ T2[j][d]).scale(coeff)
            acc = term if acc is None else acc + term
    return acc


def test_one_excitation_is_T12_on_v():
    chain = ChainSpec(Q, [F(2), F(-3, 7)])
    t = F(9, 4)
    T = monodromy(chain, t)
    v = highest_vector(chain)
    assert bethe_vector(chain, [t], []) == T[0][1].apply(v)
    assert dual_bethe_vector(chain, [t], []) == T[1][0].transpose().apply(v)


def test_second_level_alone_annihilates_v():
    chain = ChainSpec(Q, [F(2), F(-3, 7)])
    assert bethe_vector(chain, [], [F(4)]).is_zero()
    assert dual_bethe_vector(chain, [], [F(4)]).is_zero()


@pytest.mark.parametrize("xi", [[F(2)], [F(2), F(-1, 6)]])
def test_mixed_vector_against_hand_contraction(xi):
    chain = ChainSpec(Q, xi)
    t, s = F(7, 2), F(-5, 3)
    v = highest_vector(chain)
    pref = (Q * s - t / Q) / (s - t)
    # tr(X E21 (x) E32) picks aux rows (1,2) -> (0,1) of X: block X_{(0,1),(1,2)}
    expect = _two_aux(chain, t, s, (0, 1), (1, 2)).apply(v).scale(pref)
    assert bethe_vector(chain, [t], [s]) == expect
    dual = _two_aux(chain, t, s, (1, 2), (0, 1)).transpose().apply(v).scale(pref)
    assert dual_bethe_vector(chain, [t], [s]) == dual


def test_scalar_product_is_a_dot_product():
    chain = ChainSpec(Q, [F(2), F(-1, 6)])
    tau, t = [F(3)], [F(-2, 9)]
    lhs = direct_scalar_product(chain, tau, [], t, [])
    rhs = dual_bethe_vector(chain, tau, []).dot(bethe_vector(chain, t, []))
    assert lhs == rhs != 0


def test_sectors_are_orthogonal():
    chain = ChainSpec(Q, [F(2), F(-1, 6)])
    assert direct_scalar_product(chain, [F(3), F(7)], [], [F(-2, 9)], []) == 0
    assert direct_scalar_product(chain, [F(3)], [F(11)], [F(-2, 9)], []) == 0


def test_states_live_in_the_right_weight_space():
    chain = ChainSpec(Q, [F(2), F(-1, 6)])
    B = bethe_vector(chain, [F(3), F(-4)], [F(11)])
    for idx in B.entries:
        ds = [idx // 3, idx % 3]
        # a=2 lowers two e1's, b=1 moves one of them further to e3
        assert (ds.count(1), ds.count(2)) == (1, 1)


def test_collision_guard():
    chain = ChainSpec(Q, [F(2)])
    with pytest.raises(ParameterCollision):
        check_parameters(chain, [F(3), F(3)])
    with pytest.raises(ParameterCollision):
        check_parameters(chain, [F(3), F(3) * Q**2])
    with pytest.raises(ParameterCollision):
        check_parameters(chain, [F(2) / Q**2])
    with pytest.raises(ParameterCollision):
        bethe_vector(chain, [F(0)], [])
