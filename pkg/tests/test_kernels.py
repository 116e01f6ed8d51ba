from fractions import Fraction as F
from itertools import permutations

import pytest

from gl3bethe import kernels as K
from gl3bethe.errors import ParameterCollision, TooManyVariables

Q = F(3, 2)


def test_single_variable_kernels():
    t, x = F(7), F(2, 5)
    assert K.kernel_Y(Q, [t], [x]) == t / (t - x)
    assert K.kernel_Z(Q, [t], [x]) == (x / t) / (1 - x / t)


def test_y_product_forms_agree(distinct):
    for n in range(1, 5):
        pts = distinct(2 * n)
        t, x = pts[:n], pts[n:]
        assert K.kernel_Y(Q, t, x) == K.kernel_Y_alt(Q, t, x)
        assert K.kernel_Z(Q, t, x) == K.kernel_Z_alt(Q, t, x)


def test_sym_of_constant_two_variables():
    t1, t2 = F(2), F(-5, 3)
    got = K.q_symmetrize(Q, lambda tt: 1, [t1, t2])
    assert got == 1 + (1 / Q - Q * t1 / t2) / (Q - t1 / (Q * t2))


def test_sym_is_q_symmetric(distinct):
    # Sym G times the q-Vandermonde is an honest symmetric function
    t = distinct(3)
    g = lambda tt: tt[0] ** 2 / (tt[1] - 3 * tt[2])
    base = K.vandermonde_q(Q, t) * K.q_symmetrize(Q, g, t)
    for perm in permutations(range(3)):
        tp = [t[i] for i in perm]
        assert K.vandermonde_q(Q, tp) * K.q_symmetrize(Q, g, tp) == base


def test_sym_size_limit():
    with pytest.raises(TooManyVariables):
        K.q_symmetrize(Q, lambda tt: 1, list(range(1, 8)))


def test_phi_normalization(distinct):
    s = distinct(4)
    for ell in range(2, 5):
        assert K.phi(Q, s, ell, first=s[ell - 1]) == 1
    for ell in range(1, 4):
        assert K.varphi(Q, s, ell, last=s[ell - 1]) == 1


def test_phi_two_variables():
    s1, s2 = F(4), F(-1, 3)
    assert K.phi(Q, [s1, s2], 2) == (s2 / Q - Q * s2) / (s1 / Q - Q * s2)


def test_kf_one_variable_is_y():
    t, x = F(5), F(2, 7)
    assert K.kernel_KF(Q, [t], [], [x], []) == K.kernel_Y(Q, [t], [x])


def test_kf_matches_two_term_example(distinct):
    for _ in range(20):
        t, s, x, y = distinct(4)
        assert K.kernel_KF(Q, [t], [s], [x], [y]) == K.kernel_KF_example(Q, t, s, x, y)


def test_ke_against_hand_transcription(distinct):
    for _ in range(10):
        tau, sigma, mu, nu = distinct(4)
        z = lambda a, b: (b / a) / (1 - b / a)
        hand = z(tau, mu) * z(sigma, nu) * (mu / Q - Q * nu) / (mu - nu)
        hand += (1 / Q - Q) * (tau / (tau - sigma)) * z(tau, mu) * z(mu, nu)
        assert K.kernel_KE(Q, [tau], [sigma], [mu], [nu]) == hand


def test_izergin_small():
    t, x = [F(3)], [F(-2, 5)]
    assert K.check_izergin_identity(Q, t, x) == 0


def test_izergin_random(distinct):
    for n in (2, 3, 4):
        pts = distinct(2 * n)
        t, x = pts[:n], pts[n:]
        assert K.check_izergin_identity(Q, t, x) == 0


def test_izergin_guards():
    with pytest.raises(ParameterCollision):
        K.izergin_determinant(Q, [F(2), F(2)], [F(1), F(3)])
    with pytest.raises(ParameterCollision):
        K.izergin_determinant(Q, [Q * Q * 5], [F(5)])


def test_exchange_identity(distinct):
    for n in (1, 2, 3):
        pts = distinct(2 * n)
        t, s = pts[:n], pts[n:]
        for omega in permutations(range(n)):
            lhs, rhs = K.exchange_identity_sides(Q, t, s, omega, list(range(n)))
            assert lhs == rhs


def test_y_poles_are_simple_and_at_the_first_k_parameters():
    t = [F(2), F(-3), F(5, 4)]
    x = [F(1, 7), F(-2, 9), F(8, 3)]
    probes = [F(k, 11) for k in range(1, 60)]
    for k in (1, 2, 3):
        poles = K.y_pole_structure(Q, t, x, k, probes)
        assert poles == {ti: 1 for ti in t[:k]}


def test_literal_order_agrees_while_k_at_most_one(distinct):
    t1, t2, s1, x1, x2, y1 = distinct(6)
    assert K.kernel_KF(Q, [t1, t2], [s1], [x1, x2], [y1], literal=True) == K.kernel_KF(
        Q, [t1, t2], [s1], [x1, x2], [y1]
    )
    assert K.kernel_KE(Q, [t1, t2], [s1], [x1, x2], [y1], literal=True) == K.kernel_KE(
        Q, [t1, t2], [s1], [x1, x2], [y1]
    )


def test_literal_order_differs_at_two_two(distinct):
    t1, t2, s1, s2, x1, x2, y1, y2 = distinct(8)
    args = (Q, [t1, t2], [s1, s2], [x1, x2], [y1, y2])
    assert K.kernel_KF(*args, literal=True) != K.kernel_KF(*args)


def test_kernel_size_limit():
    with pytest.raises(TooManyVariables):
        K.kernel_KF(Q, [1, 2, 3, 4], [], [5, 6, 7, 8], [])
