"""Rational kernels of the gl3 Bethe-vector integral formulas.

Every function here works on plain scalars and also on the symbolic
:class:`~gl3bethe.symbolic.LinearForm` variables of the residue engine.  For
that reason each elementary factor is written as a ratio of linear forms:

    1 / (1 - x/t)               ->  t / (t - x)
    (q^-1 - q x/t) / (1 - x/t)  ->  (t/q - q x) / (t - x)
    x / t                       ->  x / t

which are identical as rational functions.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

from .errors import ParameterCollision, TooManyVariables
from .field import fit_rational_function, is_zero, pole_order, rational_roots

MAX_SYM = 6


def geom(x, t):
    """``1 / (1 - x/t)``."""
    return t / (t - x)


def cross(q, x, t):
    """``(q^-1 - q x/t) / (1 - x/t)``."""
    return (t / q - q * x) / (t - x)


def ratio(x, t):
    return x / t


def _unit(q):
    return q * 0 + 1


def perm_factor(q, values: Sequence, perm: Sequence[int]):
    """Twist of one permutation: prod over inversions of (q^-1 - q u'/u)/(q - q^-1 u'/u).

    ``perm[l]`` is the index of the variable placed in slot ``l``; the pair
    ``l < l'`` with ``perm[l] > perm[l']`` contributes with ``u = t_{perm[l]}``
    and ``u' = t_{perm[l']}``.  Written as ``(u/q - q u') / (q u - u'/q)``.
    """
    acc = _unit(q)
    n = len(perm)
    for l in range(n):
        for lp in range(l + 1, n):
            if perm[l] > perm[lp]:
                u, up = values[perm[l]], values[perm[lp]]
                acc = acc * ((u / q - q * up) / (q * u - up / q))
    return acc


def q_symmetrize(q, g: Callable[[list], object], values: Sequence):
    """``Sym G = sum over S_n of perm_factor * G(permuted values)``."""
    n = len(values)
    if n > MAX_SYM:
        raise TooManyVariables(f"q-symmetrization over {n} > {MAX_SYM} variables")
    acc = 0
    for perm in permutations(range(n)):
        acc = acc + perm_factor(q, values, perm) * g([values[i] for i in perm])
    return acc


def q_symmetrize_pair(q, g: Callable[[list, list], object], first: Sequence, second: Sequence):
    """Independent q-symmetrization over two families (the Sym-bar of two sets)."""
    if len(first) + len(second) > 2 * MAX_SYM:
        raise TooManyVariables("too many variables for a paired symmetrization")
    return q_symmetrize(q, lambda f: q_symmetrize(q, lambda s: g(f, s), second), first)


def kernel_Y(q, t: Sequence, x: Sequence):
    """First product form: prod_i [1/(1-x_i/t_i)] prod_{j<i} (q^-1 - q x_i/t_j)/(1 - x_i/t_j)."""
    if len(t) != len(x):
        raise ValueError("Y needs equally many t and x")
    acc = _unit(q)
    for i in range(len(t)):
        acc = acc * geom(x[i], t[i])
        for j in range(i):
            acc = acc * cross(q, x[i], t[j])
    return acc


def kernel_Y_alt(q, t: Sequence, x: Sequence):
    """Second product form: prod_i [1/(1-x_i/t_i)] prod_{j>i} (q^-1 - q x_j/t_i)/(1 - x_j/t_i)."""
    if len(t) != len(x):
        raise ValueError("Y needs equally many t and x")
    n = len(t)
    acc = _unit(q)
    for i in range(n):
        acc = acc * geom(x[i], t[i])
        for j in range(i + 1, n):
            acc = acc * cross(q, x[j], t[i])
    return acc


def kernel_Z(q, t: Sequence, x: Sequence):
    acc = kernel_Y(q, t, x)
    for ti, xi in zip(t, x):
        acc = acc * ratio(xi, ti)
    return acc


def kernel_Z_alt(q, t: Sequence, x: Sequence):
    acc = kernel_Y_alt(q, t, x)
    for ti, xi in zip(t, x):
        acc = acc * ratio(xi, ti)
    return acc


def phi(q, s: Sequence, ell: int, first=None):
    """``phi_{s_ell}(s_1; s_2, ..., s_k)`` for 2 <= ell <= k (1-based).

    ``first`` replaces the slot ``s_1`` (defaults to ``s[0]``).
    """
    s1 = s[0] if first is None else first
    k = len(s)
    sl = s[ell - 1]
    acc = _unit(q)
    for j in range(2, k + 1):
        if j != ell:
            acc = acc * (s1 - s[j - 1]) / (sl - s[j - 1])
    for j in range(2, k + 1):
        acc = acc * (sl / q - q * s[j - 1]) / (s1 / q - q * s[j - 1])
    return acc


def varphi(q, s: Sequence, ell: int, last=None):
    """``varphi_{s_ell}(s_k; s_{k-1}, ..., s_1)`` for 1 <= ell <= k-1 (1-based).

    ``last`` replaces the slot ``s_k`` (defaults to ``s[-1]``).
    """
    k = len(s)
    sk = s[-1] if last is None else last
    sl = s[ell - 1]
    acc = _unit(q)
    for j in range(1, k):
        if j != ell:
            acc = acc * (sk - s[j - 1]) / (sl - s[j - 1])
    for j in range(1, k):
        acc = acc * (q * sl - s[j - 1] / q) / (q * sk - s[j - 1] / q)
    return acc


def _two_block_product(q, u: Sequence, split: int):
    """prod over i<j inside [1, split] and inside (split, n] of (u_i - u_j)/(u_i/q - q u_j)."""
    acc = _unit(q)
    n = len(u)
    for lo, hi in ((0, split), (split, n)):
        for i in range(lo, hi):
            for j in range(i + 1, hi):
                acc = acc * (u[i] - u[j]) / (u[i] / q - q * u[j])
    return acc


def _tail_product(q, u: Sequence, start: int):
    """prod over start < i < j <= n of (u_i - u_j)/(u_i/q - q u_j) (1-based start)."""
    acc = _unit(q)
    n = len(u)
    for i in range(start, n):
        for j in range(i + 1, n):
            acc = acc * (u[i] - u[j]) / (u[i] / q - q * u[j])
    return acc


def _paired(y, k, literal):
    """Second-family order in the last Y/Z factor: ``y_k..y_1, y_{k+1}..y_b``.

    ``literal`` keeps ``y_1..y_b``; the two agree whenever k <= 1.
    """
    return list(y) if literal else list(y[:k][::-1]) + list(y[k:])


def _kf_summand(q, t, s, x, y, k, literal=False):
    a, b = len(t), len(s)
    c = (1 / q - q) ** k / (factorial(k) * factorial(a - k) * factorial(b - k))
    acc = _tail_product(q, s, k) * c
    acc = acc * _two_block_product(q, t, a - k)
    acc = acc * kernel_Z(q, t[::-1][:k], s[:k][::-1])
    acc = acc * kernel_Y(q, t[::-1], x[::-1])
    acc = acc * kernel_Y(q, list(x[::-1][:k]) + list(s[k:]), _paired(y, k, literal))
    for j in range(a - k):
        for i in range(k, b):
            acc = acc * cross(q, y[i], x[j])
    return acc


def _ke_summand(q, tau, sigma, mu, nu, m, literal=False):
    a, b = len(tau), len(sigma)
    c = (1 / q - q) ** m / (factorial(m) * factorial(a - m) * factorial(b - m))
    acc = _tail_product(q, sigma, m) * c
    acc = acc * _two_block_product(q, tau, a - m)
    acc = acc * kernel_Y(q, tau[::-1][:m], sigma[:m][::-1])
    acc = acc * kernel_Z(q, tau[::-1], mu[::-1])
    acc = acc * kernel_Z(q, list(mu[::-1][:m]) + list(sigma[m:]), _paired(nu, m, literal))
    for j in range(a - m):
        for i in range(m, b):
            acc = acc * cross(q, nu[i], mu[j])
    return acc


def _check_sizes(t, s, x, y):
    if len(t) != len(x) or len(s) != len(y):
        raise ValueError("kernel families have mismatched sizes")
    if len(t) > 3 or len(s) > 3:
        raise TooManyVariables("kernels are limited to a, b <= 3")


def kernel_KF(q, t: Sequence, s: Sequence, x: Sequence, y: Sequence, literal: bool = False):
    """Kernel of the right projection, q-symmetrized over (t, s).

    The last Y factor takes ``y_k..y_1, y_{k+1}..y_b`` in its second slot
    (``literal=True`` gives ``y_1..y_b``, which fails the direct oracle once
    min(a, b) >= 2).
    """
    _check_sizes(t, s, x, y)
    a, b = len(t), len(s)

    def body(tt, ss):
        acc = 0
        for k in range(min(a, b) + 1):
            acc = acc + _kf_summand(q, tt, ss, x, y, k, literal)
        return acc

    return q_symmetrize_pair(q, body, list(t), list(s))


def kernel_KE(q, tau: Sequence, sigma: Sequence, mu: Sequence, nu: Sequence, literal: bool = False):
    """Kernel of the left projection, q-symmetrized over (tau, sigma); ordering as in :func:`kernel_KF`."""
    _check_sizes(tau, sigma, mu, nu)
    a, b = len(tau), len(sigma)

    def body(tt, ss):
        acc = 0
        for m in range(min(a, b) + 1):
            acc = acc + _ke_summand(q, tt, ss, mu, nu, m, literal)
        return acc

    return q_symmetrize_pair(q, body, list(tau), list(sigma))


def kernel_KF_example(q, t, s, x, y):
    """The two-term a = b = 1 kernel, written out directly."""
    return (
        geom(x, t) * geom(y, s) * cross(q, y, x)
        + (1 / q - q) * ratio(s, t) * geom(s, t) * geom(x, t) * geom(y, x)
    )


def _det(m: list[list]):
    n = len(m)
    m = [list(r) for r in m]
    det = _unit(m[0][0]) if n else Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if not is_zero(m[r][c])), None)
        if piv is None:
            return 0 * det
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] * inv
            if not is_zero(f, 0.0):
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _guard_izergin(q, t, x):
    allv = list(t) + list(x)
    for i, u in enumerate(allv):
        for w in allv[i + 1 :]:
            if is_zero(u - w):
                raise ParameterCollision(f"coinciding arguments {u}")
    for u in t:
        for w in x:
            if is_zero(u / q - q * w):
                raise ParameterCollision(f"q^2-related pair ({u}, {w})")


def izergin_determinant(q, t: Sequence, x: Sequence):
    """``prod t_i prod (t_i/q - q x_j) / prod_{i<j} (t_i - t_j)(x_j - x_i) * det[1/((t_i - x_j)(t_i/q - q x_j))]``."""
    _guard_izergin(q, t, x)
    n = len(t)
    pre = _unit(q)
    for ti in t:
        pre = pre * ti
    for ti in t:
        for xj in x:
            pre = pre * (ti / q - q * xj)
    for i in range(n):
        for j in range(i + 1, n):
            pre = pre / ((t[i] - t[j]) * (x[j] - x[i]))
    mat = [[1 / ((t[i] - x[j]) * (t[i] / q - q * x[j])) for j in range(n)] for i in range(n)]
    return pre * _det(mat)


def vandermonde_q(q, u):
    """``prod_{i<j} (u_i/q - q u_j)/(u_i - u_j)``."""
    acc = _unit(q)
    n = len(u)
    for i in range(n):
        for j in range(i + 1, n):
            acc = acc * (u[i] / q - q * u[j]) / (u[i] - u[j])
    return acc


def izergin_sym_t(q, t, x):
    """``prod_{i<j} (t_i/q - q t_j)/(t_i - t_j) * Sym_t Y(t_n..t_1; x_n..x_1)``.

    Both families enter Y in descending order, as in the F kernel; with
    ascending order the symmetrized side is not symmetric in x.
    """
    return vandermonde_q(q, t) * q_symmetrize(q, lambda tt: kernel_Y(q, tt[::-1], list(x)[::-1]), list(t))


def izergin_sym_x(q, t, x):
    return vandermonde_q(q, x) * q_symmetrize(q, lambda xx: kernel_Y(q, list(t)[::-1], xx[::-1]), list(x))


def check_izergin_identity(q, t, x):
    """Largest pairwise |difference| among the two symmetrized sides and the determinant."""
    _guard_izergin(q, t, x)
    vals = [izergin_sym_t(q, t, x), izergin_sym_x(q, t, x), izergin_determinant(q, t, x)]
    return max(abs(vals[0] - vals[1]), abs(vals[0] - vals[2]), abs(vals[1] - vals[2]))


def exchange_identity_sides(q, t, s, omega: Sequence[int], omega_p: Sequence[int]):
    """Both sides of the Y exchange identity for permutations ``omega`` of s, ``omega_p`` of t."""
    s_perm = [s[i] for i in omega]
    t_perm = [t[i] for i in omega_p]
    lhs = vandermonde_q(q, t) * q_symmetrize(q, lambda tt: kernel_Y(q, tt[::-1], s_perm), list(t))
    rhs = vandermonde_q(q, s) * q_symmetrize(q, lambda ss: kernel_Y(q, t_perm, ss[::-1]), list(s))
    return lhs, rhs


def y_pole_structure(q, t: Sequence, x: Sequence, k: int, probes: Sequence) -> dict:
    """Poles of ``kernel_Y`` in ``x_k`` (1-based) with their orders.

    The other ``x`` stay fixed; the function of ``x_k`` is rebuilt exactly by
    interpolation through ``probes`` (rational backend).
    """
    def sample(z):
        xx = list(x)
        xx[k - 1] = z
        return kernel_Y(q, t, xx)

    f = fit_rational_function(sample, iter(probes), max_degree=2 * len(t) + 2, var=f"x{k}")
    return {p: pole_order(f, p) for p in rational_roots(f.den)}
