"""Off-shell Bethe vectors from the trace formula, and their direct pairing.

``B(t, s) = prod (q s_j - t_i/q)/(s_j - t_i) * tr_aux(T(t; s) E21^a E32^b) v`` with
``T(u_1..u_M) = L^(1)(u_1) ... L^(M)(u_M) R^(M..1)(u_M..u_1)``.  The dual
vector uses weights ``E12^a E23^b`` and acts on ``v'`` from the left; it is
computed as ``tr_aux(T^T E21^a E32^b) v'^T`` so that only vectors are ever
propagated.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import ParameterCollision, ShapeMismatch
from .field import common_backend, is_zero
from .rmatrix import ChainSpec, highest_vector, r_product_factors, site_factors
from .tensor import SparseOperator, StateVector, apply_string, transpose_string, weighted_aux_trace

MAX_AUX = 6


@dataclass(frozen=True)
class BetheParams:
    """Spectral parameters of one family: ``t`` (first simple root) and ``s`` (second)."""

    t: tuple = ()
    s: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "t", tuple(self.t))
        object.__setattr__(self, "s", tuple(self.s))

    @property
    def a(self) -> int:
        return len(self.t)

    @property
    def b(self) -> int:
        return len(self.s)


def _related(u, w, q) -> str | None:
    if is_zero(u - w):
        return "equal"
    if is_zero(u - q * q * w) or is_zero(w - q * q * u):
        return "q^2-related"
    return None


def check_parameters(chain: ChainSpec, *families: Sequence) -> None:
    """Collision guard over every parameter of every family.

    All parameters must be nonzero, pairwise distinct, not q^{+-2}-related,
    distinct from each ``xi_k`` and from each ``q^-2 xi_k``.
    """
    q = chain.q
    flat = [x for fam in families for x in fam]
    common_backend([q, *flat])
    for i, u in enumerate(flat):
        if is_zero(u):
            raise ParameterCollision(f"spectral parameter is zero")
        for w in flat[i + 1 :]:
            why = _related(u, w, q)
            if why:
                raise ParameterCollision(f"parameters {u} and {w} are {why}")
        for x in chain.xi:
            if is_zero(u - x) or is_zero(u - x / (q * q)) or is_zero(u - x * q * q):
                raise ParameterCollision(f"parameter {u} collides with inhomogeneity {x}")


def _prefactor(q, ts, ss):
    acc = q * 0 + 1
    for s in ss:
        for t in ts:
            acc = acc * (q * s - t / q) / (s - t)
    return acc


def monodromy_string(chain: ChainSpec, us: Sequence) -> list:
    """Factor string for ``T(u_1..u_M)`` on aux^M (x) quantum, aux legs first."""
    m = len(us)
    if m > MAX_AUX:
        raise ShapeMismatch(f"{m} auxiliary legs exceeds the desk-scale limit {MAX_AUX}")
    factors = []
    for k, u in enumerate(us):
        factors.extend(site_factors(chain, u, k, m))
    factors.extend(r_product_factors(chain.q, us))
    return factors


def _weights(chain: ChainSpec, a: int, b: int) -> list:
    o = chain.one
    return [SparseOperator.unit(2, 1, o)] * a + [SparseOperator.unit(3, 2, o)] * b


def bethe_vector(chain: ChainSpec, t: Sequence, s: Sequence, check: bool = True) -> StateVector:
    if check:
        check_parameters(chain, list(t) + list(s))
    factors = monodromy_string(chain, list(t) + list(s))
    v = highest_vector(chain)
    traced = weighted_aux_trace(lambda psi: apply_string(factors, psi), _weights(chain, len(t), len(s)), v)
    return traced.scale(_prefactor(chain.q, t, s))


def dual_bethe_vector(chain: ChainSpec, tau: Sequence, sigma: Sequence, check: bool = True) -> StateVector:
    """Components of the covector ``v' C(tau, sigma)``."""
    if check:
        check_parameters(chain, list(tau) + list(sigma))
    factors = transpose_string(monodromy_string(chain, list(tau) + list(sigma)))
    v = highest_vector(chain)
    traced = weighted_aux_trace(lambda psi: apply_string(factors, psi), _weights(chain, len(tau), len(sigma)), v)
    return traced.scale(_prefactor(chain.q, tau, sigma))


def direct_scalar_product(chain: ChainSpec, tau, sigma, t, s, check: bool = True):
    """``<C_{V'}(tau, sigma), B_V(t, s)>`` with ``<v', v> = 1``."""
    if check:
        check_parameters(chain, list(tau) + list(sigma), list(t) + list(s))
    left = dual_bethe_vector(chain, tau, sigma, check=False)
    right = bethe_vector(chain, t, s, check=False)
    out = left.dot(right)
    return out if out != 0 else 0 * chain.one
