"""Trigonometric gl3 R-matrix and the inhomogeneous fundamental chain.

The site L-operator at inhomogeneity ``xi`` is ``R(z, xi)`` with the
auxiliary space as its first leg.  The monodromy matrix is the ordered
product over sites (site 1 leftmost); its 3x3 auxiliary blocks ``T_ij(z)``
are sparse operators on the quantum legs.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import NonInvertibleBlock, ParameterCollision, SingularParameters
from .field import UnivariateRationalFunction, common_backend, is_zero, one
from .tensor import (
    DIM,
    SparseOperator,
    StateVector,
    apply_string,
    digits,
    inverse,
    string_to_operator,
)


def _root_of_unity(q, max_order: int = 12) -> bool:
    p = q
    for _ in range(max_order):
        if isinstance(q, complex):
            if abs(p - 1) < 1e-12:
                return True
        elif p == 1:
            return True
        p = p * q
    return False


@dataclass(frozen=True)
class ChainSpec:
    """Deformation parameter ``q`` and site inhomogeneities ``xi`` (N = len(xi))."""

    q: object
    xi: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "xi", tuple(self.xi))
        common_backend([self.q, *self.xi])
        if is_zero(self.q) or _root_of_unity(self.q):
            raise SingularParameters(f"q={self.q} is zero or a root of unity of order <= 12")
        for i, a in enumerate(self.xi):
            for b in self.xi[i + 1 :]:
                if is_zero(a - b):
                    raise ParameterCollision(f"inhomogeneities not distinct: {a}")

    @property
    def N(self) -> int:
        return len(self.xi)

    @property
    def backend(self) -> str:
        return common_backend([self.q])

    @property
    def one(self):
        return one(self.backend)


@lru_cache(maxsize=65536)
def r_matrix(q, u, v) -> SparseOperator:
    """``R(u, v)`` on C^3 (x) C^3 as a 2-leg sparse operator."""
    qi = 1 / q
    den = q * u - qi * v
    if is_zero(den):
        raise SingularParameters(f"q*u - v/q vanishes (u={u}, v={v})")
    b = (u - v) / den
    cu = (q - qi) * u / den
    cv = (q - qi) * v / den
    entries = {}
    for i in range(DIM):
        entries[(4 * i, 4 * i)] = u * 0 + 1
    for i in range(DIM):
        for j in range(i + 1, DIM):
            ij, ji = 3 * i + j, 3 * j + i
            # E_ii (x) E_jj and E_jj (x) E_ii
            entries[(ij, ij)] = b
            entries[(ji, ji)] = b
            # u E_ij (x) E_ji : |i,j> <- |j,i| ; v E_ji (x) E_ij
            entries[(ij, ji)] = cu
            entries[(ji, ij)] = cv
    return SparseOperator.from_dict(2, entries)


def permutation_operator(one=Fraction(1)) -> SparseOperator:
    return SparseOperator(2, {(3 * i + j, 3 * j + i): one for i in range(DIM) for j in range(DIM)})


def r_product_factors(q, us: Sequence, offset: int = 0) -> list:
    """Factor string of the ordered product of ``R^{(ji)}(u_j, u_i)`` over ``j > i``.

    ``(ji)`` stands left of ``(ml)`` iff ``j > m`` or ``j == m and i > l``.
    Leg ``k`` (1-based) of the product sits at position ``offset + k - 1``.
    """
    m = len(us)
    out = []
    for j in range(m, 1, -1):
        for i in range(j - 1, 0, -1):
            out.append((r_matrix(q, us[j - 1], us[i - 1]), (offset + j - 1, offset + i - 1)))
    return out


def r_product(q, us: Sequence) -> SparseOperator:
    m = len(us)
    o = one(common_backend([q, *us]))
    if m <= 1:
        return SparseOperator.identity(m, o)
    return string_to_operator(r_product_factors(q, us), m, o)


def check_yang_baxter(q, u, v, w):
    """Max |entry| of R12(u,v) R13(u,w) R23(v,w) - R23(v,w) R13(u,w) R12(u,v)."""
    o = one(common_backend([q, u, v, w]))
    r12, r13, r23 = r_matrix(q, u, v), r_matrix(q, u, w), r_matrix(q, v, w)
    lhs = [(r12, (0, 1)), (r13, (0, 2)), (r23, (1, 2))]
    rhs = [(r23, (1, 2)), (r13, (0, 2)), (r12, (0, 1))]
    diff = string_to_operator(lhs, 3, o) - string_to_operator(rhs, 3, o)
    return diff.max_abs() if not diff.is_zero() else 0 * o


def site_factors(chain: ChainSpec, z, aux_leg: int, quantum_offset: int) -> list:
    """``L^{(aux)}(z) = R^{(aux,1)}(z, xi_1) ... R^{(aux,N)}(z, xi_N)`` as a factor string."""
    for x in chain.xi:
        if is_zero(chain.q * z - x / chain.q):
            raise SingularParameters(f"z={z} hits the monodromy pole q^-2 xi = {x / chain.q**2}")
    return [(r_matrix(chain.q, z, x), (aux_leg, quantum_offset + k)) for k, x in enumerate(chain.xi)]


def monodromy(chain: ChainSpec, z) -> list[list[SparseOperator]]:
    """``T[i][j]`` (0-based) = auxiliary block ``T_{i+1, j+1}(z)`` on the N quantum legs."""
    n = chain.N
    o = chain.one
    full = string_to_operator(site_factors(chain, z, 0, 1), n + 1, o)
    nq = DIM**n
    blocks = [[{} for _ in range(DIM)] for _ in range(DIM)]
    for (r, c), val in full.entries.items():
        ar, qr = divmod(r, nq)
        ac, qc = divmod(c, nq)
        blocks[ar][ac][(qr, qc)] = val
    return [[SparseOperator(n, blocks[i][j]) for j in range(DIM)] for i in range(DIM)]


RTT_BLOCK = 81


def check_rtt(chain: ChainSpec, u, v):
    """Max residual of R(u,v) T1(u) T2(v) - T2(v) T1(u) R(u,v) on aux (x) aux (x) quantum."""
    r = r_matrix(chain.q, u, v)
    t1 = site_factors(chain, u, 0, 2)
    t2 = site_factors(chain, v, 1, 2)
    lhs = [(r, (0, 1))] + t1 + t2
    rhs = t2 + t1 + [(r, (0, 1))]
    legs = chain.N + 2
    dim = DIM**legs
    worst = 0 * chain.one
    # columns in blocks of 81, each block as a vectorized identity sum_c |c>|c>
    for lo in range(0, dim, RTT_BLOCK):
        block = StateVector(2 * legs, {c * dim + c: chain.one for c in range(lo, min(lo + RTT_BLOCK, dim))})
        d = apply_string(lhs, block) - apply_string(rhs, block)
        if not d.is_zero():
            worst = max(worst, d.max_abs(), key=abs)
    return worst


def highest_vector(chain: ChainSpec) -> StateVector:
    """``v = e_1 (x) ... (x) e_1``; the dual ``v'`` has the same components."""
    return StateVector(chain.N, {0: chain.one})


def lambda_values(chain: ChainSpec, z) -> tuple:
    """Closed forms ``(lambda_1, lambda_2, lambda_3)(z)`` for v = e_1^N."""
    q = chain.q
    lam2 = chain.one
    for x in chain.xi:
        lam2 = lam2 * (z - x) / (q * z - x / q)
    return (chain.one, lam2, lam2)


@dataclass(frozen=True)
class WeightFunctions:
    """Right (``lam``) and left (``mu``) eigenvalues of the diagonal monodromy entries."""

    chain: ChainSpec

    def lam(self, i: int, z):
        return lambda_values(self.chain, z)[i - 1]

    def mu(self, i: int, z):
        return lambda_values(self.chain, z)[i - 1]

    def lam_function(self, i: int, var: str = "z") -> UnivariateRationalFunction:
        o = self.chain.one
        if i == 1:
            return UnivariateRationalFunction.constant(o, var)
        q = self.chain.q
        f = UnivariateRationalFunction.constant(o, var)
        for x in self.chain.xi:
            f = f * UnivariateRationalFunction.linear_fractional(o, -x, q, -x / q, var)
        return f

    mu_function = lam_function

    def psi(self, i: int, z):
        """Cartan ratio ``lambda_{i+1}(z) / lambda_i(z)``."""
        lam = lambda_values(self.chain, z)
        return lam[i] / lam[i - 1]

    def psi_poles(self, i: int) -> list:
        if i == 2:
            return []
        return [x / self.chain.q**2 for x in self.chain.xi]


def weight_functions(chain: ChainSpec) -> WeightFunctions:
    return WeightFunctions(chain)


def singular_vector_residuals(chain: ChainSpec, z) -> dict:
    """Residuals of the right/left singular-vector conditions at ``z``.

    Returns max |component| of ``T_ij v`` (i>j), ``v' T_ij`` (i<j) and of
    ``T_ii v - lambda_i v``, ``v' T_ii - mu_i v'``.
    """
    T = monodromy(chain, z)
    v = highest_vector(chain)
    lam = lambda_values(chain, z)
    zero = 0 * chain.one
    out = {"right_annihilation": zero, "left_annihilation": zero, "right_eigen": zero, "left_eigen": zero}

    def bump(key, vec):
        if not vec.is_zero():
            out[key] = max(out[key], vec.max_abs(), key=abs)

    for i in range(DIM):
        for j in range(DIM):
            if i > j:
                bump("right_annihilation", T[i][j].apply(v))
            elif i < j:
                bump("left_annihilation", T[i][j].transpose().apply(v))
            else:
                bump("right_eigen", T[i][i].apply(v) - v.scale(lam[i]))
                bump("left_eigen", T[i][i].transpose().apply(v) - v.scale(lam[i]))
    return out


@dataclass(frozen=True)
class GaussCoordinates:
    """Gauss coordinates keyed by 1-based index pairs: ``F[(j, i)]`` (j > i), ``k[i]``, ``E[(i, j)]`` (i < j)."""

    F: dict
    k: dict
    E: dict


def gauss_decompose(chain: ChainSpec, z) -> GaussCoordinates:
    """Solve ``L_{i,j} = sum_m F_{j,m} k_m E_{m,i}`` layer by layer (i = 1, 2, 3)."""
    T = monodromy(chain, z)
    o = chain.one

    def M(j, i):
        # L_{i,j} stored at T[i-1][j-1]
        return T[i - 1][j - 1]

    def inv(op, name):
        try:
            return inverse(op, o)
        except NonInvertibleBlock as exc:
            raise NonInvertibleBlock(f"{name} is singular at z={z}") from exc

    k, F, E = {}, {}, {}
    k[1] = M(1, 1)
    k1i = inv(k[1], "k_1")
    for j in (2, 3):
        E[(1, j)] = k1i @ M(1, j)
        F[(j, 1)] = M(j, 1) @ k1i
    k[2] = M(2, 2) - F[(2, 1)] @ k[1] @ E[(1, 2)]
    k2i = inv(k[2], "k_2")
    E[(2, 3)] = k2i @ (M(2, 3) - F[(2, 1)] @ k[1] @ E[(1, 3)])
    F[(3, 2)] = (M(3, 2) - F[(3, 1)] @ k[1] @ E[(1, 2)]) @ k2i
    k[3] = M(3, 3) - F[(3, 1)] @ k[1] @ E[(1, 3)] - F[(3, 2)] @ k[2] @ E[(2, 3)]
    return GaussCoordinates(F, k, E)


def gauss_recomposition_residual(chain: ChainSpec, z, g: GaussCoordinates | None = None):
    """Max |entry| of ``L_{i,j} - sum_m F_{j,m} k_m E_{m,i}`` over all i, j."""
    g = g or gauss_decompose(chain, z)
    T = monodromy(chain, z)
    n = chain.N
    o = chain.one
    ident = SparseOperator.identity(n, o)

    def Fm(j, m):
        return ident if j == m else g.F.get((j, m))

    def Em(m, i):
        return ident if m == i else g.E.get((m, i))

    worst = 0 * o
    for i in range(1, 4):
        for j in range(1, 4):
            acc = SparseOperator(n, {})
            for m in range(1, min(i, j) + 1):
                acc = acc + Fm(j, m) @ g.k[m] @ Em(m, i)
            d = T[i - 1][j - 1] - acc
            if not d.is_zero():
                worst = max(worst, d.max_abs(), key=abs)
    return worst


def cartan_eigen_residual(chain: ChainSpec, z, g: GaussCoordinates | None = None):
    """Max |component| of ``k_i(z) v - lambda_i(z) v`` for i = 1, 2, 3."""
    g = g or gauss_decompose(chain, z)
    v = highest_vector(chain)
    lam = lambda_values(chain, z)
    worst = 0 * chain.one
    for i in (1, 2, 3):
        d = g.k[i].apply(v) - v.scale(lam[i - 1])
        if not d.is_zero():
            worst = max(worst, d.max_abs(), key=abs)
    return worst


def basis_weight(index: int, legs: int) -> tuple[int, int]:
    """Occupation numbers ``(#e_2, #e_3)`` of a basis state.

    A Bethe vector with ``a`` parameters of the first kind and ``b`` of the
    second is supported on states of occupation ``(a - b, b)``.
    """
    ds = digits(index, legs)
    n2 = sum(1 for d in ds if d == 1)
    n3 = sum(1 for d in ds if d == 2)
    return (n2, n3)
