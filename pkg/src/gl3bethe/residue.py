"""Formal contour integrals as residue sums, and the integral scalar-product formula.

Univariate layer: kernel factors are expanded in powers of (variable / pole),
so for ``f = 1/(1 - z/s)`` the zero mode is 1 while Res_{z=s} f/z = -1.  The
whitelist there lists the poles lying *outside* the expansion region and the
zero mode is ``-sum Res f/z`` over them.

Scalar-product layer: every variable is integrated by summing the residues of
``f/z`` at the poles *inside* the region instead.  Inside means: the origin,
the orbit ``xi_k q^{2m}`` of the Cartan weights, and (for the second family)
the poles ``y = c x_j`` with ``c != 1`` coming from the cross pairing factor.
Kernel poles at the spectral parameters, the pole ``y = x_j`` and every pole
between variables of one family lie outside.  Summing outside residues instead
would need the residue at infinity, which the Cartan factors make nonzero.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .bethe import check_parameters, direct_scalar_product
from .errors import HigherOrderPole, ParameterCollision, PoleNotCandidate, TooManyVariables, WhitelistAmbiguity
from .field import UnivariateRationalFunction, is_zero, pole_order, rf_eval, rf_residue
from .kernels import kernel_KE, kernel_KF, q_symmetrize, vandermonde_q
from .rmatrix import ChainSpec, weight_functions
from .symbolic import Expr, LinearForm, VariableSpace


# --------------------------------------------------------------------------
# univariate layer


@dataclass
class FormalIntegrand:
    """Sum of ``coeff * prod (alpha z + beta)/(gamma z + delta)`` times a regular factor."""

    var: str = "z"
    terms: list = field(default_factory=list)  # [(coeff, [(alpha, beta, gamma, delta), ...])]
    regular: Callable | None = None

    def add_term(self, coeff, atoms: Sequence[tuple]) -> "FormalIntegrand":
        self.terms.append((coeff, [tuple(a) for a in atoms]))
        return self

    def candidate_poles(self) -> list:
        out = []
        for _, atoms in self.terms:
            for _a, _b, g, d in atoms:
                if not is_zero(g):
                    p = -d / g
                    if not any(is_zero(p - o) for o in out):
                        out.append(p)
        return out

    def kernel_part(self) -> UnivariateRationalFunction:
        acc = None
        for coeff, atoms in self.terms:
            f = UnivariateRationalFunction.constant(coeff, self.var)
            for a, b, g, d in atoms:
                f = f * UnivariateRationalFunction.linear_fractional(a, b, g, d, self.var)
            acc = f if acc is None else acc + f
        if acc is None:
            return UnivariateRationalFunction.constant(0, self.var)
        return acc

    def collapse(self) -> UnivariateRationalFunction:
        """Kernel part as one rational function (the regular factor is kept aside)."""
        return self.kernel_part().normalize()

    def __call__(self, z):
        v = 0
        for coeff, atoms in self.terms:
            t = coeff
            for a, b, g, d in atoms:
                t = t * (a * z + b) / (g * z + d)
            v = v + t
        if self.regular is not None:
            v = v * self.regular(z)
        return v


def formal_contour_integral(f: FormalIntegrand, whitelist: Sequence) -> object:
    """Zero mode of ``f`` with the given enclosed kernel poles (all simple)."""
    cands = f.candidate_poles()
    for i, p in enumerate(whitelist):
        if not any(is_zero(p - c) for c in cands):
            raise PoleNotCandidate(f"{p} is not a pole of the integrand")
        for o in whitelist[i + 1 :]:
            if is_zero(p - o):
                raise ParameterCollision(f"whitelisted poles coincide at {p}")
    g = f.collapse()
    one = g.den[-1]  # monic after normalization, so this is the backend's 1
    z = UnivariateRationalFunction.make((0 * one, one), (one,), f.var)
    measure = g / z
    total = 0 * one
    for p in whitelist:
        if is_zero(p):
            raise ParameterCollision("a whitelisted pole sits at the origin")
        if pole_order(measure, p) > 1:
            raise HigherOrderPole(f"pole at {p} is not simple")
        r = rf_residue(measure, p)
        if f.regular is not None:
            r = r * f.regular(p)
        total = total - r
    return total


# --------------------------------------------------------------------------
# scalar-product formula

ORBIT_DEPTH = 8


@dataclass
class KernelOptions:
    """Frozen residue convention; the alternatives exist for diagnostics only."""

    cross_poles: bool = True  # enclose y = c x_j (c != 1) in the y-stage
    y_order: str = "ascending"  # y_1 first, or "descending" for y_b first
    pair_inverse: bool = True  # cross pairing factor prod (x - y)/(x/q - q y)


FROZEN = KernelOptions()


@dataclass
class KernelResult:
    value: object
    nodes: int


def _psi_expr(chain: ChainSpec, i: int, z):
    """``psi_i^+`` built from linear forms in ``z``."""
    q = chain.q
    acc = chain.one
    if i == 1:
        for x in chain.xi:
            acc = acc * (z - x) / (q * z - x / q)
    return acc


def _integrand(chain: ChainSpec, tau, sigma, t, s, xs, ys, options: KernelOptions = FROZEN):
    q = chain.q
    a, b = len(xs), len(ys)
    acc = Expr.number((xs + ys)[0].space, (q - 1 / q) ** (a + b))
    for y in ys:
        for x in xs:
            if options.pair_inverse:
                acc = acc * ((x - y) / (x / q - q * y))
            else:
                acc = acc * ((x / q - q * y) / (x - y))
    for us in (xs, ys):
        for i in range(len(us)):
            for j in range(i + 1, len(us)):
                acc = acc * ((us[i] / q - q * us[j]) / (q * us[i] - us[j] / q))
    for x in xs:
        acc = acc * _psi_expr(chain, 1, x)
    for y in ys:
        acc = acc * _psi_expr(chain, 2, y)
    acc = acc * kernel_KE(q, list(tau), list(sigma), xs, ys)
    sym_f = q_symmetrize(
        q,
        lambda xx: q_symmetrize(q, lambda yy: kernel_KF(q, list(t), list(s), xx, yy), ys),
        xs,
    )
    return acc * sym_f


def _in_orbit(p, base, q) -> bool:
    if is_zero(base):
        return False
    r = p / base
    for m in range(-ORBIT_DEPTH, ORBIT_DEPTH + 1):
        if is_zero(r - q ** (2 * m)):
            return True
    return False


def _classify(chain: ChainSpec, stage: str, pole, params, options: KernelOptions) -> bool:
    """True when ``pole`` of variable ``stage`` lies inside the expansion region."""
    if isinstance(pole, LinearForm):
        live = [(n, c) for n, c in zip(pole.space.names, pole.coeffs) if not is_zero(c)]
        name, c = live[0]
        return options.cross_poles and stage[0] == "y" and name[0] == "x" and not is_zero(c - 1)
    if is_zero(pole):
        return True
    if any(_in_orbit(pole, x, chain.q) for x in chain.xi):
        return True
    if any(_in_orbit(pole, u, chain.q) for u in params):
        return False
    raise WhitelistAmbiguity(f"pole {stage} = {pole} matches neither a weight nor a kernel orbit")


def scalar_product_kernel(chain: ChainSpec, tau, sigma, t, s, options: KernelOptions = FROZEN) -> KernelResult:
    """Iterated-residue evaluation of the integral scalar-product formula."""
    a, b = len(t), len(s)
    if len(tau) != a or len(sigma) != b:
        raise ValueError("left and right families must have equal sizes for the kernel formula")
    if a > 3 or b > 3:
        raise TooManyVariables("a, b <= 3")
    if a + b == 0:
        return KernelResult(chain.one, 1)
    check_parameters(chain, list(tau) + list(sigma), list(t) + list(s))
    ynames = [f"y{i + 1}" for i in range(b)]
    if options.y_order == "descending":
        ynames = ynames[::-1]
    space = VariableSpace(ynames + [f"x{j + 1}" for j in range(a)])
    one = chain.one
    ys = [space.var(f"y{i + 1}", one) for i in range(b)]
    xs = [space.var(f"x{j + 1}", one) for j in range(a)]
    expr = _integrand(chain, tau, sigma, t, s, xs, ys, options)
    params = list(t) + list(s) + list(tau) + list(sigma)

    nodes = 1
    for name in space.names:
        measure = expr / space.var(name, one)
        acc = Expr(space, {})
        for p in measure.candidate_poles(name):
            if _classify(chain, name, p, params, options):
                acc = acc + measure.residue(name, p)
                nodes += 1
        expr = acc
    return KernelResult(expr.constant_value() * one, nodes)


def weight_normalization(chain: ChainSpec, tau, sigma, t, s):
    """``prod lambda_1(t) mu_1(tau) prod lambda_2(s) mu_2(sigma)``."""
    w = weight_functions(chain)
    acc = chain.one
    for u, v in zip(t, tau):
        acc = acc * w.lam(1, u) * w.mu(1, v)
    for u, v in zip(s, sigma):
        acc = acc * w.lam(2, u) * w.mu(2, v)
    return acc


def normalization(chain: ChainSpec, tau, sigma, t, s):
    """Factor with ``direct == normalization * kernel``.

    Weights times ``(-1)^{a+b}`` and the q-Vandermonde ratio of each family;
    the latter converts the trace-formula vectors to the ordered current products.
    """
    q = chain.q
    sign = (-1) ** (len(t) + len(s))
    v = vandermonde_q(q, t) * vandermonde_q(q, tau) * vandermonde_q(q, s) * vandermonde_q(q, sigma)
    return sign * v * weight_normalization(chain, tau, sigma, t, s)


@dataclass
class Comparison:
    direct: object
    kernel: object
    normalization: object
    ratio: object
    passed: bool
    nodes: int
    elapsed_ms: int


def values_agree(x, y, rel: float = 1e-9, absolute: float = 1e-12) -> bool:
    if not isinstance(x, complex) and not isinstance(y, complex):
        return x == y
    d = abs(x - y)
    return d <= absolute or d <= rel * max(abs(x), abs(y))


def compare_scalar_products(chain: ChainSpec, tau, sigma, t, s, options: KernelOptions = FROZEN) -> Comparison:
    """Direct pairing against ``kernel * normalization``; never rescales."""
    start = time.perf_counter()
    direct = direct_scalar_product(chain, tau, sigma, t, s)
    if len(tau) != len(t) or len(sigma) != len(s):
        kernel, nodes = 0 * chain.one, 0
    else:
        res = scalar_product_kernel(chain, tau, sigma, t, s, options)
        kernel, nodes = res.value, res.nodes
    norm = normalization(chain, tau, sigma, t, s)
    expected = kernel * norm
    ratio = None if is_zero(expected) else direct / expected
    ms = int((time.perf_counter() - start) * 1000)
    return Comparison(direct, kernel, norm, ratio, values_agree(direct, expected), nodes, ms)


def rf_sample(f: FormalIntegrand, points: Sequence) -> list:
    """Values of the collapsed kernel part at ``points`` (helper for round-trip checks)."""
    g = f.collapse()
    return [rf_eval(g, z) for z in points]
