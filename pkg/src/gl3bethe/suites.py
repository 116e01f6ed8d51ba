"""Identity suites shared by ``verify`` and the acceptance tests.

Each suite draws its points from a :class:`Sampler` and returns a list of
:class:`Check` records in a fixed order.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations

from .bethe import direct_scalar_product
from .errors import ConfigError, Gl3BetheError
from .field import FLOAT, is_zero, to_json
from .kernels import (
    check_izergin_identity,
    exchange_identity_sides,
    izergin_determinant,
    izergin_sym_t,
    izergin_sym_x,
    kernel_KF,
    kernel_KF_example,
    kernel_Y,
    kernel_Y_alt,
    y_pole_structure,
)
from .residue import compare_scalar_products
from .rmatrix import (
    cartan_eigen_residual,
    check_rtt,
    check_yang_baxter,
    gauss_recomposition_residual,
    singular_vector_residuals,
)
from .sampling import MAX_ATTEMPTS, Sampler, sample_scalar_case

FLOAT_TOL = 1e-9


@dataclass
class Check:
    name: str
    residual: object
    passed: bool
    elapsed_ms: int

    def to_json(self, timing: bool = True) -> dict:
        r = self.residual
        if isinstance(r, (Fraction, complex, int)):
            r = to_json(Fraction(r) if isinstance(r, int) else r)
        return {
            "name": self.name,
            "residual": r,
            "pass": self.passed,
            "elapsed_ms": self.elapsed_ms if timing else None,
        }


def _ok(residual) -> bool:
    if isinstance(residual, complex) or isinstance(residual, float):
        return abs(residual) <= FLOAT_TOL
    return residual == 0


def _run(name, fn) -> Check:
    start = time.perf_counter()
    r = fn()
    if isinstance(r, float):
        r = complex(r)
    ms = int((time.perf_counter() - start) * 1000)
    return Check(name, r, _ok(r), ms)


def _retry(sampler: Sampler, draw):
    """Redraw until ``draw`` passes every collision guard."""
    for _ in range(MAX_ATTEMPTS):
        try:
            return draw()
        except Gl3BetheError:
            continue
    raise ConfigError("no admissible sample point")


def _distinct(sampler: Sampler, n: int) -> list:
    def draw():
        vals = sampler.values(n)
        for i, u in enumerate(vals):
            for w in vals[i + 1 :]:
                if is_zero(u - w):
                    raise ConfigError("repeat")
        return vals

    return _retry(sampler, draw)


def _gap(*vals):
    """Largest pairwise difference; floats are measured relative to the largest value."""
    worst = max((vals[i] - vals[j] for i in range(len(vals)) for j in range(i + 1, len(vals))), key=abs)
    if isinstance(worst, complex):
        scale = max(1.0, *(abs(v) for v in vals))
        return worst / scale
    return worst


def _max(vals):
    return max(vals, key=abs)


def suite_yangbaxter(sampler: Sampler, count: int = 20, **_):
    out = []
    for k in range(count):
        q, u, v, w = _distinct(sampler, 4)
        out.append(_run(f"yang-baxter[{k}]", lambda: check_yang_baxter(q, u, v, w)))
    return out


def suite_rtt(sampler: Sampler, count: int = 20, sites=(1, 2, 3, 4), **_):
    out = []
    for n in sites:
        for k in range(count):
            chain = sampler.chain(n)
            u, v = _distinct(sampler, 2)
            out.append(_run(f"rtt[N={n},{k}]", lambda: check_rtt(chain, u, v)))
    return out


def suite_hwv(sampler: Sampler, count: int = 5, sites=(1, 2, 3, 4), **_):
    out = []
    for n in sites:
        chain = sampler.chain(n)
        for k in range(count):
            z = sampler.value()
            out.append(_run(f"singular-vector[N={n},{k}]", lambda: _max(singular_vector_residuals(chain, z).values())))
    return out


def suite_gauss(sampler: Sampler, count: int = 5, sites=(1, 2, 3), **_):
    out = []
    for n in sites:
        chain = sampler.chain(n)
        for k in range(count):
            z = sampler.value()
            out.append(_run(f"gauss-recomposition[N={n},{k}]", lambda: gauss_recomposition_residual(chain, z)))
            out.append(_run(f"gauss-cartan[N={n},{k}]", lambda: cartan_eigen_residual(chain, z)))
    return out


def suite_yforms(sampler: Sampler, count: int = 20, sizes=(1, 2, 3, 4), **_):
    out = []
    for n in sizes:
        for k in range(count):
            q, *pts = _distinct(sampler, 2 * n + 1)
            t, x = pts[:n], pts[n:]
            out.append(_run(f"y-forms[n={n},{k}]", lambda: _gap(kernel_Y(q, t, x), kernel_Y_alt(q, t, x))))
    return out


def suite_ypoles(sampler: Sampler, sizes=(1, 2, 3), **_):
    """Y in x_k has simple poles exactly at t_1..t_k; rational backend only."""
    out = []
    for n in sizes:
        q, *pts = _distinct(sampler, 2 * n + 1)
        t, x = pts[:n], pts[n:]
        probes = [Fraction(1000 + 7 * i, 13) for i in range(4 * n + 12)]
        for k in range(1, n + 1):
            def run():
                poles = y_pole_structure(q, t, x, k, probes)
                want = {t[j]: 1 for j in range(k)}
                return Fraction(0) if poles == want else Fraction(1)

            out.append(_run(f"y-poles[n={n},k={k}]", run))
    return out


def suite_exchange(sampler: Sampler, sizes=(1, 2, 3), **_):
    out = []
    for n in sizes:
        q, *pts = _distinct(sampler, 2 * n + 1)
        t, s = pts[:n], pts[n:]
        omega, omega_p = sampler.permutation(n), sampler.permutation(n)

        def run():
            return _gap(*exchange_identity_sides(q, t, s, omega, omega_p))

        out.append(_run(f"exchange[n={n}]", run))
    return out


def suite_izergin(sampler: Sampler, count: int = 20, sizes=(1, 2, 3, 4), **_):
    out = []
    for n in sizes:
        for k in range(count):
            def draw():
                q, *pts = _distinct(sampler, 2 * n + 1)
                t, x = pts[:n], pts[n:]
                check_izergin_identity(q, t, x)
                return q, t, x

            q, t, x = _retry(sampler, draw)
            out.append(
                _run(
                    f"izergin[n={n},{k}]",
                    lambda: _gap(izergin_sym_t(q, t, x), izergin_sym_x(q, t, x), izergin_determinant(q, t, x)),
                )
            )
    return out


def suite_example(sampler: Sampler, count: int = 20, **_):
    out = []
    for k in range(count):
        q, t, s, x, y = _distinct(sampler, 5)
        out.append(_run(f"kf-example[{k}]", lambda: _gap(kernel_KF(q, [t], [s], [x], [y]), kernel_KF_example(q, t, s, x, y))))
    return out


def suite_orthogonality(sampler: Sampler, sites=(1, 2), max_total: int = 3, **_):
    out = []
    sectors = [(a, b) for a in range(max_total + 1) for b in range(max_total + 1 - a)]
    for n in sites:
        for left in sectors:
            for right in sectors:
                if left == right:
                    continue
                case = sample_scalar_case(sampler, right[0], right[1], n, left=left)
                out.append(
                    _run(
                        f"orthogonality[N={n},{left}|{right}]",
                        lambda: direct_scalar_product(case.chain, case.tau, case.sigma, case.t, case.s),
                    )
                )
    return out


CORE_SECTORS = ((1, 0), (0, 1), (1, 1))
EXTENDED_SECTORS = ((2, 1), (1, 2), (2, 2))


def scalar_records(sampler: Sampler, sectors, sites, count: int, timing: bool = True) -> list[dict]:
    """One JSON record per sampled case of the scalar-product comparison."""
    out = []
    for a, b in sectors:
        for n in sites:
            for k in range(count):
                case = sample_scalar_case(sampler, a, b, n)
                c = compare_scalar_products(case.chain, case.tau, case.sigma, case.t, case.s)
                out.append(
                    {
                        "a": a,
                        "b": b,
                        "N": n,
                        "index": k,
                        "params": case.to_json(),
                        "direct": to_json(c.direct),
                        "kernel": to_json(c.kernel),
                        "normalization": to_json(c.normalization),
                        "pass": c.passed,
                        "residue_tree_nodes": c.nodes,
                        "elapsed_ms": c.elapsed_ms if timing else None,
                    }
                )
    return out


SUITES = {
    "yangbaxter": suite_yangbaxter,
    "rtt": suite_rtt,
    "hwv": suite_hwv,
    "gauss": suite_gauss,
    "yforms": suite_yforms,
    "ypoles": suite_ypoles,
    "exchange": suite_exchange,
    "izergin": suite_izergin,
    "example": suite_example,
    "orthogonality": suite_orthogonality,
}

RATIONAL_ONLY = {"ypoles"}


def run_suite(name: str, sampler: Sampler, **options) -> list[Check]:
    if name not in SUITES:
        raise ConfigError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if name in RATIONAL_ONLY and sampler.backend == FLOAT:
        raise ConfigError(f"suite {name!r} needs the rational backend")
    return SUITES[name](sampler, **options)
