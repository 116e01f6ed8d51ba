"""Scalars, univariate polynomials and univariate rational functions.

Two scalar backends share one interface:

* ``"rational"`` -- :class:`fractions.Fraction`, exact; the correctness arbiter.
* ``"float"`` -- Python ``complex``; used only for speed comparisons.

Scalars are plain Python numbers so that ordinary arithmetic operators work;
the helpers here only police backend mixing, zero tests and serialization.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import BackendMismatch, EvaluationAtPole, HigherOrderPole, NotAPole

Scalar = Union[Fraction, complex]

RATIONAL = "rational"
FLOAT = "float"
BACKENDS = (RATIONAL, FLOAT)

FLOAT_PRUNE = 1e-14
FLOAT_POLE = 1e-9


def backend_of(x) -> str:
    if isinstance(x, Fraction):
        return RATIONAL
    if isinstance(x, complex):
        return FLOAT
    raise BackendMismatch(f"not a backend scalar: {x!r} ({type(x).__name__})")


def scalar(value, backend: str = RATIONAL) -> Scalar:
    """Coerce ``value`` (int, str like ``"-3/7"``, Fraction, float, [re, im]) into ``backend``."""
    if backend == RATIONAL:
        if isinstance(value, (complex, float)):
            raise BackendMismatch(f"refusing to convert float {value!r} to an exact rational")
        if isinstance(value, (list, tuple)):
            raise BackendMismatch("complex pair given for the rational backend")
        return Fraction(value)
    if backend == FLOAT:
        if isinstance(value, (list, tuple)):
            re, im = value
            return complex(float(re), float(im))
        if isinstance(value, str):
            return complex(float(Fraction(value)))
        if isinstance(value, Fraction):
            return complex(float(value))
        return complex(value)
    raise BackendMismatch(f"unknown backend {backend!r}")


def common_backend(values: Iterable) -> str | None:
    """Return the single backend used by ``values``; raise if they mix."""
    found = None
    for v in values:
        b = backend_of(v)
        if found is None:
            found = b
        elif b != found:
            raise BackendMismatch(f"mixed backends {found!r} and {b!r} in one computation")
    return found


def zero(backend: str) -> Scalar:
    return Fraction(0) if backend == RATIONAL else 0j


def one(backend: str) -> Scalar:
    return Fraction(1) if backend == RATIONAL else 1 + 0j


def is_zero(x, tol: float = FLOAT_PRUNE) -> bool:
    if isinstance(x, complex):
        return abs(x) <= tol
    return x == 0


def magnitude(x) -> Scalar | float:
    """|x| for residual reports: exact for rationals, float otherwise."""
    return abs(x)


def to_json(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, complex):
        return [x.real, x.imag]
    if isinstance(x, int):
        return f"{x}/1"
    raise BackendMismatch(f"cannot serialize {x!r}")


def from_json(obj) -> Scalar:
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, (list, tuple)) and len(obj) == 2:
        return complex(float(obj[0]), float(obj[1]))
    raise BackendMismatch(f"cannot deserialize scalar {obj!r}")


# -- dense polynomials, ascending coefficients ------------------------------------


def _trim(p: Sequence) -> tuple:
    p = list(p)
    while p and is_zero(p[-1], 0.0 if not isinstance(p[-1], complex) else FLOAT_PRUNE):
        p.pop()
    return tuple(p)


def poly_add(p, r):
    n = max(len(p), len(r))
    out = [(p[i] if i < len(p) else 0) + (r[i] if i < len(r) else 0) for i in range(n)]
    return _trim(out)


def poly_neg(p):
    return tuple(-c for c in p)


def poly_sub(p, r):
    return poly_add(p, poly_neg(r))


def poly_mul(p, r):
    if not p or not r:
        return ()
    out = [0] * (len(p) + len(r) - 1)
    for i, a in enumerate(p):
        if is_zero(a, 0.0):
            continue
        for j, b in enumerate(r):
            out[i + j] += a * b
    return _trim(out)


def poly_scale(p, c):
    return _trim([c * a for a in p])


def poly_eval(p, x):
    acc = 0 * x
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_deriv(p):
    return _trim([i * p[i] for i in range(1, len(p))])


def poly_divmod(p, d):
    """Long division; ``d`` must be nonzero."""
    d = _trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    p = list(_trim(p))
    if len(p) < len(d):
        return (), tuple(p)
    quot = [0] * (len(p) - len(d) + 1)
    lead = d[-1]
    for k in range(len(p) - len(d), -1, -1):
        c = p[k + len(d) - 1] / lead
        quot[k] = c
        for j, dj in enumerate(d):
            p[k + j] -= c * dj
    rem = _trim(p[: len(d) - 1])
    return _trim(quot), rem


def poly_monic(p):
    p = _trim(p)
    if not p:
        return p
    lead = p[-1]
    return tuple(c / lead for c in p)


def poly_gcd(p, r):
    """Monic gcd over the rationals (Euclid on the fraction field)."""
    a, b = _trim(p), _trim(r)
    while b:
        _, rem = poly_divmod(a, b)
        a, b = b, rem
    return poly_monic(a)


def poly_from_roots(roots, lead=Fraction(1)):
    out = (lead,)
    for r in roots:
        out = poly_mul(out, (-r, 1))
    return out


# -- univariate rational functions ------------------------------------------------


@dataclass(frozen=True)
class UnivariateRationalFunction:
    """``num(z) / den(z)`` in the variable named ``var``.

    Build instances through :meth:`make` (which normalizes); the raw
    constructor is kept for internal use.
    """

    num: tuple
    den: tuple
    var: str = "z"

    @classmethod
    def make(cls, num, den=(Fraction(1),), var: str = "z") -> "UnivariateRationalFunction":
        return cls(tuple(num), tuple(den), var).normalize()

    @classmethod
    def constant(cls, c, var: str = "z") -> "UnivariateRationalFunction":
        return cls.make((c,), (c * 0 + 1,), var)

    @classmethod
    def linear_fractional(cls, alpha, beta, gamma, delta, var: str = "z"):
        """``(alpha z + beta) / (gamma z + delta)``."""
        return cls.make((beta, alpha), (delta, gamma), var)

    @property
    def backend(self) -> str:
        return common_backend([*self.num, *self.den]) or RATIONAL

    def normalize(self) -> "UnivariateRationalFunction":
        num, den = _trim(self.num), _trim(self.den)
        if not den:
            raise ZeroDivisionError("zero denominator polynomial")
        if not num:
            return UnivariateRationalFunction((), (den[-1] / den[-1],), self.var)
        if self.backend == RATIONAL:
            g = poly_gcd(num, den)
            if len(g) > 1:
                num, _ = poly_divmod(num, g)
                den, _ = poly_divmod(den, g)
        lead = den[-1]
        return UnivariateRationalFunction(
            tuple(c / lead for c in num), tuple(c / lead for c in den), self.var
        )

    # arithmetic ---------------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, UnivariateRationalFunction):
            if other.var != self.var:
                raise ValueError(f"variable mismatch {self.var!r} vs {other.var!r}")
            return other
        return UnivariateRationalFunction.constant(other, self.var)

    def __add__(self, other):
        o = self._lift(other)
        return UnivariateRationalFunction.make(
            poly_add(poly_mul(self.num, o.den), poly_mul(o.num, self.den)),
            poly_mul(self.den, o.den),
            self.var,
        )

    __radd__ = __add__

    def __neg__(self):
        return UnivariateRationalFunction(poly_neg(self.num), self.den, self.var)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return UnivariateRationalFunction.make(
            poly_mul(self.num, o.num), poly_mul(self.den, o.den), self.var
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if not o.num:
            raise ZeroDivisionError("division by the zero rational function")
        return UnivariateRationalFunction.make(
            poly_mul(self.num, o.den), poly_mul(self.den, o.num), self.var
        )

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __call__(self, z0):
        return rf_eval(self, z0)

    def is_zero(self) -> bool:
        return not self.num

    def poles(self) -> list:
        """Exact rational roots of the denominator (rational backend only)."""
        return rational_roots(self.den)

    def __repr__(self):
        return f"URF({self.var}; num={list(map(str, self.num))}, den={list(map(str, self.den))})"


def _vanishes(value, scale=1.0) -> bool:
    if isinstance(value, complex):
        return abs(value) <= FLOAT_POLE * max(1.0, scale)
    return value == 0


def rf_eval(f: UnivariateRationalFunction, z0):
    d = poly_eval(f.den, z0)
    if _vanishes(d, _poly_scale(f.den, z0)):
        raise EvaluationAtPole(f"denominator of {f!r} vanishes at {z0}")
    return poly_eval(f.num, z0) / d


def _poly_scale(p, z0) -> float:
    if not isinstance(z0, complex):
        return 1.0
    return max((abs(c) * abs(z0) ** i for i, c in enumerate(p)), default=1.0)


def pole_order(f: UnivariateRationalFunction, p) -> int:
    """Multiplicity of ``p`` as a root of the (normalized) denominator."""
    den = f.den
    k = 0
    while len(den) > 1 and _vanishes(poly_eval(den, p), _poly_scale(den, p)):
        den, _ = poly_divmod(den, (-p, p * 0 + 1))
        k += 1
    return k


def rf_residue(f: UnivariateRationalFunction, p):
    """Residue at a simple pole: ``num(p) / den'(p)``."""
    order = pole_order(f, p)
    if order == 0:
        raise NotAPole(f"{p} is not a root of the denominator of {f!r}")
    if order > 1:
        raise HigherOrderPole(f"pole of order {order} at {p}")
    return poly_eval(f.num, p) / poly_eval(poly_deriv(f.den), p)


def rational_roots(p) -> list:
    """Distinct rational roots of a polynomial with rational coefficients."""
    p = _trim(p)
    if len(p) <= 1:
        return []
    # clear denominators to integer coefficients
    from math import lcm

    m = 1
    for c in p:
        m = lcm(m, Fraction(c).denominator)
    ints = [int(c * m) for c in p]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = [Fraction(0)] if len(ints) < len(p) else []
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = set()
    for num in _divisors(a0):
        for den in _divisors(an):
            cands.add(Fraction(num, den))
            cands.add(Fraction(-num, den))
    for c in sorted(cands):
        if poly_eval(ints, c) == 0:
            roots.append(c)
    return roots


def _divisors(n: int) -> list[int]:
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            out.append(n // i)
        i += 1
    return sorted(set(out))


# -- small dense linear algebra -------------------------------------------------


def solve_dense(a: list[list], b: list) -> list:
    """Solve ``a x = b`` by Gaussian elimination; raises ZeroDivisionError if singular."""
    n = len(a)
    m = [list(row) + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = None
        best = -1.0
        for r in range(col, n):
            v = m[r][col]
            if isinstance(v, complex):
                if abs(v) > best:
                    best, piv = abs(v), r
            elif v != 0:
                piv = r
                break
        if piv is None or (best >= 0 and best <= FLOAT_PRUNE):
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        for r in range(n):
            if r != col and not is_zero(m[r][col], 0.0):
                f = m[r][col] * inv
                row_r, row_c = m[r], m[col]
                for k in range(col, n + 1):
                    row_r[k] -= f * row_c[k]
    return [m[i][n] / m[i][i] for i in range(n)]


def rational_interpolate(xs, ys, num_deg: int, den_deg: int, var: str = "z"):
    """Fit ``P/Q`` with deg P <= num_deg, monic deg Q == den_deg through the samples.

    Needs exactly ``num_deg + den_deg + 1`` points.
    """
    n_unknown = num_deg + 1 + den_deg
    if len(xs) != n_unknown:
        raise ValueError(f"need {n_unknown} samples, got {len(xs)}")
    rows, rhs = [], []
    for x, y in zip(xs, ys):
        row = [x**i for i in range(num_deg + 1)] + [-y * x**j for j in range(den_deg)]
        rows.append(row)
        rhs.append(y * x**den_deg)
    sol = solve_dense(rows, rhs)
    num = sol[: num_deg + 1]
    den = sol[num_deg + 1 :] + [sol[0] * 0 + 1]
    return UnivariateRationalFunction.make(num, den, var)


def fit_rational_function(sample, points, max_degree: int = 40, var: str = "z"):
    """Reconstruct a univariate rational function from a black-box ``sample(x)``.

    Tries balanced degree pairs of increasing total degree and accepts the
    first fit that reproduces three extra samples exactly.
    """
    it = iter(points)
    xs, ys = [], []

    def need(k):
        while len(xs) < k:
            x = next(it)
            xs.append(x)
            ys.append(sample(x))

    for total in range(0, 2 * max_degree + 1):
        for den_deg in range(0, min(total, max_degree) + 1):
            num_deg = total - den_deg
            if num_deg > max_degree:
                continue
            k = num_deg + den_deg + 1
            need(k + 3)
            try:
                f = rational_interpolate(xs[:k], ys[:k], num_deg, den_deg, var)
            except ZeroDivisionError:
                continue
            ok = True
            for x, y in zip(xs[k : k + 3], ys[k : k + 3]):
                try:
                    if f(x) != y:
                        ok = False
                        break
                except EvaluationAtPole:
                    ok = False
                    break
            if ok:
                return f
    raise ValueError("no rational fit within degree bound")
