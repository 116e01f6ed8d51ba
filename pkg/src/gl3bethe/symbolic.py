"""Sums of products of powers of linear forms, with exact residue extraction.

Integrands of the scalar-product formula are built from factors
``(alpha . z + beta)`` over a small set of integration variables; every other
parameter is already a number.  A :class:`LinearForm` is additive; products
and quotients of forms become an :class:`Expr`, a dictionary

    monomial key -> coefficient,   key = ((canonical form, exponent), ...)

Forms are stored canonically: the coefficient of the lowest-ranked variable
present is 1 and the scale moves into the monomial coefficient.  Variables
are integrated in rank order, so the active variable always enters its
forms with coefficient 1 and a pole ``z = p`` is the single key ``z - p``.
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Sequence

from .errors import HigherOrderPole, WhitelistAmbiguity
from .field import is_zero


def _is_number(x) -> bool:
    return not isinstance(x, (LinearForm, Expr))


class VariableSpace:
    """Ordered integration variables; rank = position = elimination order."""

    def __init__(self, names: Sequence[str]):
        self.names = tuple(names)
        self.rank = {n: i for i, n in enumerate(self.names)}
        if len(self.rank) != len(self.names):
            raise ValueError("duplicate variable names")
        self._float_keys: list = []

    def intern(self, key):
        """Merge float forms that agree up to rounding into one stored key."""
        if key is None or not any(isinstance(c, complex) for c in (*key[0], key[1])):
            return key
        for k in self._float_keys:
            if _close(k, key):
                return k
        self._float_keys.append(key)
        return key

    def __len__(self):
        return len(self.names)

    def var(self, name: str, one=Fraction(1)) -> "LinearForm":
        coeffs = [0] * len(self.names)
        coeffs[self.rank[name]] = one
        return LinearForm(self, tuple(coeffs), one * 0)

    def vars(self, names: Iterable[str], one=Fraction(1)) -> list:
        return [self.var(n, one) for n in names]


def _canon(coeffs: tuple, const):
    """Return (scale, key) with ``form = scale * key``; key None for constants."""
    if any(isinstance(c, complex) for c in (*coeffs, const)):
        big = max(abs(c) for c in (*coeffs, const))
        cut = 1e-12 * big
        coeffs = tuple(0j if abs(c) <= cut else c for c in coeffs)
        const = 0j if abs(const) <= cut else const
    for i, c in enumerate(coeffs):
        if not is_zero(c, 0.0):
            if c == 1:
                return c, (coeffs, const)
            inv = 1 / c
            scaled = [x * inv for x in coeffs]
            scaled[i] = c / c if not isinstance(c, complex) else 1 + 0j
            return c, (tuple(scaled), const * inv)
    return const, None


class LinearForm:
    __slots__ = ("space", "coeffs", "const")

    def __init__(self, space: VariableSpace, coeffs: tuple, const):
        self.space = space
        self.coeffs = coeffs
        self.const = const

    # additive structure ------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, LinearForm):
            return LinearForm(self.space, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.const + other.const)
        if isinstance(other, Expr):
            return self.to_expr() + other
        return LinearForm(self.space, self.coeffs, self.const + other)

    __radd__ = __add__

    def __neg__(self):
        return LinearForm(self.space, tuple(-a for a in self.coeffs), -self.const)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (LinearForm, Expr)):
            return self.to_expr() * other
        return LinearForm(self.space, tuple(a * other for a in self.coeffs), self.const * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (LinearForm, Expr)):
            return self.to_expr() / other
        inv = 1 / other
        return self * inv

    def __rtruediv__(self, other):
        return Expr.number(self.space, other) / self

    def to_expr(self) -> "Expr":
        scale, key = _canon(self.coeffs, self.const)
        key = self.space.intern(key)
        if key is None:
            return Expr.number(self.space, scale)
        return Expr(self.space, {((key, 1),): scale})

    def is_constant(self) -> bool:
        return all(is_zero(c, 0.0) for c in self.coeffs)

    def evaluate(self, point: Sequence):
        return self.const + sum(c * x for c, x in zip(self.coeffs, point) if not is_zero(c, 0.0))

    def __repr__(self):
        terms = [f"{c}*{n}" for c, n in zip(self.coeffs, self.space.names) if not is_zero(c, 0.0)]
        return "(" + " + ".join(terms + [str(self.const)]) + ")"


def _key_eval(key, point):
    coeffs, const = key
    return const + sum(c * x for c, x in zip(coeffs, point) if not is_zero(c, 0.0))


def _merge(k1: tuple, k2: tuple, sign: int = 1) -> tuple:
    d = dict(k1)
    for f, e in k2:
        n = d.get(f, 0) + sign * e
        if n:
            d[f] = n
        else:
            d.pop(f, None)
    return tuple(sorted(d.items(), key=_sort_key))


def _sort_key(item):
    (coeffs, const), e = item
    return (tuple(map(_num_key, coeffs)), _num_key(const), e)


def _num_key(x):
    if isinstance(x, complex):
        return (x.real, x.imag)
    return (x, 0)


class Expr:
    """Finite sum of ``coefficient * prod(form ** exponent)``."""

    __slots__ = ("space", "terms")

    def __init__(self, space: VariableSpace, terms: dict):
        self.space = space
        self.terms = terms

    @classmethod
    def number(cls, space: VariableSpace, c) -> "Expr":
        return cls(space, {} if is_zero(c, 0.0) else {(): c})

    def _lift(self, other) -> "Expr":
        if isinstance(other, Expr):
            return other
        if isinstance(other, LinearForm):
            return other.to_expr()
        return Expr.number(self.space, other)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self.terms)
        for k, v in o.terms.items():
            n = out.get(k)
            n = v if n is None else n + v
            if is_zero(n, 0.0):
                out.pop(k, None)
            else:
                out[k] = n
        return Expr(self.space, out)

    __radd__ = __add__

    def __neg__(self):
        return Expr(self.space, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if _is_number(other):
            if is_zero(other, 0.0):
                return Expr(self.space, {})
            return Expr(self.space, {k: v * other for k, v in self.terms.items()})
        o = self._lift(other)
        out: dict = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                k = _merge(k1, k2) if k1 and k2 else (k1 or k2)
                n = out.get(k)
                out[k] = v1 * v2 if n is None else n + v1 * v2
        return Expr(self.space, {k: v for k, v in out.items() if not is_zero(v, 0.0)})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_number(other):
            return self * (1 / other)
        o = self._lift(other)
        if len(o.terms) != 1:
            raise ValueError("can only divide by a single monomial")
        (k2, v2), = o.terms.items()
        return Expr(self.space, {_merge(k1, k2, -1): v1 / v2 for k1, v1 in self.terms.items()})

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant_value(self):
        """Value of an expression with no variables left."""
        if not self.terms:
            return 0
        if set(self.terms) != {()}:
            raise ValueError("expression still depends on variables")
        return self.terms[()]

    def evaluate(self, point: Sequence):
        acc = 0
        for key, c in self.terms.items():
            v = c
            for form, e in key:
                v = v * _key_eval(form, point) ** e
            acc = acc + v
        return acc

    def candidate_poles(self, name: str) -> list:
        """Distinct pole locations (as forms or numbers) of ``name``, any term."""
        r = self.space.rank[name]
        seen = {}
        for key in self.terms:
            for (coeffs, const), e in key:
                if e < 0 and not is_zero(coeffs[r], 0.0):
                    seen[(coeffs, const)] = True
        return [_pole_of(self.space, f, r) for f in seen]

    def _snap(self, key):
        """Stored form equal to ``key``; float keys are matched within tolerance."""
        coeffs, const = key
        if not any(isinstance(c, complex) for c in (*coeffs, const)):
            return key
        for k in self.terms:
            for f, _e in k:
                if f == key or _close(f, key):
                    return f
        return key

    def pole_order(self, name: str, pole) -> int:
        target = self._snap(_pole_key(self.space, name, pole))
        worst = 0
        for key in self.terms:
            for f, e in key:
                if f == target and e < 0:
                    worst = max(worst, -e)
        return worst

    def residue(self, name: str, pole, max_order: int | None = None) -> "Expr":
        """Residue at ``name = pole``; ``pole`` is a number or a form in later variables."""
        r = self.space.rank[name]
        target = self._snap(_pole_key(self.space, name, pole))
        pole_form = _as_form(self.space, pole)
        out: dict = {}
        subst_cache: dict = {}
        for key, c in self.terms.items():
            m = 0
            for f, e in key:
                if f == target:
                    m = -e
                    break
            if m <= 0:
                continue
            if max_order is not None and m > max_order:
                raise HigherOrderPole(f"pole of order {m} at {name} = {pole}")
            fixed_key: dict = {}
            coeff = c
            moving = []  # (scale, key or None, exponent) for forms containing the variable
            for f, e in key:
                if f == target:
                    continue
                coeffs, const = f
                cv = coeffs[r]
                if is_zero(cv, 0.0):
                    fixed_key[f] = fixed_key.get(f, 0) + e
                    continue
                if cv != 1:
                    raise WhitelistAmbiguity(f"variable {name} is not leading in a factor; integrate in rank order")
                sub = subst_cache.get(f)
                if sub is None:
                    sub = _substitute(f, r, pole_form)
                    subst_cache[f] = sub
                moving.append((sub[0], sub[1], e))
            for combo, weight in _taylor_terms(moving, m - 1):
                k = dict(fixed_key)
                cc = coeff * weight
                for (scale, fkey, e), power in zip(moving, combo):
                    cc = cc * scale**power
                    if fkey is not None and power:
                        k[fkey] = k.get(fkey, 0) + power
                k = tuple(sorted(((f, e) for f, e in k.items() if e), key=_sort_key))
                n = out.get(k)
                out[k] = cc if n is None else n + cc
        return Expr(self.space, {k: v for k, v in out.items() if not is_zero(v, 0.0)})

    def drop(self, name: str) -> None:
        r = self.space.rank[name]
        for key in self.terms:
            for (coeffs, _), _e in key:
                if not is_zero(coeffs[r], 0.0):
                    raise ValueError(f"{name} still present")


def _close(f, g, tol: float = 1e-9) -> bool:
    (cf, kf), (cg, kg) = f, g
    pairs = list(zip(cf, cg)) + [(kf, kg)]
    scale = max(1.0, *(abs(a) for a, _ in pairs))
    return all(abs(a - b) <= tol * scale for a, b in pairs)


def _as_form(space, pole) -> LinearForm:
    if isinstance(pole, LinearForm):
        return pole
    return LinearForm(space, tuple(0 * pole for _ in space.names), pole)


def _pole_key(space, name, pole):
    v = space.var(name)
    form = v - _as_form(space, pole)
    scale, key = _canon(form.coeffs, form.const)
    key = space.intern(key)
    if key is None:
        raise ValueError("pole form is constant")
    if scale != 1 or key[0][space.rank[name]] != 1:
        raise WhitelistAmbiguity(f"{name} is not the leading variable of its pole form")
    return key


def _pole_of(space, f, r):
    coeffs, const = f
    # f = z_r + rest ; pole at z_r = -rest
    rest = LinearForm(space, tuple(0 if i == r else -c for i, c in enumerate(coeffs)), -const)
    if rest.is_constant():
        return rest.const
    return rest


def _substitute(f, r, pole_form: LinearForm):
    """Canonical ``(scale, key)`` of form ``f`` with variable ``r`` replaced by ``pole_form``."""
    coeffs, const = f
    cv = coeffs[r]
    new = [c + cv * p for c, p in zip(coeffs, pole_form.coeffs)]
    new[r] = 0 * cv
    scale, key = _canon(tuple(new), const + cv * pole_form.const)
    key = pole_form.space.intern(key)
    if key is None and is_zero(scale, 0.0):
        raise HigherOrderPole("factor vanishes identically at the pole")
    return scale, key, None


def _binom(e: int, k: int) -> int:
    """Generalized binomial coefficient C(e, k) for integer e (possibly negative)."""
    if e >= 0:
        return comb(e, k)
    return (-1) ** k * comb(-e + k - 1, k)


def _taylor_terms(moving, order: int):
    """Yield (powers, weight): coefficient of eps^order in prod (A_j + eps)^{e_j}.

    ``powers[j]`` is the exponent left on ``A_j`` after taking ``k_j`` powers of eps.
    """
    n = len(moving)
    if order == 0:
        yield tuple(e for _, _, e in moving), 1
        return
    for ks in _compositions(order, n):
        w = 1
        for (_, _, e), k in zip(moving, ks):
            if k:
                b = _binom(e, k)
                if b == 0:
                    w = 0
                    break
                w *= b
        if w:
            yield tuple(e - k for (_, _, e), k in zip(moving, ks)), w


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest
