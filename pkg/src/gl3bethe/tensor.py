"""Sparse vectors and operators on tensor powers of C^3.

Basis convention: a basis state of ``n`` legs is the integer whose base-3
digits are the leg states, leg 0 being the most significant digit.  Digit
``d`` stands for the unit vector ``e_{d+1}``.  Nothing here ever builds a
dense ``3**n x 3**n`` matrix; operators act on vectors factor by factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import NonInvertibleBlock, ShapeMismatch
from .field import common_backend, from_json, is_zero, to_json

DIM = 3


def digits(index: int, legs: int) -> tuple[int, ...]:
    out = []
    for _ in range(legs):
        index, d = divmod(index, DIM)
        out.append(d)
    return tuple(reversed(out))


def index_of(ds: Sequence[int]) -> int:
    idx = 0
    for d in ds:
        idx = idx * DIM + d
    return idx


def _prune(entries: dict) -> dict:
    return {k: v for k, v in entries.items() if not is_zero(v)}


@dataclass(frozen=True)
class StateVector:
    legs: int
    entries: Mapping[int, object] = field(default_factory=dict)

    def __post_init__(self):
        if self.legs < 0:
            raise ShapeMismatch("negative leg count")
        top = DIM**self.legs
        for k in self.entries:
            if not 0 <= k < top:
                raise ShapeMismatch(f"basis index {k} out of range for {self.legs} legs")

    @classmethod
    def basis(cls, legs: int, ds: Sequence[int], coeff=Fraction(1)) -> "StateVector":
        if len(ds) != legs:
            raise ShapeMismatch("digit count differs from leg count")
        return cls(legs, {index_of(ds): coeff})

    @classmethod
    def from_dict(cls, legs: int, entries: Mapping[int, object]) -> "StateVector":
        return cls(legs, _prune(dict(entries)))

    def __add__(self, other: "StateVector") -> "StateVector":
        if other.legs != self.legs:
            raise ShapeMismatch("adding vectors on different leg counts")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return StateVector(self.legs, _prune(out))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "StateVector":
        return StateVector(self.legs, _prune({k: c * v for k, v in self.entries.items()}))

    def dot(self, other: "StateVector"):
        """Bilinear pairing sum_k self[k] * other[k] (no conjugation)."""
        if other.legs != self.legs:
            raise ShapeMismatch("pairing vectors on different leg counts")
        small, big = sorted((self.entries, other.entries), key=len)
        acc = 0
        for k, v in small.items():
            w = big.get(k)
            if w is not None:
                acc += v * w
        return acc

    def is_zero(self) -> bool:
        return not self.entries

    def max_abs(self):
        return max((abs(v) for v in self.entries.values()), default=0)

    def to_json(self) -> dict:
        return {
            "legs": self.legs,
            "entries": {str(k): to_json(v) for k, v in sorted(self.entries.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "StateVector":
        return cls.from_dict(int(obj["legs"]), {int(k): from_json(v) for k, v in obj["entries"].items()})


@dataclass(frozen=True)
class SparseOperator:
    legs: int
    entries: Mapping[tuple[int, int], object] = field(default_factory=dict)

    @classmethod
    def from_dict(cls, legs: int, entries) -> "SparseOperator":
        return cls(legs, _prune(dict(entries)))

    @classmethod
    def identity(cls, legs: int, one=Fraction(1)) -> "SparseOperator":
        return cls(legs, {(i, i): one for i in range(DIM**legs)})

    @classmethod
    def unit(cls, i: int, j: int, one=Fraction(1)) -> "SparseOperator":
        """Matrix unit ``E_{ij}`` on one leg, 1-based indices as in the literature."""
        return cls(1, {(i - 1, j - 1): one})

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SparseOperator":
        n = len(rows)
        legs = 0
        while DIM**legs < n:
            legs += 1
        if DIM**legs != n:
            raise ShapeMismatch(f"{n} is not a power of 3")
        return cls.from_dict(legs, {(r, c): v for r, row in enumerate(rows) for c, v in enumerate(row)})

    @property
    def dim(self) -> int:
        return DIM**self.legs

    def get(self, r: int, c: int, default=0):
        return self.entries.get((r, c), default)

    def columns(self) -> dict[int, list]:
        cols: dict[int, list] = {}
        for (r, c), v in self.entries.items():
            cols.setdefault(c, []).append((r, v))
        return cols

    def rows(self) -> dict[int, dict]:
        out: dict[int, dict] = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        if other.legs != self.legs:
            raise ShapeMismatch("adding operators on different leg counts")
        out = dict(self.entries)
        for k, v in other.entries.items():
            out[k] = out.get(k, 0) + v
        return SparseOperator(self.legs, _prune(out))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SparseOperator":
        return SparseOperator(self.legs, _prune({k: c * v for k, v in self.entries.items()}))

    def __matmul__(self, other: "SparseOperator") -> "SparseOperator":
        if other.legs != self.legs:
            raise ShapeMismatch("composing operators on different leg counts")
        rows_other = other.rows()
        out: dict = {}
        for (r, k), v in self.entries.items():
            for c, w in rows_other.get(k, {}).items():
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseOperator(self.legs, _prune(out))

    def transpose(self) -> "SparseOperator":
        return SparseOperator(self.legs, {(c, r): v for (r, c), v in self.entries.items()})

    def kron(self, other: "SparseOperator") -> "SparseOperator":
        n = other.dim
        out = {}
        for (r1, c1), v in self.entries.items():
            for (r2, c2), w in other.entries.items():
                out[(r1 * n + r2, c1 * n + c2)] = v * w
        return SparseOperator(self.legs + other.legs, _prune(out))

    def apply(self, psi: StateVector) -> StateVector:
        if psi.legs != self.legs:
            raise ShapeMismatch("operator and vector leg counts differ")
        cols = self.columns()
        out: dict = {}
        for c, x in psi.entries.items():
            for r, v in cols.get(c, ()):
                out[r] = out.get(r, 0) + v * x
        return StateVector(self.legs, _prune(out))

    def max_abs(self):
        return max((abs(v) for v in self.entries.values()), default=0)

    def is_zero(self) -> bool:
        return not self.entries

    def backend(self):
        return common_backend(self.entries.values())


def apply_on_legs(op: SparseOperator, legs: Sequence[int], psi: StateVector) -> StateVector:
    """Apply ``op`` (on ``len(legs)`` legs) to the named legs of ``psi``; identity elsewhere.

    ``legs`` are 0-based positions; ``legs[0]`` is the most significant leg of ``op``.
    """
    k = len(legs)
    if op.legs != k:
        raise ShapeMismatch(f"operator acts on {op.legs} legs, {k} positions given")
    if len(set(legs)) != k or any(not 0 <= p < psi.legs for p in legs):
        raise ShapeMismatch(f"bad leg positions {list(legs)} for {psi.legs} legs")
    weights = [DIM ** (psi.legs - 1 - p) for p in legs]
    cols = op.columns()
    # precompute target offsets for every local row
    row_offset = {}
    for lst in cols.values():
        for r, _ in lst:
            if r not in row_offset:
                rd = digits(r, k)
                row_offset[r] = sum(d * w for d, w in zip(rd, weights))
    out: dict = {}
    for idx, x in psi.entries.items():
        local = 0
        base = idx
        for w in weights:
            d = (idx // w) % DIM
            local = local * DIM + d
            base -= d * w
        for r, v in cols.get(local, ()):
            t = base + row_offset[r]
            if t in out:
                out[t] += v * x
            else:
                out[t] = v * x
    return StateVector(psi.legs, _prune(out))


Factor = tuple  # (SparseOperator, legs)


def apply_string(factors: Sequence[Factor], psi: StateVector) -> StateVector:
    """Apply the product ``factors[0] @ factors[1] @ ...`` (rightmost acts first)."""
    for op, legs in reversed(factors):
        psi = apply_on_legs(op, legs, psi)
    return psi


def transpose_string(factors: Sequence[Factor]) -> list:
    return [(op.transpose(), legs) for op, legs in reversed(factors)]


def string_to_operator(factors: Sequence[Factor], legs: int, one=Fraction(1)) -> SparseOperator:
    """Materialize a factor string on ``legs`` legs column by column (small spaces only)."""
    out = {}
    for c in range(DIM**legs):
        col = apply_string(factors, StateVector(legs, {c: one}))
        for r, v in col.entries.items():
            out[(r, c)] = v
    return SparseOperator(legs, out)


def embed(op: SparseOperator, legs: Sequence[int], total: int, one=Fraction(1)) -> SparseOperator:
    return string_to_operator([(op, tuple(legs))], total, one)


def tensor_vectors(a: StateVector, b: StateVector) -> StateVector:
    n = DIM**b.legs
    return StateVector(a.legs + b.legs, {i * n + j: v * w for i, v in a.entries.items() for j, w in b.entries.items()})


def _weight_matrix(w) -> dict:
    if isinstance(w, SparseOperator):
        if w.legs != 1:
            raise ShapeMismatch("aux weights must be single-leg 3x3 matrices")
        return dict(w.entries)
    rows = list(w)
    if len(rows) != DIM or any(len(r) != DIM for r in rows):
        raise ShapeMismatch("aux weights must be 3x3")
    return {(i, j): rows[i][j] for i in range(DIM) for j in range(DIM) if not is_zero(rows[i][j])}


def weighted_aux_trace(
    apply: SparseOperator | Callable[[StateVector], StateVector],
    weights: Sequence,
    psi: StateVector,
) -> StateVector:
    """``(tr_aux (X (W_1 x ... x W_M)) x id) psi`` for an operator ``X`` on aux^M (x) quantum.

    ``apply`` is ``X`` itself or a callable applying it to vectors on
    ``M + psi.legs`` legs, aux legs first.  Per aux leg this realizes
    ``tr(X E_ij) = X_ji``: only the columns of ``X`` selected by nonzero
    weight rows are ever computed.
    """
    m = len(weights)
    wmats = [_weight_matrix(w) for w in weights]
    if isinstance(apply, SparseOperator):
        op = apply
        if op.legs != m + psi.legs:
            raise ShapeMismatch("operator legs differ from aux + quantum legs")
        apply = op.apply
    nq = DIM**psi.legs
    # W_k[beta, alpha] contracts column beta of X with row alpha
    by_beta: list[dict[int, list]] = []
    for wm in wmats:
        d: dict[int, list] = {}
        for (beta, alpha), val in wm.items():
            d.setdefault(beta, []).append((alpha, val))
        by_beta.append(d)
    row_lookup = [{beta: dict(lst) for beta, lst in d.items()} for d in by_beta]
    out: dict = {}

    def configs(k, acc):
        if k == m:
            yield tuple(acc)
            return
        for beta in sorted(by_beta[k]):
            acc.append(beta)
            yield from configs(k + 1, acc)
            acc.pop()

    for betas in configs(0, []):
        col_index = index_of(betas)
        start = StateVector(m + psi.legs, {col_index * nq + j: x for j, x in psi.entries.items()})
        image = apply(start)
        for idx, val in image.entries.items():
            aux_idx, q_idx = divmod(idx, nq)
            alphas = digits(aux_idx, m)
            coeff = val
            for k in range(m):
                w = row_lookup[k][betas[k]].get(alphas[k])
                if w is None:
                    coeff = None
                    break
                coeff = coeff * w
            if coeff is not None:
                out[q_idx] = out.get(q_idx, 0) + coeff
    return StateVector(psi.legs, _prune(out))


def inverse(op: SparseOperator, one=Fraction(1)) -> SparseOperator:
    """Exact Gauss-Jordan inverse on sparse rows."""
    n = op.dim
    rows = op.rows()
    a = [dict(rows.get(i, {})) for i in range(n)]
    inv = [{i: one} for i in range(n)]
    for col in range(n):
        piv = None
        best = -1.0
        for r in range(col, n):
            v = a[r].get(col)
            if v is None or is_zero(v):
                continue
            if isinstance(v, complex):
                if abs(v) > best:
                    best, piv = abs(v), r
            else:
                piv = r
                break
        if piv is None:
            raise NonInvertibleBlock(f"operator is singular (column {col})")
        a[col], a[piv] = a[piv], a[col]
        inv[col], inv[piv] = inv[piv], inv[col]
        p = a[col][col]
        a[col] = {k: v / p for k, v in a[col].items()}
        inv[col] = {k: v / p for k, v in inv[col].items()}
        for r in range(n):
            if r == col:
                continue
            f = a[r].get(col)
            if f is None or is_zero(f, 0.0):
                continue
            ar, ir = a[r], inv[r]
            for k, v in a[col].items():
                ar[k] = ar.get(k, 0) - f * v
            for k, v in inv[col].items():
                ir[k] = ir.get(k, 0) - f * v
            a[r] = {k: v for k, v in ar.items() if not is_zero(v)}
            inv[r] = {k: v for k, v in ir.items() if not is_zero(v)}
    return SparseOperator(op.legs, {(r, c): v for r, row in enumerate(inv) for c, v in row.items()})


def basis_states(legs: int) -> Iterable[int]:
    return range(DIM**legs)
