"""
Exact rational linear algebra.

Scalars are python ``int`` or ``fractions.Fraction``; both are exact and mix
freely.  Dense tensors are numpy arrays of dtype ``object`` (or ``int64`` on the
fast path of :func:`contract`).  Subspaces are kept in canonical reduced row
echelon form so that equality of subspaces is equality of their bases.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import prod
from typing import Iterable, Sequence

import numpy as np

Scalar = int | Fraction

# int64 fast path is only taken when every intermediate provably stays below this
_INT_BOUND = 1 << 56


# ---------------------------------------------------------------------------
# scalars

def normalize(x) -> Scalar:
    """Collapse integral fractions to ``int``; accept numpy integers."""
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, (int, np.integer)):
        return int(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def parse_rational(text) -> Scalar:
    """Parse ``"p/q"``, ``"p"`` or an int.  Floats are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return normalize(text)
    if isinstance(text, str):
        try:
            return normalize(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {text!r}") from exc
    raise ValueError(f"not a rational: {text!r}")


def format_rational(x) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# dense tensors

def exact_array(data, shape=None) -> np.ndarray:
    """Object array with every entry normalized to ``int``/``Fraction``."""
    arr = np.array(data, dtype=object)
    if shape is not None:
        arr = arr.reshape(shape)
    flat = arr.reshape(-1)
    for idx in range(flat.size):
        flat[idx] = normalize(flat[idx])
    return arr


def zeros(shape) -> np.ndarray:
    return np.zeros(shape, dtype=np.int64).astype(object)


def identity(n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64).astype(object)


def to_object(arr: np.ndarray) -> np.ndarray:
    if arr.dtype == object:
        return arr
    return arr.astype(object)


def is_zero(arr) -> bool:
    return not np.any(np.asarray(arr) != 0)


def _as_int64(arr: np.ndarray):
    """Return ``(int64 array, max abs)`` or ``None`` if ``arr`` holds a non-integer."""
    if arr.dtype != object:
        if arr.dtype.kind not in "iub":
            return None
        a = arr.astype(np.int64)
        return a, int(np.abs(a).max(initial=0))
    flat = arr.reshape(-1)
    big = 0
    for x in flat:
        if isinstance(x, Fraction):
            if x.denominator != 1:
                return None
            x = x.numerator
        big = max(big, abs(int(x)))
        if big >= _INT_BOUND:
            return None
    return flat.astype(np.int64).reshape(arr.shape), big


def contract(subscripts: str, *operands) -> np.ndarray:
    """Exact ``einsum``.

    Uses int64 when all operands are integral and the worst-case result is
    bounded well inside the int64 range; otherwise falls back to object arrays.
    """
    ops = [np.asarray(o) for o in operands]
    ints = [_as_int64(o) for o in ops]
    if all(i is not None for i in ints):
        lhs, rhs = subscripts.replace("...", "").split("->")
        sizes = {}
        for term, op in zip(lhs.split(","), ops):
            core = op.shape[op.ndim - len(term):] if term else ()
            sizes.update(zip(term, core))
        summed = set("".join(lhs.split(","))) - set(rhs)
        bound = prod(sizes[s] for s in summed) * prod(m for _, m in ints)
        if bound < _INT_BOUND:
            return np.einsum(subscripts, *(a for a, _ in ints))
    return np.einsum(subscripts, *(to_object(o) for o in ops))


def sign(exponent) -> np.ndarray:
    """(-1)**exponent, elementwise, for integer arrays."""
    return 1 - 2 * (np.asarray(exponent) % 2)


# ---------------------------------------------------------------------------
# echelon forms

def _sparse_rows(rows) -> list[dict[int, Scalar]]:
    out = []
    for row in rows:
        d = {}
        for j, x in enumerate(row):
            if x:
                d[j] = normalize(x)
        out.append(d)
    return out


def _echelon(rows: Iterable[dict[int, Scalar]], ncols: int) -> dict[int, dict[int, Scalar]]:
    """Fully reduced echelon basis keyed by pivot column (incremental Gauss-Jordan)."""
    basis: dict[int, dict[int, Scalar]] = {}
    seen = set()
    for row in rows:
        if not row:
            continue
        key = tuple(sorted(row.items()))
        if key in seen:
            continue
        seen.add(key)
        r = dict(row)
        for pc in [c for c in r if c in basis]:
            coef = r.get(pc)
            if not coef:
                continue
            for j, x in basis[pc].items():
                v = r.get(j, 0) - coef * x
                if v:
                    r[j] = v
                else:
                    r.pop(j, None)
        if not r:
            continue
        piv = min(r)
        lead = r[piv]
        r = {j: normalize(Fraction(x) / lead) for j, x in r.items()}
        for other in basis.values():
            coef = other.get(piv)
            if not coef:
                continue
            for j, x in r.items():
                v = other.get(j, 0) - coef * x
                if v:
                    other[j] = v
                else:
                    other.pop(j, None)
        basis[piv] = r
        if len(basis) == ncols:
            break
    return basis


def _dense(basis: dict[int, dict[int, Scalar]], ncols: int) -> list[tuple[Scalar, ...]]:
    out = []
    for piv in sorted(basis):
        row = [0] * ncols
        for j, x in basis[piv].items():
            row[j] = x
        out.append(tuple(row))
    return out


def rref(m) -> tuple[np.ndarray, list[int], int]:
    """Reduced row echelon form of ``m``; returns ``(R, pivots, rank)``.

    ``R`` has the same shape as ``m``, zero rows at the bottom.
    """
    m = np.asarray(m)
    if m.ndim != 2:
        raise ValueError("rref expects a matrix")
    nrows, ncols = m.shape
    basis = _echelon(_sparse_rows(m.tolist()), ncols)
    pivots = sorted(basis)
    out = zeros((nrows, ncols))
    for r, row in enumerate(_dense(basis, ncols)):
        out[r] = row
    return out, pivots, len(pivots)


def rank(m) -> int:
    m = np.asarray(m)
    return len(_echelon(_sparse_rows(m.tolist()), m.shape[1]))


def kernel_basis(m) -> "Subspace":
    """Null space ``{v : m v = 0}`` as a canonical subspace."""
    m = np.asarray(m)
    ncols = m.shape[1]
    basis = _echelon(_sparse_rows(m.tolist()), ncols)
    return Subspace.from_echelon(_kernel_vectors(basis, ncols), ncols)


def _kernel_vectors(basis, ncols) -> list[list[Scalar]]:
    free = [j for j in range(ncols) if j not in basis]
    vecs = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for piv, row in basis.items():
            x = row.get(f)
            if x:
                v[piv] = -x
        vecs.append(v)
    return vecs


def solve(m, b) -> list[Scalar] | None:
    """One solution ``x`` of ``m x = b`` or ``None`` when inconsistent."""
    m = np.asarray(m)
    nrows, ncols = m.shape
    rows = []
    for row, rhs in zip(m.tolist(), list(b)):
        d = {j: normalize(x) for j, x in enumerate(row) if x}
        if rhs:
            d[ncols] = normalize(rhs)
        rows.append(d)
    basis = _echelon(rows, ncols + 1)
    if ncols in basis:
        return None
    x = [0] * ncols
    for piv, row in basis.items():
        x[piv] = row.get(ncols, 0)
    return x


def matrix_rank(columns: Sequence[Sequence[Scalar]], length: int) -> int:
    """Rank of a list of vectors of a given length."""
    return len(_echelon(_sparse_rows(columns), length))


# ---------------------------------------------------------------------------
# subspaces

@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim, stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def span(cls, vectors, ambient_dim: int) -> "Subspace":
        basis = _echelon(_sparse_rows(vectors), ambient_dim)
        return cls(ambient_dim, tuple(_dense(basis, ambient_dim)))

    @classmethod
    def from_echelon(cls, vectors, ambient_dim: int) -> "Subspace":
        return cls.span(vectors, ambient_dim)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span(np.eye(ambient_dim, dtype=np.int64).tolist(), ambient_dim)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def pivots(self) -> list[int]:
        return [next(j for j, x in enumerate(row) if x) for row in self.basis]

    def vectors(self) -> np.ndarray:
        if not self.basis:
            return zeros((0, self.ambient_dim))
        return np.array(self.basis, dtype=object)

    def _check(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )

    def contains_vector(self, v) -> bool:
        v = list(v)
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        r = {j: normalize(x) for j, x in enumerate(v) if x}
        for row, piv in zip(self.basis, self.pivots):
            coef = r.get(piv)
            if not coef:
                continue
            for j, x in enumerate(row):
                if x:
                    val = r.get(j, 0) - coef * x
                    if val:
                        r[j] = val
                    else:
                        r.pop(j, None)
        return not r

    def coordinates(self, v) -> list[Scalar] | None:
        """Coefficients of ``v`` in ``self.basis`` (``None`` if ``v`` is outside)."""
        if not self.contains_vector(v):
            return None
        return [normalize(v[p]) for p in self.pivots]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(list(self.basis) + list(other.basis), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def sum(self, other: "Subspace") -> "Subspace":
        return self + other

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the kernel of the stacked system [A^T | -B^T]."""
        self._check(other)
        if not self.basis or not other.basis:
            return Subspace.zero(self.ambient_dim)
        a = self.vectors()
        b = other.vectors()
        stacked = np.concatenate([a.T, -b.T], axis=1)
        ker = kernel_basis(stacked)
        vecs = [np.dot(np.array(k[: self.dim], dtype=object), a).tolist() for k in ker.basis]
        return Subspace.span(vecs, self.ambient_dim)

    def contains(self, other: "Subspace") -> bool:
        """``other`` is a subspace of ``self``."""
        self._check(other)
        return all(self.contains_vector(v) for v in other.basis)

    def quotient_dim(self, other: "Subspace") -> int:
        """dim(self / other); ``other`` must lie inside ``self``."""
        self._check(other)
        if not self.contains(other):
            raise ValueError("quotient_dim requires the second subspace inside the first")
        return self.dim - (self & other).dim

    def complement_in(self, larger: "Subspace") -> list[tuple[Scalar, ...]]:
        """Basis vectors of ``larger`` that extend ``self`` to a basis of ``larger``."""
        self._check(larger)
        picked = []
        current = self
        for v in larger.basis:
            if not current.contains_vector(v):
                picked.append(v)
                current = current + Subspace.span([v], self.ambient_dim)
        return picked

    def project(self, coords: Sequence[int]) -> "Subspace":
        rows = [[row[c] for c in coords] for row in self.basis]
        return Subspace.span(rows, len(coords))


def subspace_algebra(op: str, a: Subspace, b: Subspace):
    """Dispatch ``sum | intersect | contains | equals | quotient_dim``."""
    a._check(b)
    if op == "sum":
        return a + b
    if op == "intersect":
        return a & b
    if op == "contains":
        return a.contains(b)
    if op == "equals":
        return a == b
    if op == "quotient_dim":
        return a.quotient_dim(b)
    raise ValueError(f"unknown subspace operation {op!r}")


def stack_columns(columns: Sequence[np.ndarray]) -> np.ndarray:
    """Matrix whose j-th column is the flattened j-th array."""
    if not columns:
        return zeros((0, 0))
    flat = [to_object(np.asarray(c)).reshape(-1) for c in columns]
    return np.stack(flat, axis=1)


def lin_comb(coefs, arrays):
    """Exact sum of ``coef * array``."""
    terms = [to_object(np.asarray(a)) * c for c, a in zip(coefs, arrays) if c]
    if not terms:
        return zeros(np.asarray(arrays[0]).shape)
    return reduce(lambda x, y: x + y, terms)
