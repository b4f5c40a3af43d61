"""
Graded triple systems given by structure constants.

``c[i, j, k, l]`` is the coefficient of ``e_l`` in ``[e_i, e_j, e_k]``.  A
homogeneous map stores its matrix column-wise: ``M[i, j]`` is the coefficient
of ``e_i`` in ``D(e_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .linalg import contract, exact_array, is_zero, normalize, sign, to_object, zeros


@dataclass(frozen=True)
class SuperSpace:
    parity: tuple[int, ...]

    def __post_init__(self):
        par = tuple(int(p) for p in self.parity)
        if any(p not in (0, 1) for p in par):
            raise ValueError(f"parity entries must be 0 or 1, got {self.parity!r}")
        object.__setattr__(self, "parity", par)

    @property
    def dim(self) -> int:
        return len(self.parity)

    @property
    def p(self) -> np.ndarray:
        return np.array(self.parity, dtype=np.int64)

    def grids(self, k: int) -> tuple[np.ndarray, ...]:
        """Open-mesh parity arrays for a rank-``k`` index grid."""
        return np.ix_(*([self.p] * k))

    def indices(self, degree: int) -> list[int]:
        return [i for i, q in enumerate(self.parity) if q == degree]

    def block(self, degree: int) -> list[tuple[int, int]]:
        """Matrix positions allowed for a homogeneous map of the given degree."""
        n = self.dim
        return [
            (i, j)
            for i in range(n)
            for j in range(n)
            if self.parity[i] == (self.parity[j] + degree) % 2
        ]

    @property
    def counts(self) -> tuple[int, int]:
        return self.parity.count(0), self.parity.count(1)


@dataclass(frozen=True, eq=False)
class TripleSystem:
    space: SuperSpace
    delta: int
    c: np.ndarray
    name: str = ""
    basis: tuple[str, ...] = ()

    def __post_init__(self):
        if self.delta not in (1, -1):
            raise ValueError(f"delta must be +1 or -1, got {self.delta!r}")
        n = self.space.dim
        c = to_object(np.asarray(self.c))
        if c.shape != (n, n, n, n):
            raise ValueError(f"structure tensor must have shape {(n,) * 4}, got {c.shape}")
        c = exact_array(c)
        c.setflags(write=False)
        object.__setattr__(self, "c", c)
        if not self.basis:
            object.__setattr__(self, "basis", tuple(f"e{i}" for i in range(n)))
        elif len(self.basis) != n:
            raise ValueError("basis labels do not match dimension")

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def parity(self) -> tuple[int, ...]:
        return self.space.parity

    def with_constants(self, c, name: str | None = None) -> "TripleSystem":
        return replace(self, c=c, name=self.name if name is None else name)

    def with_entry(self, i: int, j: int, k: int, l: int, value) -> "TripleSystem":
        c = np.array(self.c, dtype=object)
        c[i, j, k, l] = normalize(value)
        return self.with_constants(c)

    def same_as(self, other: "TripleSystem") -> bool:
        return (
            self.parity == other.parity
            and self.delta == other.delta
            and np.array_equal(self.c, other.c)
        )

    def is_abelian(self) -> bool:
        return is_zero(self.c)


@dataclass(frozen=True, eq=False)
class HomMap:
    """Homogeneous linear endomorphism of a super space."""

    space: SuperSpace
    matrix: np.ndarray
    degree: int

    def __post_init__(self):
        n = self.space.dim
        m = exact_array(np.asarray(self.matrix, dtype=object))
        if m.shape != (n, n):
            raise ValueError(f"matrix must be {n}x{n}, got {m.shape}")
        if self.degree not in (0, 1):
            raise ValueError("degree must be 0 or 1")
        par = self.space.parity
        for i in range(n):
            for j in range(n):
                if m[i, j] and par[i] != (par[j] + self.degree) % 2:
                    raise ValueError(
                        f"entry ({i},{j}) violates the degree-{self.degree} block structure"
                    )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_coords(cls, space: SuperSpace, degree: int, coords) -> "HomMap":
        m = zeros((space.dim, space.dim))
        for (i, j), x in zip(space.block(degree), coords):
            m[i, j] = x
        return cls(space, m, degree)

    def coords(self) -> list:
        return [self.matrix[i, j] for i, j in self.space.block(self.degree)]

    def is_zero(self) -> bool:
        return is_zero(self.matrix)

    def __call__(self, v):
        return contract("ij,j->i", self.matrix, np.asarray(v, dtype=object))


def degree_of(space: SuperSpace, v) -> int | None:
    """Degree of a homogeneous vector (``None`` for 0 or mixed vectors)."""
    degs = {space.parity[i] for i, x in enumerate(v) if x}
    return degs.pop() if len(degs) == 1 else None


def bracket(T: TripleSystem, a, b, c) -> np.ndarray:
    vecs = [np.asarray(v, dtype=object) for v in (a, b, c)]
    if any(v.shape != (T.dim,) for v in vecs):
        raise ValueError(f"vectors must have length {T.dim}")
    return to_object(contract("i,j,k,ijkl->l", *vecs, T.c))


def basis_vector(n: int, i: int) -> np.ndarray:
    v = zeros(n)
    v[i] = 1
    return v


# ---------------------------------------------------------------------------
# axioms

AXIOMS = {
    "2.1": "grading |[a,b,c]| = |a|+|b|+|c|",
    "2.2": "[b,a,c] = -delta (-1)^{|a||b|} [a,b,c]",
    "2.3": "graded cyclic sum vanishes",
    "2.4": "fundamental identity [a,b,[c,d,e]] = ...",
}


@dataclass
class AxiomCheck:
    axiom: str
    passed: bool
    witness: tuple[int, ...] | None = None
    lhs: list | None = None
    rhs: list | None = None

    def to_json(self) -> dict:
        from .linalg import format_rational

        out = {"axiom": self.axiom, "description": AXIOMS.get(self.axiom, ""), "pass": self.passed}
        if not self.passed:
            out["witness"] = list(self.witness) if self.witness is not None else None
            if self.lhs is not None:
                out["lhs"] = [format_rational(x) for x in self.lhs]
                out["rhs"] = [format_rational(x) for x in self.rhs]
        return out


@dataclass
class AxiomReport:
    name: str
    checks: list[AxiomCheck]
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(ch.passed for ch in self.checks)

    @property
    def failed(self) -> list[str]:
        return [ch.axiom for ch in self.checks if not ch.passed]

    def __getitem__(self, axiom: str) -> AxiomCheck:
        for ch in self.checks:
            if ch.axiom == axiom:
                return ch
        raise KeyError(axiom)

    def to_json(self) -> dict:
        return {
            "system": self.name,
            "pass": self.ok,
            "axioms": [ch.to_json() for ch in self.checks],
            "notes": self.notes,
        }


def _first_violation(axiom: str, lhs: np.ndarray, rhs) -> AxiomCheck:
    """Compare ``lhs``/``rhs`` (last axis = output coordinate) in lexicographic order."""
    lhs = to_object(np.asarray(lhs))
    rhs = to_object(np.broadcast_to(np.asarray(rhs, dtype=object), lhs.shape))
    bad = np.argwhere(np.any(lhs != rhs, axis=-1))
    if len(bad) == 0:
        return AxiomCheck(axiom, True)
    idx = tuple(int(i) for i in bad[0])
    return AxiomCheck(axiom, False, idx, list(lhs[idx]), list(rhs[idx]))


def check_grading(parity: Sequence[int], c: np.ndarray, axiom="2.1") -> AxiomCheck:
    n = len(parity)
    p = np.array(parity, dtype=np.int64)
    a, b, cc, l = np.ix_(p, p, p, p)
    forbidden = (a + b + cc + l) % 2 == 1
    bad = np.argwhere(forbidden & (c != 0))
    if len(bad) == 0:
        return AxiomCheck(axiom, True)
    i, j, k, l_ = (int(x) for x in bad[0])
    val = list(c[i, j, k])
    return AxiomCheck(axiom, False, (i, j, k, l_), val, [0] * n)


def check_skew(parity, delta: int, c: np.ndarray, axiom="2.2") -> AxiomCheck:
    p = np.array(parity, dtype=np.int64)
    a, b = np.ix_(p, p)
    s = -delta * sign(a * b)[:, :, None, None]
    lhs = contract("jikl->ijkl", c)
    return _first_violation(axiom, lhs, to_object(s * c))


def check_cyclic(parity, c: np.ndarray, axiom="2.3") -> AxiomCheck:
    p = np.array(parity, dtype=np.int64)
    a, b, cc = np.ix_(p, p, p)
    t1 = sign(a * cc)[..., None] * c
    t2 = sign(b * a)[..., None] * contract("bcal->abcl", c)
    t3 = sign(cc * b)[..., None] * contract("cabl->abcl", c)
    return _first_violation(axiom, to_object(t1 + t2 + t3), 0)


def fundamental_sides(parity, delta: int, c: np.ndarray, g: np.ndarray | None = None):
    """Both sides of the five-argument identity, indexed ``[a,b,c,d,e,l]``.

    With ``g`` given, the outer product is ``c`` and the inner is ``g`` (mixed
    form, used for deformation cross terms).
    """
    inner = c if g is None else g
    p = np.array(parity, dtype=np.int64)
    a, b, cc, d, e = np.ix_(p, p, p, p, p)
    lhs = contract("cdem,abml->abcdel", inner, c)
    r1 = contract("abcm,mdel->abcdel", inner, c)
    r2 = sign(cc * (a + b))[..., None] * contract("abdm,cmel->abcdel", inner, c)
    r3 = delta * sign((a + b) * (cc + d))[..., None] * contract("abem,cdml->abcdel", inner, c)
    return lhs, r1 + r2 + r3


def check_fundamental(parity, delta, c, axiom="2.4") -> AxiomCheck:
    lhs, rhs = fundamental_sides(parity, delta, c)
    return _first_violation(axiom, lhs, rhs)


def verify_axioms(T: TripleSystem) -> AxiomReport:
    checks = [
        check_grading(T.parity, T.c),
        check_skew(T.parity, T.delta, T.c),
        check_cyclic(T.parity, T.c),
        check_fundamental(T.parity, T.delta, T.c),
    ]
    notes = {}
    if T.delta == 1:
        # [a,a,c] = 0 for even a follows from skew symmetry in characteristic 0
        ev = T.space.indices(0)
        notes["even_square_vanishes"] = all(is_zero(T.c[i, i]) for i in ev)
    return AxiomReport(T.name, checks, notes)


# ---------------------------------------------------------------------------
# constructions

def from_superalgebra(parity, delta: int, bkt, name: str = "", basis=()) -> TripleSystem:
    """Triple system ``[a,b,c] = [[a,b],c]`` of a binary bracket table ``bkt[i,j,k]``."""
    space = SuperSpace(tuple(parity))
    n = space.dim
    bkt = exact_array(np.asarray(bkt, dtype=object))
    if bkt.shape != (n, n, n):
        raise ValueError(f"bracket table must have shape {(n, n, n)}, got {bkt.shape}")
    c = to_object(contract("ijm,mkl->ijkl", bkt, bkt))
    return TripleSystem(space, delta, c, name=name, basis=tuple(basis))


def current_extension(T: TripleSystem, maxdeg: int) -> TripleSystem:
    """``T (x) k[t] / (t^{maxdeg+1})``; basis index of ``e_a (x) t^i`` is ``i*dim + a``."""
    if maxdeg < 0:
        raise ValueError("maxdeg must be nonnegative")
    n = T.dim
    m = maxdeg + 1
    c = zeros((m * n,) * 4)
    for i in range(m):
        for j in range(m - i):
            for k in range(m - i - j):
                s = i + j + k
                c[i * n:(i + 1) * n, j * n:(j + 1) * n, k * n:(k + 1) * n, s * n:(s + 1) * n] = T.c
    parity = T.parity * m
    basis = tuple(f"{b}t{i}" if i else b for i in range(m) for b in T.basis)
    return TripleSystem(SuperSpace(parity), T.delta, c, name=f"{T.name}[t]/t^{m}", basis=basis)


def supercommutator(d1: HomMap, d2: HomMap) -> HomMap:
    if d1.space != d2.space:
        raise ValueError("maps live on different spaces")
    s = -1 if d1.degree * d2.degree else 1
    a = contract("ij,jk->ik", d1.matrix, d2.matrix)
    b = contract("ij,jk->ik", d2.matrix, d1.matrix)
    return HomMap(d1.space, to_object(a - s * b), (d1.degree + d2.degree) % 2)


def abelian(parity, delta: int = 1, name: str = "") -> TripleSystem:
    space = SuperSpace(tuple(parity))
    n = space.dim
    return TripleSystem(space, delta, zeros((n,) * 4), name=name or f"abelian{n}")
