"""
Derivation-type operator spaces and the structure theorems relating them.

Every space is solved degree by degree.  A homogeneous map of degree ``s`` is
parametrized by its entries in the block allowed by ``s`` (see
``SuperSpace.block``), and each defining identity becomes a linear system in
those coordinates, evaluated on all basis triples.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import HomMap, SuperSpace, TripleSystem, supercommutator
from .linalg import Subspace, contract, kernel_basis, sign, solve

KINDS = ("der", "qder", "gder", "centroid", "qc", "zder", "center")
KIND_LABELS = {
    "der": "Der",
    "qder": "QDer",
    "gder": "GDer",
    "centroid": "Centroid",
    "qc": "QC",
    "zder": "ZDer",
    "center": "Center",
}


@dataclass(frozen=True, eq=False)
class OperatorSpace:
    """Even and odd parts of a space of maps (or of vectors, for the center).

    For maps, each part is a subspace of the block coordinates of its degree;
    for the center it is a subspace of the coordinates ``space.indices(deg)``.
    ``witnesses`` maps ``(degree, basis index)`` to the auxiliary maps that
    certify membership (quasi- and generalized derivations only).
    """

    kind: str
    k: int | None
    space: SuperSpace
    even: Subspace
    odd: Subspace
    witnesses: dict = field(default_factory=dict)

    def part(self, degree: int) -> Subspace:
        return self.even if degree == 0 else self.odd

    @property
    def dim_even(self) -> int:
        return self.even.dim

    @property
    def dim_odd(self) -> int:
        return self.odd.dim

    @property
    def dim(self) -> int:
        return self.even.dim + self.odd.dim

    @property
    def is_center(self) -> bool:
        return self.kind == "center"

    def maps(self, degree: int) -> list[HomMap]:
        if self.is_center:
            raise TypeError("the center is a space of vectors")
        return [HomMap.from_coords(self.space, degree, v) for v in self.part(degree).basis]

    def vectors(self, degree: int) -> list[np.ndarray]:
        """Basis vectors in the full coordinates of T (center only)."""
        if not self.is_center:
            raise TypeError("vectors() is only defined for the center")
        idx = self.space.indices(degree)
        out = []
        for v in self.part(degree).basis:
            full = np.zeros(self.space.dim, dtype=object)
            full[idx] = v
            out.append(full)
        return out

    def contains_map(self, D: HomMap) -> bool:
        return self.part(D.degree).contains_vector(D.coords())

    def contains_vector(self, v) -> bool:
        """Membership of an arbitrary (possibly mixed) vector in the center."""
        v = np.asarray(v, dtype=object)
        return all(
            self.part(d).contains_vector([v[i] for i in self.space.indices(d)]) for d in (0, 1)
        )

    def contains(self, other: "OperatorSpace") -> bool:
        return self.even.contains(other.even) and self.odd.contains(other.odd)

    def same_as(self, other: "OperatorSpace") -> bool:
        return self.even == other.even and self.odd == other.odd

    def intersect(self, other: "OperatorSpace", kind: str = "") -> "OperatorSpace":
        return OperatorSpace(kind or self.kind, self.k, self.space,
                             self.even & other.even, self.odd & other.odd)

    def label(self) -> str:
        name = KIND_LABELS.get(self.kind, self.kind)
        return f"{name}_{self.k}" if self.k is not None else name

    def to_json(self, with_basis: bool = True) -> dict:
        from .io import matrix_to_json

        out = {"kind": KIND_LABELS.get(self.kind, self.kind), "k": self.k,
               "dim_even": self.dim_even, "dim_odd": self.dim_odd}
        if with_basis:
            if self.is_center:
                out["basis_even"] = [[str(x) for x in v] for v in self.vectors(0)]
                out["basis_odd"] = [[str(x) for x in v] for v in self.vectors(1)]
            else:
                out["basis_even"] = [matrix_to_json(D.matrix) for D in self.maps(0)]
                out["basis_odd"] = [matrix_to_json(D.matrix) for D in self.maps(1)]
        return out


# ---------------------------------------------------------------------------
# linear forms of the identities

def _units(space: SuperSpace, degree: int) -> np.ndarray:
    """Stack of elementary matrices E_ij for the block of ``degree``."""
    n = space.dim
    block = space.block(degree)
    out = np.zeros((len(block), n, n), dtype=np.int64)
    for t, (i, j) in enumerate(block):
        out[t, i, j] = 1
    return out


@dataclass
class _Forms:
    """Images of each block unit E under the maps D -> tensor[a,b,c,l]."""

    slot1: np.ndarray  # [D a, b, c]
    slot2: np.ndarray  # (-1)^{s|a|} [a, D b, c]
    slot3: np.ndarray  # (-1)^{s(|a|+|b|)} [a, b, D c]
    outer: np.ndarray  # D [a, b, c]

    @property
    def count(self) -> int:
        return self.slot1.shape[0]


def _forms(T: TripleSystem, degree: int) -> _Forms:
    E = _units(T.space, degree)
    c = T.c
    p = T.space.p
    a, b = np.ix_(p, p)
    s2 = sign(degree * p)[:, None, None, None]
    s3 = sign(degree * (a + b))[:, :, None, None]
    return _Forms(
        slot1=contract("tma,mbcl->tabcl", E, c),
        slot2=s2 * contract("tmb,amcl->tabcl", E, c),
        slot3=s3 * contract("tmc,abml->tabcl", E, c),
        outer=contract("abcm,tlm->tabcl", c, E),
    )


def _matrix(*blocks) -> np.ndarray:
    """Constraint matrix with one column per unknown: each block is a stack of
    tensors, one per unknown, and the blocks are concatenated column-wise."""
    cols = [b.reshape(b.shape[0], int(np.prod(b.shape[1:]))) for b in blocks]
    return np.concatenate(cols, axis=0).T


def _rows(*families) -> np.ndarray:
    """Stack several condition families (each a constraint matrix) vertically."""
    return np.concatenate(families, axis=0)


def _kernel(mat: np.ndarray) -> Subspace:
    if mat.shape[1] == 0:
        return Subspace.zero(0)
    return kernel_basis(mat)


# ---------------------------------------------------------------------------
# the spaces

def _leibniz(f: _Forms, k: int, delta: int) -> np.ndarray:
    return delta ** k * (f.slot1 + f.slot2 + f.slot3)


def derivation_space(T: TripleSystem, k: int) -> OperatorSpace:
    _check_k(k)
    parts = []
    for s in (0, 1):
        f = _forms(T, s)
        parts.append(_kernel(_matrix(_leibniz(f, k, T.delta) - f.outer)))
    return OperatorSpace("der", k, T.space, *parts)


def _projected(joint: Subspace, width: int) -> Subspace:
    if width == 0:
        return Subspace.zero(0)
    return joint.project(list(range(width)))


def _witness(main: np.ndarray, aux: np.ndarray, x, width: int):
    """Coordinates of auxiliary maps with ``aux @ y = -main @ x``."""
    rhs = -np.dot(main, np.array(x, dtype=object))
    y = solve(aux, rhs.tolist())
    if y is None:
        raise ArithmeticError("projected basis vector has no witness")
    return y


def quasiderivation_space(T: TripleSystem, k: int) -> OperatorSpace:
    _check_k(k)
    parts, witnesses = [], {}
    for s in (0, 1):
        f = _forms(T, s)
        main = _matrix(_leibniz(f, k, T.delta))
        aux = _matrix(-f.outer)
        joint = _kernel(np.concatenate([main, aux], axis=1))
        proj = _projected(joint, f.count)
        for idx, x in enumerate(proj.basis):
            witnesses[(s, idx)] = (HomMap.from_coords(T.space, s, _witness(main, aux, x, f.count)),)
        parts.append(proj)
    return OperatorSpace("qder", k, T.space, *parts, witnesses=witnesses)


def generalized_derivation_space(T: TripleSystem, k: int) -> OperatorSpace:
    _check_k(k)
    parts, witnesses = [], {}
    dk = T.delta ** k
    for s in (0, 1):
        f = _forms(T, s)
        main = _matrix(dk * f.slot1)
        aux = np.concatenate(
            [_matrix(dk * f.slot2), _matrix(dk * f.slot3), _matrix(-f.outer)], axis=1
        )
        b = f.count
        joint = _kernel(np.concatenate([main, aux], axis=1))
        proj = _projected(joint, b)
        for idx, x in enumerate(proj.basis):
            y = _witness(main, aux, x, b)
            witnesses[(s, idx)] = tuple(
                HomMap.from_coords(T.space, s, y[i * b:(i + 1) * b]) for i in range(3)
            )
        parts.append(proj)
    return OperatorSpace("gder", k, T.space, *parts, witnesses=witnesses)


def centroid(T: TripleSystem, k: int) -> OperatorSpace:
    _check_k(k)
    dk = T.delta ** k
    parts = []
    for s in (0, 1):
        f = _forms(T, s)
        mat = _rows(
            _matrix(dk * (f.slot1 - f.slot2)),
            _matrix(dk * (f.slot2 - f.slot3)),
            _matrix(dk * f.slot3 - f.outer),
        )
        parts.append(_kernel(mat))
    return OperatorSpace("centroid", k, T.space, *parts)


def quasicentroid(T: TripleSystem) -> OperatorSpace:
    parts = []
    for s in (0, 1):
        f = _forms(T, s)
        parts.append(_kernel(_matrix(f.outer - f.slot1)))
    return OperatorSpace("qc", None, T.space, *parts)


def central_derivations(T: TripleSystem) -> OperatorSpace:
    parts = []
    for s in (0, 1):
        f = _forms(T, s)
        parts.append(_kernel(_rows(_matrix(f.outer), _matrix(f.slot1))))
    return OperatorSpace("zder", None, T.space, *parts)


def center(T: TripleSystem) -> OperatorSpace:
    """Vectors a with [a, b, c] = 0 for all b, c."""
    parts = []
    for s in (0, 1):
        idx = T.space.indices(s)
        # columns: a in idx; rows: (b, c, l)
        mat = T.c[idx].reshape(len(idx), -1).T if idx else np.zeros((0, 0), dtype=object)
        parts.append(_kernel(mat) if idx else Subspace.zero(0))
    return OperatorSpace("center", None, T.space, *parts)


def operator_space(T: TripleSystem, kind: str, k: int = 0) -> OperatorSpace:
    builders = {
        "der": lambda: derivation_space(T, k),
        "qder": lambda: quasiderivation_space(T, k),
        "gder": lambda: generalized_derivation_space(T, k),
        "centroid": lambda: centroid(T, k),
        "qc": lambda: quasicentroid(T),
        "zder": lambda: central_derivations(T),
        "center": lambda: center(T),
    }
    if kind not in builders:
        raise ValueError(f"unknown space kind {kind!r}; expected one of {KINDS}")
    return builders[kind]()


def _check_k(k: int):
    if isinstance(k, bool) or not isinstance(k, int) or k < 0:
        raise ValueError(f"k must be a nonnegative integer, got {k!r}")


# ---------------------------------------------------------------------------
# pointwise checks

def _apply_forms(T: TripleSystem, D: HomMap):
    """The four tensors of ``_Forms`` for one concrete map."""
    c, M = T.c, D.matrix
    p = T.space.p
    a, b = np.ix_(p, p)
    return (
        contract("ma,mbcl->abcl", M, c),
        sign(D.degree * p)[:, None, None, None] * contract("mb,amcl->abcl", M, c),
        sign(D.degree * (a + b))[:, :, None, None] * contract("mc,abml->abcl", M, c),
        contract("abcm,lm->abcl", c, M),
    )


def satisfies_generalized(T: TripleSystem, k: int, D, D1, D2, D3) -> bool:
    """delta^k([Da,b,c] + sgn [a,D1 b,c] + sgn [a,b,D2 c]) = D3 [a,b,c] on all basis triples."""
    s1 = _apply_forms(T, D)[0]
    s2 = _apply_forms(T, D1)[1]
    s3 = _apply_forms(T, D2)[2]
    out = _apply_forms(T, D3)[3]
    return not np.any(T.delta ** k * (s1 + s2 + s3) - out != 0)


def verify_witnesses(T: TripleSystem, space: OperatorSpace) -> bool:
    """Re-check each basis map of a QDer/GDer space against its stored witnesses."""
    for s in (0, 1):
        for idx, D in enumerate(space.maps(s)):
            w = space.witnesses[(s, idx)]
            if space.kind == "qder":
                ok = satisfies_generalized(T, space.k, D, D, D, w[0])
            elif space.kind == "gder":
                ok = satisfies_generalized(T, space.k, D, *w)
            else:
                raise ValueError("only quasi- and generalized derivation spaces carry witnesses")
            if not ok:
                return False
    return True


def quasicentroid_identities(T: TripleSystem, D: HomMap) -> bool:
    """D[a,b,c] = [Da,b,c] = (-1)^{|D||a|}[a,Db,c] = (-1)^{|D|(|a|+|b|)}[a,b,Dc]."""
    s1, s2, s3, out = _apply_forms(T, D)
    return not (np.any(out != s1) or np.any(s1 != s2) or np.any(s2 != s3))


# ---------------------------------------------------------------------------
# structure theorems

@dataclass
class Claim:
    claim: str
    passed: bool
    counterexample: dict | None = None
    informational: bool = False

    def to_json(self) -> dict:
        out = {"claim": self.claim, "pass": self.passed}
        if self.informational:
            out["informational"] = True
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


@dataclass
class TheoremReport:
    system: str
    claims: list[Claim]
    dims: dict

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.claims if not c.informational)

    @property
    def failed(self) -> list[str]:
        return [c.claim for c in self.claims if not c.passed and not c.informational]

    def __getitem__(self, claim: str) -> Claim:
        for c in self.claims:
            if c.claim == claim:
                return c
        raise KeyError(claim)

    def to_json(self) -> dict:
        return {"system": self.system, "pass": self.ok, "dims": self.dims,
                "claims": [c.to_json() for c in self.claims]}


def _containment(name: str, big: OperatorSpace, small: OperatorSpace, informational=False) -> Claim:
    for s in (0, 1):
        for idx, v in enumerate(small.part(s).basis):
            if not big.part(s).contains_vector(v):
                return Claim(name, False, {"degree": s, "basis_index": idx}, informational)
    return Claim(name, True, informational=informational)


def _bracket_closure(name: str, A: OperatorSpace, B: OperatorSpace, target) -> Claim:
    """[A, B] lands in ``target`` (an OperatorSpace, or a callable on the commutator)."""
    test = target if callable(target) else target.contains_map
    for s in (0, 1):
        for i, D1 in enumerate(A.maps(s)):
            for t in (0, 1):
                for j, D2 in enumerate(B.maps(t)):
                    if not test(supercommutator(D1, D2)):
                        return Claim(name, False, {"left": [s, i], "right": [t, j]})
    return Claim(name, True)


def _maps_into(Z: OperatorSpace):
    def test(D: HomMap) -> bool:
        return all(Z.contains_vector(D.matrix[:, j]) for j in range(D.space.dim))

    return test


def verify_structure_theorems(T: TripleSystem) -> TheoremReport:
    claims: list[Claim] = []
    dims: dict = {}
    QC = quasicentroid(T)
    ZD = central_derivations(T)
    Z = center(T)
    per_k = {}
    for k in (0, 1):
        per_k[k] = {
            "der": derivation_space(T, k),
            "qder": quasiderivation_space(T, k),
            "gder": generalized_derivation_space(T, k),
            "centroid": centroid(T, k),
        }
    for sp in [*per_k[0].values(), *per_k[1].values(), QC, ZD, Z]:
        dims[sp.label()] = [sp.dim_even, sp.dim_odd]

    for k in (0, 1):
        Der, QDer, GDer, C = (per_k[k][x] for x in ("der", "qder", "gder", "centroid"))
        claims.append(_containment(f"ZDer in Der_{k}", Der, ZD))
        claims.append(_containment(f"Der_{k} in QDer_{k}", QDer, Der))
        claims.append(_containment(f"QDer_{k} in GDer_{k}", GDer, QDer))
        claims.append(Claim(f"QDer_{k} witnesses", verify_witnesses(T, QDer)))
        claims.append(Claim(f"GDer_{k} witnesses", verify_witnesses(T, GDer)))
        claims.append(_bracket_closure(f"[Der_{k}, ZDer] in ZDer", Der, ZD, ZD))
        claims.append(_bracket_closure(f"[QDer_{k}, QC] in QC", QDer, QC, QC))
        claims.append(_bracket_closure(f"[QC, QC] in QDer_{k}", QC, QC, QDer))
        claims.append(_containment(f"Centroid_{k} in QDer_{k}", QDer, C))
        claims.append(_bracket_closure(f"[Centroid_{k}, QC] maps into Z", C, QC, _maps_into(Z)))
        if Z.dim == 0:
            claims.append(_bracket_closure(
                f"[Centroid_{k}, QC] = 0", C, QC, lambda D: D.is_zero()))
        both = C.intersect(Der, kind="zder")
        same = both.same_as(ZD)
        claims.append(Claim(f"Centroid_{k} cap Der_{k} = ZDer", same,
                            None if same else {"dim_cap": [both.dim_even, both.dim_odd],
                                               "dim_zder": [ZD.dim_even, ZD.dim_odd]}))
        claims.append(_containment(f"QC in Centroid_{k}", C, QC, informational=True))
        claims.append(_containment(f"Centroid_{k} in QC", QC, C, informational=True))
    for k in (0, 1):
        for l in (0, 1):
            m = (k + l) % 2
            for kind in ("der", "qder", "gder", "centroid"):
                name = KIND_LABELS[kind]
                claims.append(_bracket_closure(
                    f"[{name}_{k}, {name}_{l}] in {name}_{m}",
                    per_k[k][kind], per_k[l][kind], per_k[m][kind]))
            claims.append(_bracket_closure(
                f"[Der_{k}, Centroid_{l}] in Centroid_{m}",
                per_k[k]["der"], per_k[l]["centroid"], per_k[m]["centroid"]))
    qc_ok = all(quasicentroid_identities(T, D) for s in (0, 1) for D in QC.maps(s))
    claims.append(Claim("QC satisfies all-slot identities", qc_ok, informational=True))
    return TheoremReport(T.name, claims, dims)
