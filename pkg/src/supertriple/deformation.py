"""
Truncated formal deformations, first-order equivalence, rigidity, and
Nijenhuis operators with the deformations they induce.

Deformation terms are even trilinear maps stored like structure constants:
``f[i, j, k, l]`` is the coefficient of e_l in f(e_i, e_j, e_k).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cohomology import (
    adjoint_representation,
    coboundary,
    coboundary_images,
    cochain_space,
    cohomology,
)
from .core import (
    HomMap,
    TripleSystem,
    check_cyclic,
    check_grading,
    check_skew,
    verify_axioms,
)
from .linalg import (
    contract,
    format_rational,
    identity,
    is_zero,
    normalize,
    rank,
    sign,
    solve,
    to_object,
)


def _as_tensor(T: TripleSystem, f, what="trilinear map") -> np.ndarray:
    f = to_object(np.asarray(f))
    if f.shape != (T.dim,) * 4:
        raise ValueError(f"{what} must have shape {(T.dim,) * 4}, got {f.shape}")
    return f


def circle(T: TripleSystem, fi, fj) -> np.ndarray:
    """The signed composition f_i f_j, a 5-linear map ``[x1..x5, l]``.

    - f_i(x1,x2,f_j(x3,x4,x5)) + (-1)^{|x3|(|x1|+|x2|)} f_i(x3,f_j(x1,x2,x4),x5)
    + f_i(f_j(x1,x2,x3),x4,x5) + delta (-1)^{(|x1|+|x2|)(|x3|+|x4|)} f_i(x3,x4,f_j(x1,x2,x5))
    """
    fi = _as_tensor(T, fi)
    fj = _as_tensor(T, fj)
    p = T.space.p
    p1, p2, p3, p4, _ = np.ix_(p, p, p, p, p)

    def s(e):
        return sign(e)[..., None]

    return to_object(
        -contract("cdem,abml->abcdel", fj, fi)
        + s(p3 * (p1 + p2)) * contract("abdm,cmel->abcdel", fj, fi)
        + contract("abcm,mdel->abcdel", fj, fi)
        + T.delta * s((p1 + p2) * (p3 + p4)) * contract("abem,cdml->abcdel", fj, fi)
    )


def _first_nonzero(t) -> tuple[int, ...] | None:
    t = np.asarray(t)
    hits = np.argwhere(t != 0)
    return tuple(int(i) for i in hits[0]) if len(hits) else None


@dataclass(frozen=True, eq=False)
class FormalDeformation:
    """f_t = f_0 + f_1 t + ... + f_N t^N with f_0 the bracket of ``base``."""

    base: TripleSystem
    terms: tuple = ()

    def __post_init__(self):
        terms = tuple(_as_tensor(self.base, f, "deformation term") for f in self.terms)
        object.__setattr__(self, "terms", terms)

    @property
    def order(self) -> int:
        return len(self.terms)

    def term(self, i: int) -> np.ndarray:
        return self.base.c if i == 0 else self.terms[i - 1]


@dataclass
class Check:
    name: str
    passed: bool
    witness: tuple[int, ...] | None = None
    informational: bool = False

    def to_json(self) -> dict:
        out = {"check": self.name, "pass": self.passed}
        if self.informational:
            out["informational"] = True
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


@dataclass
class CheckReport:
    title: str
    checks: list[Check]
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    @property
    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed and not c.informational]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {"title": self.title, "pass": self.ok,
                "checks": [c.to_json() for c in self.checks], "notes": self.notes}


def term_conditions(T: TripleSystem, f, index: int | str = "") -> list[Check]:
    """Grading, delta-skew and cyclic conditions on a single trilinear term."""
    f = _as_tensor(T, f)
    out = []
    for label, fn in (("grading", lambda: check_grading(T.parity, f)),
                      ("skew", lambda: check_skew(T.parity, T.delta, f)),
                      ("cyclic", lambda: check_cyclic(T.parity, f))):
        r = fn()
        out.append(Check(f"f{index} {label}", r.passed, r.witness))
    return out


def infinitesimal_coboundary(T: TripleSystem, f1) -> np.ndarray:
    """d3 f1 for the adjoint representation (f1 even)."""
    return coboundary(T, adjoint_representation(T), 3, _as_tensor(T, f1), 0)


def check_deformation(fd: FormalDeformation) -> CheckReport:
    """Order-by-order deformation equations up to the truncation order."""
    T = fd.base
    checks = []
    for i, f in enumerate(fd.terms, start=1):
        checks.extend(term_conditions(T, f, i))
    for n in range(fd.order + 1):
        total = sum(circle(T, fd.term(i), fd.term(n - i)) for i in range(n + 1))
        w = _first_nonzero(total)
        checks.append(Check(f"order {n}", w is None, w))
    if fd.order >= 1:
        w = _first_nonzero(infinitesimal_coboundary(T, fd.terms[0]))
        checks.append(Check("d3 f1 = 0", w is None, w, informational=True))
    return CheckReport("deformation", checks, {"order": fd.order})


# ---------------------------------------------------------------------------
# first-order equivalence and rigidity

def one_cochain_from_map(M) -> np.ndarray:
    """1-cochain tensor ``F[a, v]`` of the map with matrix ``M[v, a]``."""
    return to_object(np.asarray(M)).T.copy()


@dataclass
class Equivalence:
    cohomologous: bool
    witness: HomMap | None = None

    def to_json(self) -> dict:
        from .io import matrix_to_json

        if not self.cohomologous:
            return {"cohomologous": False, "result": "not cohomologous"}
        return {"cohomologous": True, "witness": matrix_to_json(self.witness.matrix)}


def first_order_equivalence(T: TripleSystem, f1, f1p) -> Equivalence:
    """Find an even phi with d1 phi = f1 - f1', or report that none exists."""
    rep = adjoint_representation(T)
    f1 = _as_tensor(T, f1)
    f1p = _as_tensor(T, f1p)
    for name, f in (("f1", f1), ("f1'", f1p)):
        if not is_zero(coboundary(T, rep, 3, f, 0)):
            raise ValueError(f"{name} is not a 3-cocycle")
    space = cochain_space(T, rep, 1, 0)
    target = (f1 - f1p).reshape(-1)
    if space.dim == 0:
        ok = is_zero(target)
        return Equivalence(ok, HomMap(T.space, identity(T.dim) * 0, 0) if ok else None)
    images = coboundary_images(T, rep, space)
    mat = images.reshape(space.dim, -1).T
    coords = solve(mat, target.tolist())
    if coords is None:
        return Equivalence(False)
    F = space.tensor(coords)
    return Equivalence(True, HomMap(T.space, F.T, 0))


@dataclass
class Rigidity:
    dim_H3: int
    dim_H3_even: int
    dims: dict

    @property
    def rigid_sufficient(self) -> bool:
        return self.dim_H3 == 0

    def to_json(self) -> dict:
        return {
            "dim_H3": self.dim_H3,
            "dim_H3_even": self.dim_H3_even,
            "rigid_sufficient": self.rigid_sufficient,
            "note": "H3 = 0 is a sufficient condition for analytic rigidity, not a necessary one",
            "dims": self.dims,
        }


def rigidity_report(T: TripleSystem) -> Rigidity:
    res = cohomology(T, adjoint_representation(T), 3)
    parts = {f"degree {p.degree}": {"dim_C": p.dim_C, "dim_Z": p.dim_Z, "dim_B": p.dim_B,
                                    "dim_H": p.dim_H} for p in res["degrees"]}
    return Rigidity(res["total"]["dim_H"], res["degrees"][0].dim_H, parts)


# ---------------------------------------------------------------------------
# Nijenhuis operators

def _even_map(T: TripleSystem, N) -> HomMap:
    if isinstance(N, HomMap):
        if N.degree != 0:
            raise ValueError("Nijenhuis candidates must be even maps")
        return N
    try:
        return HomMap(T.space, np.asarray(N, dtype=object), 0)
    except ValueError as exc:
        raise ValueError(f"Nijenhuis candidates must be even maps: {exc}") from exc


def _leibniz_parts(T: TripleSystem, M):
    """[Na,b,c], [a,Nb,c], [a,b,Nc] for an even matrix ``M``."""
    c = T.c
    return (
        contract("ia,ibcl->abcl", M, c),
        contract("jb,ajcl->abcl", M, c),
        contract("kc,abkl->abcl", M, c),
    )


def is_nijenhuis(T: TripleSystem, N) -> CheckReport:
    N = _even_map(T, N)
    M, c = N.matrix, T.c
    triple = contract("ia,jb,kc,ijkl->abcl", M, M, M, c)
    s1, s2, s3 = _leibniz_parts(T, M)
    nn_ab = contract("ia,jb,ijcl->abcl", M, M, c)
    nn_bc = contract("jb,kc,ajkl->abcl", M, M, c)
    nn_ac = contract("ia,kc,ibkl->abcl", M, M, c)
    lhs = contract("abcm,lm->abcl", c, contract("ij,jk->ik", M, M))
    rhs = contract("lm,abcm->abcl", M, s1 + s2 + s3) - (nn_ab + nn_bc + nn_ac)
    w7 = _first_nonzero(triple)
    w10 = _first_nonzero(lhs - rhs)
    return CheckReport("nijenhuis", [
        Check("[Nx1,Nx2,Nx3] = 0", w7 is None, w7[:3] if w7 else None),
        Check("N^2 bracket identity", w10 is None, w10[:3] if w10 else None),
    ])


def nijenhuis_infinitesimal(T: TripleSystem, N) -> np.ndarray:
    """psi = d1 N for the adjoint representation, cross-checked against the
    expanded form [Nx1,x2,x3] + [x1,Nx2,x3] + [x1,x2,Nx3] - N[x1,x2,x3]."""
    N = _even_map(T, N)
    report = is_nijenhuis(T, N)
    if not report.ok:
        raise ValueError(f"not a Nijenhuis operator: {', '.join(report.failed)}")
    psi = coboundary(T, adjoint_representation(T), 1, one_cochain_from_map(N.matrix), 0)
    s1, s2, s3 = _leibniz_parts(T, N.matrix)
    direct = s1 + s2 + s3 - contract("abcm,lm->abcl", T.c, N.matrix)
    if np.any(psi != direct):
        raise ArithmeticError("d1 N disagrees with the expanded form")
    return psi


def deform_specialize(T: TripleSystem, psi, lam) -> TripleSystem:
    """The system with bracket [x1,x2,x3] + lam psi(x1,x2,x3)."""
    psi = _as_tensor(T, psi)
    lam = normalize(Fraction(lam))
    c = to_object(T.c + lam * psi)
    c = np.vectorize(normalize, otypes=[object])(c) if c.size else c
    return T.with_constants(c, name=f"{T.name}_lambda={lam}" if T.name else "")


@dataclass
class DeformationPrediction:
    psi_is_structure: bool
    psi_is_cocycle: bool

    @property
    def valid_for_all_lambda(self) -> bool:
        return self.psi_is_structure and self.psi_is_cocycle

    def to_json(self) -> dict:
        return {"psi_is_structure": self.psi_is_structure,
                "psi_is_cocycle": self.psi_is_cocycle,
                "predicted_valid": self.valid_for_all_lambda}


def predict_deformation(T: TripleSystem, psi) -> DeformationPrediction:
    """The two conditions under which every T_lambda is a valid system."""
    psi = _as_tensor(T, psi)
    structure = verify_axioms(T.with_constants(psi)).ok
    cocycle = is_zero(infinitesimal_coboundary(T, psi))
    return DeformationPrediction(structure, cocycle)


def check_specializations(T: TripleSystem, psi, lambdas) -> CheckReport:
    """verify_axioms on each T_lambda, plus agreement with the prediction.

    The prediction concerns every lambda at once; a single lambda can be a root
    of the obstruction even when the prediction is negative, so agreement means
    predicted-valid exactly when every tested lambda passes.
    """
    pred = predict_deformation(T, psi)
    checks = []
    for lam in lambdas:
        ok = verify_axioms(deform_specialize(T, psi, lam)).ok
        checks.append(Check(f"T_lambda valid at lambda={format_rational(lam)}", ok,
                            informational=not pred.valid_for_all_lambda))
    all_pass = all(ch.passed for ch in checks)
    checks.append(Check("prediction agrees", all_pass == pred.valid_for_all_lambda))
    return CheckReport("specializations", checks, {"prediction": pred.to_json()})


@dataclass
class TrivialityResult:
    lam: Fraction | int
    singular: bool
    passed: bool
    witness: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"lambda": format_rational(self.lam), "singular": self.singular, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = list(self.witness)
        return out


def verify_trivial_witness(T: TripleSystem, N, lam) -> TrivialityResult:
    """phi (x + lam psi)(x1,x2,x3) = [phi x1, phi x2, phi x3] with phi = id + lam N."""
    N = _even_map(T, N)
    lam = normalize(Fraction(lam))
    phi = to_object(identity(T.dim) + lam * N.matrix)
    if rank(phi) < T.dim:
        return TrivialityResult(lam, True, False)
    psi = nijenhuis_infinitesimal(T, N)
    lhs = contract("lm,abcm->abcl", phi, to_object(T.c + lam * psi))
    rhs = contract("ia,jb,kc,ijkl->abcl", phi, phi, phi, T.c)
    w = _first_nonzero(lhs - rhs)
    return TrivialityResult(lam, False, w is None, w[:3] if w else None)
