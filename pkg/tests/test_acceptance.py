"""The ten acceptance criteria, one test each.

``pytest tests/test_acceptance.py -v`` prints one PASS/FAIL line per criterion
(and a summary section at the end of the run).
"""

import random
import time
from fractions import Fraction

import numpy as np

import oracle
from conftest import BROKEN, FIXTURES, run_cli
from supertriple.cohomology import (
    adjoint_representation,
    check_representation,
    coboundary,
    cochain_space,
    cocycles,
    grading_mask,
    semidirect_sum,
    verify_complex,
)
from supertriple.core import abelian, current_extension, verify_axioms
from supertriple.deformation import (
    circle,
    deform_specialize,
    first_order_equivalence,
    infinitesimal_coboundary,
    is_nijenhuis,
    nijenhuis_infinitesimal,
    one_cochain_from_map,
    verify_trivial_witness,
)
from supertriple.io import load_system
from supertriple.linalg import zeros
from supertriple.spaces import KINDS, operator_space, verify_structure_theorems
from supertriple.systems import BUNDLED, load_bundled, random_valid_systems

LAMBDAS = [1, -1, 2, Fraction(1, 2)]


def bundled_valid():
    L2 = load_bundled("l2")
    return [load_bundled(n) for n in BUNDLED] + [
        current_extension(L2, 1),
        semidirect_sum(L2, adjoint_representation(L2)),
    ]


def test_criterion_01_axiom_suite():
    start = time.perf_counter()
    fixtures = bundled_valid()
    parities = {T.parity for T in fixtures if T.is_abelian()}
    assert {len(p) for p in parities} == {1, 2, 3}
    assert {T.delta for T in fixtures if T.is_abelian()} == {1, -1}
    for T in fixtures:
        assert verify_axioms(T).ok, T.name
    assert len(BROKEN) == 8
    for name, axiom in BROKEN.items():
        report = verify_axioms(load_system(FIXTURES / f"{name}.json"))
        assert report.failed and report.failed[0] == axiom, name
    assert time.perf_counter() - start < 5


def test_criterion_02_complex_certification():
    start = time.perf_counter()
    randoms = random_valid_systems(24, seed=2024, max_dim=3)
    assert {T.delta for T in randoms} == {1, -1}
    assert all(verify_axioms(T).ok and T.dim <= 3 for T in randoms)
    for T in bundled_valid() + randoms:
        report = verify_complex(T, adjoint_representation(T))
        for n in (1, 2):
            for deg in (0, 1):
                assert report[f"d{n + 2}d{n}|deg{deg}"].passed, (T.name, n, deg)
    assert time.perf_counter() - start < 60


def test_criterion_03_representation_implication():
    for T in bundled_valid() + random_valid_systems(8, seed=7):
        rep = adjoint_representation(T)
        report = check_representation(T, rep)
        assert report.ok, (T.name, report.failed)
        for name in ("3.1", "3.2", "3.3", "L1", "L2", "L3", "L4", "L5"):
            assert report[name].passed
        assert verify_axioms(semidirect_sum(T, rep)).ok


def test_criterion_04_structure_theorems():
    wanted = ["ZDer in Der_{k}", "Der_{k} in QDer_{k}", "QDer_{k} in GDer_{k}",
              "[Der_{k}, ZDer] in ZDer", "[Der_0, Centroid_{k}] in Centroid_{k}",
              "[QDer_{k}, QC] in QC", "[QC, QC] in QDer_{k}", "Centroid_{k} in QDer_{k}",
              "[Centroid_{k}, QC] maps into Z", "Centroid_{k} cap Der_{k} = ZDer"]
    for T in [load_bundled(n) for n in BUNDLED]:
        report = verify_structure_theorems(T)
        assert report.ok, (T.name, report.failed)
        trivial_center = report.dims["Center"] == [0, 0]
        for k in (0, 1):
            names = [w.format(k=k) for w in wanted]
            if trivial_center:
                names.append(f"[Centroid_{k}, QC] = 0")
            for name in names:
                claim = report[name]
                assert claim.passed and not claim.informational, (T.name, name)


def test_criterion_05_abelian_oracle():
    for p in range(0, 3):
        for q in range(0, 3):
            if p + q == 0:
                continue
            for delta in (1, -1):
                T = abelian([0] * p + [1] * q, delta)
                for kind in KINDS:
                    for k in (0, 1):
                        sp = operator_space(T, kind, k)
                        want = (p, q) if kind == "center" else (p * p + q * q, 2 * p * q)
                        assert (sp.dim_even, sp.dim_odd) == want, (p, q, kind, k)


def test_criterion_06_deformation_identity():
    rng = random.Random(606)
    for name in ("l2", "s11"):
        T = load_bundled(name)
        space = cochain_space(T, adjoint_representation(T), 3, 0)
        for _ in range(50):
            f1 = space.tensor([rng.randint(-4, 4) for _ in range(space.dim)])
            assert np.array_equal(circle(T, T.c, f1) + circle(T, f1, T.c),
                                  infinitesimal_coboundary(T, f1))


def test_criterion_07_nijenhuis_pipeline():
    start = time.perf_counter()
    T = load_bundled("l2")
    N = zeros((2, 2))
    N[1, 0] = 1
    assert is_nijenhuis(T, N).ok
    psi = nijenhuis_infinitesimal(T, N)
    for lam in LAMBDAS:
        assert verify_axioms(deform_specialize(T, psi, lam)).ok
        result = verify_trivial_witness(T, N, lam)
        assert result.passed and not result.singular
    assert time.perf_counter() - start < 1


def test_criterion_08_equivalence():
    T = load_bundled("l2")
    rep = adjoint_representation(T)
    rng = random.Random(808)
    Z = cocycles(T, rep, cochain_space(T, rep, 3, 0))
    C1 = cochain_space(T, rep, 1, 0)
    for _ in range(20):
        f1 = np.dot([rng.randint(-3, 3) for _ in range(Z.dim)], Z.vectors())
        f1 = np.asarray(f1, dtype=object).reshape((2,) * 4)
        phi = C1.tensor([rng.randint(-3, 3) for _ in range(C1.dim)])
        dphi = coboundary(T, rep, 1, phi, 0)
        result = first_order_equivalence(T, f1, f1 - dphi)
        assert result.cohomologous
        witness = coboundary(T, rep, 1, one_cochain_from_map(result.witness.matrix), 0)
        assert np.array_equal(witness, dphi)
    A = abelian([0, 1])
    cocycle = cochain_space(A, adjoint_representation(A), 3, 0).tensors()[0]
    assert np.any(cocycle)
    assert not first_order_equivalence(A, cocycle, zeros((2,) * 4)).cohomologous


def test_criterion_09_differential_consistency():
    rng = random.Random(909)
    for T in bundled_valid():
        rep = adjoint_representation(T)
        c = oracle.nested(T.c)
        naive = oracle.NaiveComplex(T.parity, T.delta, c, oracle.adjoint_theta(T.parity, c),
                                    T.parity)
        for n in (1, 2, 3, 4):
            for deg in (0, 1):
                shape = (T.dim,) * n + (T.dim,)
                F = np.array([rng.randint(-3, 3) for _ in range(int(np.prod(shape)))],
                             dtype=object).reshape(shape)
                F = np.where(grading_mask(T.parity, T.parity, n, deg), F, 0).astype(object)
                expect = np.array(naive.apply(n, F, deg), dtype=object)
                assert np.array_equal(coboundary(T, rep, n, F, deg), expect), (T.name, n, deg)


CLI_MATRIX = [
    (("verify", "l2"), 0),
    (("verify", "broken_skew_l2.json"), 1),
    (("verify", "malformed.json"), 2),
    (("verify", "duplicate_entry.json"), 2),
    (("cohomology", "abelian1", "--n", "3", "--adjoint"), 0),
    (("theorems", "s11"), 0),
    (("rep-check", "l2", "l2_bad_rep.json"), 1),
    (("deform", "check", "l2_noncocycle_deformation.json"), 1),
    (("deform", "equiv", "abelian2", "abelian2_cocycle.json", "zero2.json"), 1),
    (("nijenhuis", "check", "l2_nijenhuis.json"), 0),
    (("nijenhuis", "check", "l2_odd_map.json"), 2),
    (("frobnicate", "l2"), 2),
]


def test_criterion_10_cli_contract():
    assert len(CLI_MATRIX) == 12
    for args, code in CLI_MATRIX:
        assert run_cli(*args).returncode == code, args
    for args, _ in CLI_MATRIX[:2] + CLI_MATRIX[4:6] + CLI_MATRIX[9:10]:
        first = run_cli(*args, "--json").stdout
        assert first and first == run_cli(*args, "--json").stdout, args
