import random

import numpy as np
import pytest

import oracle
from supertriple.cohomology import (
    Representation,
    adjoint_representation,
    check_representation,
    coboundary,
    coboundary_images,
    cochain_space,
    cochain_violations,
    cohomology,
    cohomology_space,
    d3d1_expansion,
    grading_mask,
    lambda_combinations,
    semidirect_sum,
    verify_complex,
    zero_representation,
)
from supertriple.core import SuperSpace, abelian, verify_axioms
from supertriple.linalg import contract, zeros
from supertriple.systems import random_valid_systems

# (dim C, dim Z, dim B, dim H) for the adjoint representation, from the sympy oracle
FROZEN_H = {
    ("L2", 3, 0): (4, 3, 2, 1), ("L2", 3, 1): (0, 0, 0, 0),
    ("L2", 4, 0): (8, 6, 4, 2), ("L2", 4, 1): (0, 0, 0, 0),
    ("S11", 3, 0): (2, 1, 1, 0), ("S11", 3, 1): (2, 1, 1, 0),
    ("S11", 4, 0): (4, 2, 2, 0), ("S11", 4, 1): (4, 2, 2, 0),
    ("anti3", 3, 0): (12, 3, 2, 1), ("anti3", 3, 1): (12, 3, 1, 2),
    ("abelian1", 3, 0): (0, 0, 0, 0), ("abelian1", 3, 1): (0, 0, 0, 0),
    ("abelian2", 3, 0): (2, 2, 0, 2), ("abelian2", 4, 1): (4, 4, 0, 4),
}


def random_theta(T, module_parity, rng, lo=-2, hi=2):
    """Any graded bilinear theta, not necessarily a representation."""
    n, m = T.dim, len(module_parity)
    th = zeros((n, n, m, m))
    for i in range(n):
        for j in range(n):
            for v in range(m):
                for w in range(m):
                    if module_parity[v] == (module_parity[w] + T.parity[i] + T.parity[j]) % 2:
                        th[i, j, v, w] = rng.randint(lo, hi)
    return Representation(T, SuperSpace(tuple(module_parity)), th)


def random_graded(T, pV, n, degree, rng):
    shape = (T.dim,) * n + (len(pV),)
    F = np.array([rng.randint(-2, 2) for _ in range(int(np.prod(shape)))], dtype=object)
    return np.where(grading_mask(T.parity, pV, n, degree), F.reshape(shape), 0).astype(object)


def test_adjoint_D_is_delta_bracket(systems):
    for T in systems:
        D = adjoint_representation(T).D
        assert np.array_equal(D, T.delta * contract("abxl->ablx", T.c))


def test_adjoint_is_a_representation(systems):
    for T in systems:
        report = check_representation(T, adjoint_representation(T))
        assert report.ok, (T.name, report.failed)


def test_zero_representation_and_semidirect(L2):
    rep = zero_representation(L2, (0, 1))
    assert check_representation(L2, rep).ok
    S = semidirect_sum(L2, rep)
    assert S.dim == 4 and verify_axioms(S).ok


def test_semidirect_rejects_non_representations(L2):
    rep = random_theta(L2, (0,), random.Random(5), 1, 2)
    assert not check_representation(L2, rep).ok
    with pytest.raises(ValueError):
        semidirect_sum(L2, rep)


def test_theta_must_shift_parity(S11):
    th = zeros((2, 2, 2, 2))
    th[0, 0, 0, 1] = 1  # theta(e,e) maps odd to even
    with pytest.raises(ValueError):
        Representation(S11, S11.space, th)


@pytest.mark.parametrize("name", ["L2", "S11", "anti3"])
def test_d3d1_expansion_matches_direct_composition(systems, name):
    # holds for every graded bilinear theta, so the L_i carry all of d3 d1
    T = next(S for S in systems if S.name == name)
    rng = random.Random(11)
    for pV in [(0,), (0, 1), (1, 1, 0)]:
        rep = random_theta(T, pV, rng)
        for deg in (0, 1):
            F = random_graded(T, pV, 1, deg, rng)
            direct = coboundary(T, rep, 3, coboundary(T, rep, 1, F, deg), deg)
            assert np.array_equal(direct, d3d1_expansion(rep, F, deg))


def test_printed_coefficients_break_the_expansion_for_anti_systems(anti3):
    rng = random.Random(2)
    rep = random_theta(anti3, (0, 1), rng)
    lam = dict(lambda_combinations(rep))
    printed = lambda_combinations(rep, printed=True)
    lam["L3"], lam["L4"] = printed["L3*"], printed["L4*"]
    F = random_graded(anti3, (0, 1), 1, 0, rng)
    direct = coboundary(anti3, rep, 3, coboundary(anti3, rep, 1, F, 0), 0)
    assert not np.array_equal(direct, d3d1_expansion(rep, F, 0, lam))
    report = check_representation(anti3, adjoint_representation(anti3))
    assert report.ok
    assert not report["L3*"].passed and not report["L4*"].passed


def test_printed_and_corrected_agree_when_delta_is_one(S11):
    rep = random_theta(S11, (0, 1), random.Random(4))
    lam = lambda_combinations(rep)
    printed = lambda_combinations(rep, printed=True)
    for k in ("L1", "L2", "L3", "L4"):
        assert np.array_equal(lam[k], printed[k + "*"])


def test_complex_closes(systems):
    for T in systems:
        report = verify_complex(T, adjoint_representation(T))
        assert report.ok, (T.name, report.failed)
        for n in (1, 2):
            for deg in (0, 1):
                assert report[f"d{n}(C{n}) in C{n + 2}|deg{deg}"].passed


def test_fifth_order_images_are_cyclic_only_for_lie_type(L2, S11, anti3):
    for T in (L2, S11):
        for deg in (0, 1):
            assert verify_complex(T, adjoint_representation(T))[
                f"d3(C3) meets cochain constraints|deg{deg}"].passed
    notes = verify_complex(anti3, adjoint_representation(anti3)).notes
    assert notes["d3(C3) broken constraints|deg0"] == ["cyclic"]


def test_coboundary_against_loop_oracle(S11):
    rep = adjoint_representation(S11)
    c = oracle.nested(S11.c)
    naive = oracle.NaiveComplex(S11.parity, S11.delta, c, oracle.adjoint_theta(S11.parity, c),
                                S11.parity)
    rng = random.Random(0)
    for n in (1, 2, 3, 4):
        for deg in (0, 1):
            F = random_graded(S11, S11.parity, n, deg, rng)
            expect = np.array(naive.apply(n, F, deg), dtype=object)
            assert np.array_equal(coboundary(S11, rep, n, F, deg), expect)


def test_cochain_space_members_satisfy_constraints(anti3):
    rep = adjoint_representation(anti3)
    for n in (3, 4):
        space = cochain_space(anti3, rep, n, 1)
        assert space.dim > 0
        for F in space.tensors():
            assert cochain_violations(anti3, anti3.parity, F, 1) == []


def test_trivial_cochain_space():
    T = abelian([0], 1)
    assert cochain_space(T, adjoint_representation(T), 3, 0).dim == 0
    assert cohomology(T, adjoint_representation(T), 3)["total"]["dim_H"] == 0


def test_frozen_cohomology(systems):
    by_name = {T.name: T for T in systems}
    for (name, n, deg), dims in FROZEN_H.items():
        T = by_name[name]
        r = cohomology_space(T, adjoint_representation(T), n, deg)
        assert (r.dim_C, r.dim_Z, r.dim_B, r.dim_H) == dims, (name, n, deg)
        assert r.boundaries_closed
        assert len(r.representatives) == r.dim_H


def test_live_cohomology_oracle(L2, S11):
    for T in (L2, S11):
        c = oracle.nested(T.c)
        for n in (3, 4):
            for deg in (0, 1):
                r = cohomology_space(T, adjoint_representation(T), n, deg)
                assert (r.dim_C, r.dim_Z, r.dim_B, r.dim_H) == oracle.cohomology_dims(
                    T.parity, T.delta, c, n, deg)


def test_zero_module_cohomology_of_abelian_system():
    # with theta = 0 and [.,.,.] = 0 every coboundary vanishes, so H = C
    T = abelian([0, 1])
    rep = zero_representation(T, (0,))
    r = cohomology_space(T, rep, 3, 0)
    assert r.dim_B == 0 and r.dim_H == r.dim_C > 0


def test_images_of_random_systems_are_cocycles():
    for T in random_valid_systems(4, seed=8):
        rep = adjoint_representation(T)
        for deg in (0, 1):
            space = cochain_space(T, rep, 1, deg)
            if space.dim == 0:
                continue
            imgs = coboundary_images(T, rep, space)
            assert not np.any(coboundary(T, rep, 3, imgs, deg))


def test_unsupported_arity(L2):
    with pytest.raises(ValueError):
        cochain_space(L2, adjoint_representation(L2), 5, 0)
