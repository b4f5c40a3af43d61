import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from supertriple.core import HomMap, SuperSpace, TripleSystem, abelian, supercommutator, verify_axioms
from supertriple.linalg import zeros
from supertriple.spaces import (
    KINDS,
    center,
    centroid,
    derivation_space,
    operator_space,
    quasicentroid,
    quasiderivation_space,
    verify_structure_theorems,
    verify_witnesses,
)

# (even, odd) dimensions from the sympy oracle in tests/oracle.py
FROZEN = {
    "L2": {"der": (2, 0), "qder": (3, 0), "gder": (4, 0), "centroid": (1, 0),
           "qc": (1, 0), "zder": (0, 0), "center": (0, 0)},
    "S11": {"der": (1, 1), "qder": (2, 1), "gder": (2, 2), "centroid": (1, 0),
            "qc": (1, 0), "zder": (0, 0), "center": (0, 0)},
    "anti3": {"der0": (3, 3), "der1": (2, 1), "qder": (4, 3), "gder": (4, 3),
              "centroid0": (1, 0), "centroid1": (0, 0), "qc": (1, 0), "zder": (0, 0),
              "center": (0, 0)},
    "L2[t]/t^2": {"der": (5, 0), "qder": (7, 0), "gder": (9, 0), "centroid": (2, 0),
                  "qc": (2, 0), "zder": (0, 0), "center": (0, 0)},
    "L2+V": {"der": (5, 0), "qder": (7, 0), "gder": (9, 0), "centroid": (2, 0),
             "qc": (2, 0), "zder": (0, 0), "center": (0, 0)},
    "S11+V": {"der": (3, 2), "qder": (5, 2), "gder": (5, 4), "centroid": (2, 0),
              "qc": (2, 0), "zder": (0, 0), "center": (0, 0)},
}


def _expected(table, kind, k):
    return table.get(f"{kind}{k}", table.get(kind))


def _dims(T, kind, k):
    sp = operator_space(T, kind, k)
    return sp.dim_even, sp.dim_odd


def test_frozen_dimensions(systems):
    by_name = {T.name: T for T in systems}
    for name, table in FROZEN.items():
        T = by_name[name]
        for kind in KINDS:
            for k in (0, 1):
                assert _dims(T, kind, k) == _expected(table, kind, k), (name, kind, k)


@pytest.mark.parametrize("name", ["L2", "S11", "anti3"])
def test_live_oracle_agreement(systems, name):
    T = next(S for S in systems if S.name == name)
    c = oracle.nested(T.c)
    for kind in KINDS:
        for k in (0, 1):
            assert _dims(T, kind, k) == oracle.operator_space_dims(T.parity, T.delta, c, kind, k)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 3), st.integers(0, 3), st.sampled_from((1, -1)))
def test_abelian_closed_forms(p, q, delta):
    if p + q == 0:
        return
    T = abelian([0] * p + [1] * q, delta)
    full = (p * p + q * q, 2 * p * q)
    for kind in KINDS:
        for k in (0, 1):
            expect = (p, q) if kind == "center" else full
            assert _dims(T, kind, k) == expect


def test_derivations_satisfy_leibniz(L2):
    x, y = np.eye(2, dtype=object)
    for D in derivation_space(L2, 0).maps(0):
        for a in (x, y):
            for b in (x, y):
                for c in (x, y):
                    from supertriple.core import bracket

                    lhs = D(bracket(L2, a, b, c))
                    rhs = (bracket(L2, D(a), b, c) + bracket(L2, a, D(b), c)
                           + bracket(L2, a, b, D(c)))
                    assert np.array_equal(lhs, rhs)


def test_witnesses_recorded(systems):
    for T in systems:
        for k in (0, 1):
            assert verify_witnesses(T, quasiderivation_space(T, k))


def test_structure_theorems_on_fixtures(systems):
    for T in systems:
        report = verify_structure_theorems(T)
        assert report.ok, (T.name, report.failed)


def test_delta_period(anti3):
    # delta^k only depends on k mod 2
    for k in (0, 1):
        assert derivation_space(anti3, k).same_as(derivation_space(anti3, k + 2))
    with pytest.raises(ValueError):
        derivation_space(anti3, -1)


def test_center_and_centroid_of_abelian_pieces():
    T = abelian([0, 0, 1], -1)
    assert center(T).dim == 3
    assert centroid(T, 1).dim_even == 5


def _counterexample_system():
    # e0 odd, e1 and e2 even; [e0,e2,e2] = e0 and e1 spans the center
    c = zeros((3,) * 4)
    c[0, 2, 2, 0] = 1
    c[2, 0, 2, 0] = -1
    return TripleSystem(SuperSpace((1, 0, 0)), 1, c, name="qc-counterexample")


def test_quasiderivation_quasicentroid_bracket_can_leave_quasicentroid():
    T = _counterexample_system()
    assert verify_axioms(T).ok
    V = T.space
    D1 = HomMap(V, [[0, 0, 0], [1, 0, 0], [0, 0, 0]], 1)  # e0 -> e1
    D2 = HomMap(V, np.diag([1, 0, 1]), 0)
    QC = quasicentroid(T)
    assert quasiderivation_space(T, 0).contains_map(D1)
    assert QC.contains_map(D2)
    comm = supercommutator(D1, D2)
    assert np.array_equal(comm.matrix, D1.matrix)
    assert not QC.contains_map(comm)
    # the failing identity, by hand: D1[e0,e2,e2] = e1 while [D1 e0, e2, e2] = 0
    assert list(comm.matrix[:, 0]) == [0, 1, 0]
    assert not np.any(T.c[1])
    report = verify_structure_theorems(T)
    assert report.failed == ["[QDer_0, QC] in QC", "[QDer_1, QC] in QC"]


def test_unknown_kind():
    with pytest.raises(ValueError):
        operator_space(abelian([0]), "nope")
