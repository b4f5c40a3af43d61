"""Named example systems and a generator of small random valid systems."""

from __future__ import annotations

import json
import random
from importlib import resources

from .core import SuperSpace, TripleSystem, abelian, from_superalgebra, verify_axioms
from .linalg import zeros


def l2() -> TripleSystem:
    """Triple system of the 2-dim Lie algebra [x,y] = y (both even, delta = 1)."""
    bkt = zeros((2, 2, 2))
    bkt[0, 1, 1] = 1
    bkt[1, 0, 1] = -1
    return from_superalgebra([0, 0], 1, bkt, name="L2", basis=("x", "y"))


def s11() -> TripleSystem:
    """Lie superalgebra e even, f odd, [e,f] = f, [f,f] = 0."""
    bkt = zeros((2, 2, 2))
    bkt[0, 1, 1] = 1
    bkt[1, 0, 1] = -1
    return from_superalgebra([0, 1], 1, bkt, name="S11", basis=("e", "f"))


def anti3() -> TripleSystem:
    """A non-abelian delta = -1 system: e0 even, e1 and e2 odd."""
    c = zeros((3,) * 4)
    c[0, 2, 2, 0] = -1
    c[2, 0, 2, 0] = -1
    c[1, 2, 2, 1] = -1
    c[2, 1, 2, 1] = 1
    return TripleSystem(SuperSpace((0, 1, 1)), -1, c, name="anti3", basis=("e0", "e1", "e2"))


BUNDLED = {
    "abelian1": lambda: abelian([0], 1, "abelian1"),
    "abelian2": lambda: abelian([0, 1], 1, "abelian2"),
    "abelian3": lambda: abelian([0, 0, 1], -1, "abelian3"),
    "l2": l2,
    "s11": s11,
    "anti3": anti3,
}


def bundled_path(name: str):
    return resources.files("supertriple") / "data" / f"{name}.json"


def load_bundled(name: str) -> TripleSystem:
    from .io import system_from_dict

    with resources.as_file(bundled_path(name)) as p:
        return system_from_dict(json.loads(p.read_text()), where=name)


def random_superalgebra_system(
    rng: random.Random, dim: int, delta: int, density: float = 0.35
) -> TripleSystem:
    """Triple system of a random graded, delta-skew bracket table with entries in {-1,0,1}.

    Only the grading and skew symmetry of the binary table are imposed; the
    caller filters by ``verify_axioms``.
    """
    parity = [rng.randint(0, 1) for _ in range(dim)]
    bkt = zeros((dim,) * 3)
    for i in range(dim):
        for j in range(i, dim):
            s = -delta * (-1 if parity[i] * parity[j] else 1)
            for k in range(dim):
                if parity[k] != (parity[i] + parity[j]) % 2:
                    continue
                if rng.random() > density:
                    continue
                v = rng.choice((-1, 1))
                if i == j and s == -1:
                    continue
                bkt[i, j, k] = v
                bkt[j, i, k] = s * v
    return from_superalgebra(parity, delta, bkt, name=f"random{dim}")


def random_valid_systems(
    count: int, seed: int = 0, max_dim: int = 3, deltas=(1, -1), nonzero: bool = True,
    max_tries: int = 20000,
) -> list[TripleSystem]:
    """``count`` random systems of dim <= ``max_dim`` passing ``verify_axioms``.

    Deltas alternate so both signs are represented.
    """
    rng = random.Random(seed)
    out: list[TripleSystem] = []
    tries = 0
    while len(out) < count and tries < max_tries:
        delta = deltas[len(out) % len(deltas)]
        dim = rng.randint(1, max_dim)
        T = random_superalgebra_system(rng, dim, delta)
        tries += 1
        if nonzero and T.is_abelian():
            continue
        if verify_axioms(T).ok:
            out.append(TripleSystem(T.space, T.delta, T.c, name=f"random{len(out)}"))
    if len(out) < count:
        raise RuntimeError(f"only found {len(out)} valid random systems in {max_tries} tries")
    return out


def fixture_systems() -> list[TripleSystem]:
    """Every bundled valid system plus the derived ones used throughout the tests."""
    from .cohomology import adjoint_representation, semidirect_sum
    from .core import current_extension

    base = [load_bundled(name) for name in BUNDLED]
    L2 = load_bundled("l2")
    extra = [
        current_extension(L2, 1),
        semidirect_sum(L2, adjoint_representation(L2)),
        semidirect_sum(load_bundled("s11"), adjoint_representation(load_bundled("s11"))),
    ]
    return base + extra

