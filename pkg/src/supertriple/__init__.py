"""Finite-dimensional delta-Jordan Lie supertriple systems over the rationals."""

from .cohomology import (
    Representation,
    adjoint_representation,
    check_representation,
    coboundary,
    cochain_space,
    cohomology,
    cohomology_space,
    semidirect_sum,
    verify_complex,
    zero_representation,
)
from .core import (
    HomMap,
    SuperSpace,
    TripleSystem,
    abelian,
    current_extension,
    from_superalgebra,
    supercommutator,
    verify_axioms,
)
from .deformation import (
    FormalDeformation,
    check_deformation,
    circle,
    deform_specialize,
    first_order_equivalence,
    is_nijenhuis,
    nijenhuis_infinitesimal,
    predict_deformation,
    rigidity_report,
    verify_trivial_witness,
)
from .io import InputError, load_system
from .spaces import operator_space, verify_structure_theorems
from .systems import load_bundled

__all__ = [
    "FormalDeformation",
    "HomMap",
    "InputError",
    "Representation",
    "SuperSpace",
    "TripleSystem",
    "abelian",
    "adjoint_representation",
    "check_deformation",
    "check_representation",
    "circle",
    "coboundary",
    "cochain_space",
    "cohomology",
    "cohomology_space",
    "current_extension",
    "deform_specialize",
    "first_order_equivalence",
    "from_superalgebra",
    "is_nijenhuis",
    "load_bundled",
    "load_system",
    "nijenhuis_infinitesimal",
    "operator_space",
    "predict_deformation",
    "rigidity_report",
    "semidirect_sum",
    "supercommutator",
    "verify_axioms",
    "verify_complex",
    "verify_structure_theorems",
    "verify_trivial_witness",
    "zero_representation",
]
