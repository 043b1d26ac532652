"""cdgalab: exact cohomology engine for finite CDGAs over cyclotomic fields.

Scalars are exact elements of Q(zeta_n); the engine computes cohomology
tables, invariant subcomplexes of cyclic actions, triple-Massey non-formality
obstructions, symplectic and hard-Lefschetz checks, and Betti bookkeeping for
resolutions, plus a small session language and CLI driving all of it.
"""

from ._backend import backend_name
from .field import CycloField, FieldElement, Rational, cyclotomic_polynomial, format_scalar, make_field
from .algebra import (Algebra, AlgebraMap, Conjugation, DGA, Differential,
                      GeneratorSpec, GradedElement, apply_d, apply_map,
                      check_d_squared, format_element, identity_map, wedge)
from .linalg import Matrix, Subspace, kernel_basis, membership, quotient_basis, rref, solve
from .homology import (CochainComplex, CohomologyClass, CohomologyTable,
                       cohomology, top_scalar)
from .action import (GroupAction, invariant_cohomology, invariant_complex,
                     validate_action)
from .formality import (FormalityReport, MasseyResult, ObstructionInput,
                        ObstructionInputError, ObstructionResult,
                        formality_verdict, massey_triple, obstruction)
from .symplectic import (LefschetzReport, SymplecticCandidate,
                         exactness_witness_check, is_symplectic, lefschetz)
from .topology import (BettiVector, IncidenceGraph, betti_p1_bundle,
                       betti_projective, betti_resolution, betti_union)
from . import dsl

__version__ = "0.1.0"

__all__ = [
    "backend_name", "CycloField", "FieldElement", "Rational",
    "cyclotomic_polynomial", "format_scalar", "make_field",
    "Algebra", "AlgebraMap", "Conjugation", "DGA", "Differential",
    "GeneratorSpec", "GradedElement", "apply_d", "apply_map",
    "check_d_squared", "format_element", "identity_map", "wedge",
    "Matrix", "Subspace", "kernel_basis", "membership", "quotient_basis",
    "rref", "solve",
    "CochainComplex", "CohomologyClass", "CohomologyTable", "cohomology",
    "top_scalar",
    "GroupAction", "invariant_cohomology", "invariant_complex",
    "validate_action",
    "FormalityReport", "MasseyResult", "ObstructionInput",
    "ObstructionInputError", "ObstructionResult", "formality_verdict",
    "massey_triple", "obstruction",
    "LefschetzReport", "SymplecticCandidate", "exactness_witness_check",
    "is_symplectic", "lefschetz",
    "BettiVector", "IncidenceGraph", "betti_p1_bundle", "betti_projective",
    "betti_resolution", "betti_union",
    "dsl",
]
