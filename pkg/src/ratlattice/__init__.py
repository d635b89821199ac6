"""Cubic-lattice stick embeddings of rational links with exactly four z-sticks."""

from .circuit import ConstructionError, RegularCircuit, build_circuit, check_regular
from .invariants import (
    Diagram,
    NonRegularProjection,
    bracket,
    bracket_naive,
    component_count,
    determinant,
    normalized_jones,
    project,
    reference_diagram,
)
from .lattice import LatticeLink, StructuralError, canonicalize, stick_census, validate_embedding
from .laurent import LaurentPoly
from .lift import LiftedLink, build_lattice_link, build_stages
from .tangle import (
    ConwayWord,
    DomainError,
    PillowForm,
    TangleFraction,
    evaluate_conway,
    expand_fraction,
    pillow_of_word,
    word_from_pillow,
)

kauffman_bracket = bracket

__all__ = [
    "ConstructionError",
    "ConwayWord",
    "Diagram",
    "DomainError",
    "LatticeLink",
    "LaurentPoly",
    "LiftedLink",
    "NonRegularProjection",
    "PillowForm",
    "RegularCircuit",
    "StructuralError",
    "TangleFraction",
    "bracket",
    "bracket_naive",
    "build_circuit",
    "build_lattice_link",
    "build_stages",
    "canonicalize",
    "check_regular",
    "component_count",
    "determinant",
    "evaluate_conway",
    "expand_fraction",
    "kauffman_bracket",
    "normalized_jones",
    "pillow_of_word",
    "project",
    "reference_diagram",
    "stick_census",
    "validate_embedding",
    "word_from_pillow",
]
