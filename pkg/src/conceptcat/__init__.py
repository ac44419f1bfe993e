"""Finite formal concept analysis with a mechanically checked taxonomy of
context morphisms, concept-lattice functors, adjunctions and dualities."""

from .context import Concept, Context, is_purified
from .errors import (
    ClassError,
    ConceptCatError,
    DimensionError,
    FalsificationError,
    LatticeError,
    NotPurifiedError,
    OwnershipError,
    ParseError,
    SizeLimitError,
)
from .lattice import (
    ConceptLattice,
    DoublyBasedLattice,
    build_concept_lattice,
    complete_context,
    dm_completion,
    is_reduced,
    purify,
    reduce,
    standard_context,
)
from .morphisms import MappingPair, classify
from .order import FiniteLattice, Poset

__all__ = [
    "ClassError",
    "Concept",
    "ConceptCatError",
    "ConceptLattice",
    "Context",
    "DimensionError",
    "DoublyBasedLattice",
    "FalsificationError",
    "FiniteLattice",
    "LatticeError",
    "MappingPair",
    "NotPurifiedError",
    "OwnershipError",
    "ParseError",
    "Poset",
    "SizeLimitError",
    "build_concept_lattice",
    "classify",
    "complete_context",
    "dm_completion",
    "is_purified",
    "is_reduced",
    "purify",
    "reduce",
    "standard_context",
]
