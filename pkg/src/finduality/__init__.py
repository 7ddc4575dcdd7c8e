"""Finite Tarski and Thomason duality, the left adjoint L : CSL -> CABA, and
the functor H = L U, with exhaustive checkers for small instances."""

from .caba import Caba, CabaHom, validate_complete_hom
from .csl import CslHom, CslLattice, validate_csl, validate_csl_hom
from .errors import (
    AmbientMismatch,
    BoundExceeded,
    ConstructionMismatch,
    FinDualityError,
    SchemaError,
    ValidationError,
)
from .finset import FinMap, FinSet
from .modal import HAlgebra, KripkeFrame, ModalAlgebra, PCoalgebra, validate_modal_algebra

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatch",
    "BoundExceeded",
    "Caba",
    "CabaHom",
    "ConstructionMismatch",
    "CslHom",
    "CslLattice",
    "FinDualityError",
    "FinMap",
    "FinSet",
    "HAlgebra",
    "KripkeFrame",
    "ModalAlgebra",
    "PCoalgebra",
    "SchemaError",
    "ValidationError",
    "validate_complete_hom",
    "validate_csl",
    "validate_csl_hom",
    "validate_modal_algebra",
]
