"""Exact computations with finite-dimensional associative algebras over F_p."""

from .algebra import StructureAlgebra, center, commutator_subspace, loewy_layers, peirce_cartan, radical, validate
from .constructions import bhz_center, tensor_product, trivial_extension
from .ffla import Subspace
from .presentation import parse_presentation, quotient_algebra

__all__ = [
    "StructureAlgebra",
    "Subspace",
    "bhz_center",
    "center",
    "commutator_subspace",
    "loewy_layers",
    "parse_presentation",
    "peirce_cartan",
    "quotient_algebra",
    "radical",
    "tensor_product",
    "trivial_extension",
    "validate",
]
