"""Exact canonical bases for tensor products of highest weight modules of
symmetric quantum groups."""

from .cartan import CartanData, CartanError, from_graph, from_matrix
from .qarith import LaurentInt, RatQ, qbinom, qfact, qint
from .verma import DepthError, Gen, HighestWeightModule, ModuleVector
from .tensor import TensorModule, TypeI, TypeII
from .involution import bar_vector, bar_matrix
from .canon import CanonicalBasis, Certificate, canonical_basis, certify_basis, oracle_basis

__version__ = "0.1.0"

__all__ = [
    "CartanData",
    "CartanError",
    "from_graph",
    "from_matrix",
    "LaurentInt",
    "RatQ",
    "qint",
    "qfact",
    "qbinom",
    "DepthError",
    "Gen",
    "HighestWeightModule",
    "ModuleVector",
    "TensorModule",
    "TypeI",
    "TypeII",
    "bar_vector",
    "bar_matrix",
    "CanonicalBasis",
    "Certificate",
    "canonical_basis",
    "certify_basis",
    "oracle_basis",
]
