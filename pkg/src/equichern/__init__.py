"""equichern: exact equivariant Chern-Weil calculus with a numerical oracle."""

__version__ = "0.1.0"

from .cartan import CartanElement, cartan_differential
from .graded import (Derivation, DegreeMismatchError, GradedElement, Generator,
                     UnknownGeneratorError, apply_derivation, graded_commutator,
                     substitute)
from .lie import LieAlgebraData, MatrixRep, check_rep, validate
from .scalars import QI, Scalar
from .weil import WeilAlgebra

__all__ = [
    "__version__",
    "CartanElement", "cartan_differential",
    "Derivation", "DegreeMismatchError", "GradedElement", "Generator",
    "UnknownGeneratorError", "apply_derivation", "graded_commutator", "substitute",
    "LieAlgebraData", "MatrixRep", "check_rep", "validate",
    "QI", "Scalar",
    "WeilAlgebra",
]
