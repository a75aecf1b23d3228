"""Exact evaluation of hyperpfaffians and checks of their invariant theory."""

from .circuit import (
    AffineSubstitution, Circuit, CircuitBuilder, build_permanent_circuit, evaluate, project, size,
    to_polynomial,
)
from .invariants import (
    HyperpfaffianInstance, classical_pfaffian, determinant, hyperpfaffian, hyperpfaffian_expand,
    permanent, permanent_naive,
)
from .kernel import Partition, Permutation, as_permutation, rectangle_dimension, sign
from .linalg import SquareMatrix
from .poly import Poly
from .projection import (
    build_projection_tensor, leaf_sign, symbolic_hyperpfaffian, verify_projection_theorem,
)
from .repcheck import (
    InvariantDimensionQuery, invariant_dimension_bruteforce, invariant_dimension_predicted,
    verify_proposition,
)
from .tensor import (
    SparseTensor, antisymmetrizer, apply_group_element, is_block_symmetric,
    pair_with_antisymmetrizer, random_special_linear, tensor_power,
)

__version__ = "0.1.0"

__all__ = [
    "AffineSubstitution",
    "Circuit",
    "CircuitBuilder",
    "build_permanent_circuit",
    "evaluate",
    "project",
    "size",
    "to_polynomial",
    "HyperpfaffianInstance",
    "classical_pfaffian",
    "determinant",
    "hyperpfaffian",
    "hyperpfaffian_expand",
    "permanent",
    "permanent_naive",
    "Partition",
    "Permutation",
    "as_permutation",
    "rectangle_dimension",
    "sign",
    "SquareMatrix",
    "Poly",
    "build_projection_tensor",
    "leaf_sign",
    "symbolic_hyperpfaffian",
    "verify_projection_theorem",
    "InvariantDimensionQuery",
    "invariant_dimension_bruteforce",
    "invariant_dimension_predicted",
    "verify_proposition",
    "SparseTensor",
    "antisymmetrizer",
    "apply_group_element",
    "is_block_symmetric",
    "pair_with_antisymmetrizer",
    "random_special_linear",
    "tensor_power",
]
