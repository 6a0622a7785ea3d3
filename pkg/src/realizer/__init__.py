"""Exact conversion between transfer matrices and state-space models,
with Kalman canonical decomposition and minimal realization."""

from .errors import (
    DimensionError,
    JsonFormatError,
    ParseError,
    PoleError,
    PropernessError,
    SingularMatrixError,
)
from .matrices import Matrix
from .ratfunc import Polynomial, RationalFunction, poly_gcd
from .tfparse import TransferMatrix, parse_transfer_matrix, print_transfer_matrix
from .statespace import (
    ImpulseRecord,
    StateSpace,
    char_poly,
    impulse_response,
    leverrier,
    similarity_transform,
    transfer_matrix,
)
from .realize import SisoRealization, realize_mimo, realize_siso
from .structure import (
    KalmanDecomposition,
    Subspace,
    complete_basis,
    controllability_matrix,
    controllable_space,
    dual,
    is_controllable,
    is_observable,
    kalman_decompose,
    minimal_realization,
    observability_matrix,
    observable_space,
    orthogonal_complement,
    rank_exact,
    rank_float,
    subspace_intersection,
)

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "ImpulseRecord",
    "JsonFormatError",
    "KalmanDecomposition",
    "Matrix",
    "ParseError",
    "PoleError",
    "Polynomial",
    "PropernessError",
    "RationalFunction",
    "SingularMatrixError",
    "SisoRealization",
    "StateSpace",
    "Subspace",
    "TransferMatrix",
    "char_poly",
    "complete_basis",
    "controllability_matrix",
    "controllable_space",
    "dual",
    "impulse_response",
    "is_controllable",
    "is_observable",
    "kalman_decompose",
    "leverrier",
    "minimal_realization",
    "observability_matrix",
    "observable_space",
    "orthogonal_complement",
    "parse_transfer_matrix",
    "poly_gcd",
    "print_transfer_matrix",
    "rank_exact",
    "rank_float",
    "realize_mimo",
    "realize_siso",
    "similarity_transform",
    "subspace_intersection",
    "transfer_matrix",
    "__version__",
]
