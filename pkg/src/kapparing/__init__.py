"""Exact calculus of kappa classes on moduli of curves of compact type."""

from .kappa import KappaPoly, bracket_class, faber_pushforward, psi_pushforward
from .linalg import RationalMatrix, SingularMatrixError
from .partitions import Partition, enumerate_bounded, enumerate_P_delta, enumerate_partitions
from .relations import matrix_L0, matrix_L_via_series, matrix_M, matrix_X, matrix_Y0
from .ring import RingContext, dimension, is_zero, reduce
from .series import F_series

__all__ = [
    "KappaPoly",
    "Partition",
    "RationalMatrix",
    "RingContext",
    "SingularMatrixError",
    "F_series",
    "bracket_class",
    "dimension",
    "enumerate_P_delta",
    "enumerate_bounded",
    "enumerate_partitions",
    "faber_pushforward",
    "is_zero",
    "matrix_L0",
    "matrix_L_via_series",
    "matrix_M",
    "matrix_X",
    "matrix_Y0",
    "psi_pushforward",
    "reduce",
]
