"""Exact scalar, matrix and polynomial arithmetic over Q(i)."""

from .io import dump_matrix, load_matrix, matrix_from_json, matrix_to_json, parse_matrix
from .linalg import (
    char_poly,
    column_basis,
    det,
    eval_poly,
    is_nilpotent,
    mat_inverse,
    nilpotency_index,
    nullspace,
    rank,
    rank_factorization,
    rref,
)
from .matrix import Matrix, identity, mat_add, mat_mul, mat_scale, mat_sub, zero
from .poly import Polynomial, crt_interpolant, multiplicity, poly_divrem, poly_ext_gcd, poly_gcd
from .scalar import I, ONE, ZERO, Scalar

__all__ = [
    "I",
    "ONE",
    "ZERO",
    "Matrix",
    "Polynomial",
    "Scalar",
    "char_poly",
    "column_basis",
    "crt_interpolant",
    "det",
    "dump_matrix",
    "eval_poly",
    "identity",
    "is_nilpotent",
    "load_matrix",
    "mat_add",
    "mat_inverse",
    "mat_mul",
    "mat_scale",
    "mat_sub",
    "matrix_from_json",
    "matrix_to_json",
    "multiplicity",
    "nilpotency_index",
    "nullspace",
    "parse_matrix",
    "poly_divrem",
    "poly_ext_gcd",
    "poly_gcd",
    "rank",
    "rank_factorization",
    "rref",
    "zero",
]
