"""Exact comma-category machinery for modules over triangular matrix rings."""

from .linalg import FpMatrix, kernel_basis, quotient_space, rank, rref, solve

__all__ = [
    "FpMatrix",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "quotient_space",
]
