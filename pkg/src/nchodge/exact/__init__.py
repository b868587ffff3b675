"""Exact linear algebra over Q, Q(u) and Laurent rings."""

from .birkhoff import Birkhoff, birkhoff_factorize, exponents_by_sections, laurent_matrix
from .jordan import block_sizes_from_ranks, jordan_block, jordan_nilpotent, rational_spectrum
from .laurent import LaurentPoly, laurent1
from .matrix import Matrix
from .parse import parse_laurent, parse_rational_function
from .poly import Poly, RatFunc

__all__ = [
    "Birkhoff", "birkhoff_factorize", "exponents_by_sections", "laurent_matrix",
    "block_sizes_from_ranks", "jordan_block", "jordan_nilpotent", "rational_spectrum",
    "LaurentPoly", "laurent1", "Matrix", "parse_laurent", "parse_rational_function",
    "Poly", "RatFunc",
]
