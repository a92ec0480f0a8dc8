"""Multiset positioning codes.

Build vector sum packings and d-dimensional grid colourings in which every
``m**d`` window has a distinct multiset of colours, and recover a window's
corner from its multiset in a constant number of arithmetic operations.
"""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    CapExceededError,
    ColourOverflowError,
    FileFormatError,
    GridCodeError,
    InconsistentTotalError,
    InstanceTooLargeError,
    NoSuchWindowError,
    ParameterError,
)
from .grid import GridColouring, build_grid, colour_multiset, localize  # noqa: E402
from .packing import PackingMatrix, build_matrix, decode_vector, window_sum  # noqa: E402
from .params import CodeParams, bound_check, derive_params  # noqa: E402
from .profiles import block_is_truncated, decode_T, decode_zero, dual, profile_T, profile_zero  # noqa: E402
from .verify import VerificationReport, oracle_localize, verify_grid_uniqueness  # noqa: E402

__all__ = [
    "CapExceededError", "ColourOverflowError", "FileFormatError", "GridCodeError",
    "InconsistentTotalError", "InstanceTooLargeError", "NoSuchWindowError", "ParameterError",
    "GridColouring", "build_grid", "colour_multiset", "localize",
    "PackingMatrix", "build_matrix", "decode_vector", "window_sum",
    "CodeParams", "bound_check", "derive_params",
    "block_is_truncated", "decode_T", "decode_zero", "dual", "profile_T", "profile_zero",
    "VerificationReport", "oracle_localize", "verify_grid_uniqueness",
]
