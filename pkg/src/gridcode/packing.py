"""Recursive vector sum packing and its constant-time decoder.

The packing is a ``b x n`` matrix whose columns are vectors in
``[0, 2*s_p]**b``; the sums of ``m`` cyclically consecutive columns are
pairwise distinct.  Row ``b-1`` is a profile, the rows above are copies of
the ``b-1`` matrix, some with their first column dropped.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import NoSuchWindowError, ParameterError
from .params import t_sequence
from .profiles import block_is_truncated, decode_T, decode_zero, profile_T, profile_zero


def storage_dtype(s_p: int, m: int) -> np.dtype:
    top = 2 * m * s_p
    if top <= 0xFF:
        return np.dtype(np.uint8)
    if top <= 0xFFFF:
        return np.dtype(np.uint16)
    return np.dtype(np.uint32)


def block_order(s_p: int, m: int) -> list[int]:
    """Dual values along the bottom row: even ascending, then odd descending."""
    top = 2 * m * s_p
    return list(range(0, top + 1, 2)) + list(range(top - 1, 0, -2))


@dataclass(frozen=True, eq=False)
class PackingMatrix:
    """Columns are the packing vectors; ``rows[l]`` is coordinate ``l``."""

    rows: np.ndarray
    m: int
    s_p: int | None = None

    def __post_init__(self):
        rows = np.atleast_2d(np.asarray(self.rows))
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)

    @property
    def b(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def column(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.rows[:, i % self.n])

    def __eq__(self, other):
        if not isinstance(other, PackingMatrix):
            return NotImplemented
        return self.m == other.m and np.array_equal(self.rows, other.rows)

    def __repr__(self):
        return f"PackingMatrix(b={self.b}, n={self.n}, m={self.m}, s_p={self.s_p})"


@lru_cache(maxsize=32)
def _build_rows(s_p: int, m: int, b: int) -> tuple[tuple[int, ...], ...]:
    if b == 1:
        return (profile_zero(s_p, m),)
    T = t_sequence(s_p, m, b)
    bottom = profile_T(s_p, m, T[b - 1])
    sub = _build_rows(s_p, m, b - 1)
    top: list[list[int]] = [[] for _ in range(b - 1)]
    for v in block_order(s_p, m):
        start = 1 if block_is_truncated(v, s_p) else 0
        for row, sub_row in zip(top, sub):
            row.extend(sub_row[start:])
    width = m * T[b]
    if len(bottom) != width or any(len(row) != width for row in top):
        raise AssertionError(
            f"width bookkeeping failed for (s_p={s_p}, m={m}, b={b}): "
            f"expected {width}, got {[len(r) for r in top]} over {len(bottom)}"
        )
    return tuple(tuple(row) for row in top) + (bottom,)


def build_matrix(s_p: int, m: int, b: int) -> PackingMatrix:
    """Build the ``b``-row packing matrix of width ``m * T_b``."""
    if b < 1:
        raise ParameterError(f"vector dimension b must be >= 1, got {b}")
    rows = _build_rows(s_p, m, b)
    return PackingMatrix(np.array(rows, dtype=storage_dtype(s_p, m)), m, s_p)


def window_sum(M: PackingMatrix, i: int) -> tuple[int, ...]:
    """Coordinatewise sum of columns ``i .. i+m-1`` (cyclic)."""
    n = M.n
    i %= n
    idx = [(i + j) % n for j in range(M.m)]
    return tuple(int(v) for v in M.rows[:, idx].sum(axis=1, dtype=np.int64))


def window_sums(M: PackingMatrix) -> np.ndarray:
    """All ``n`` window sums as a ``(n, b)`` int64 array, row ``i`` for start ``i``."""
    rows = M.rows.astype(np.int64)
    ext = np.concatenate([rows, rows[:, : M.m - 1]], axis=1) if M.m > 1 else rows
    csum = np.concatenate([np.zeros((M.b, 1), np.int64), np.cumsum(ext, axis=1)], axis=1)
    # cyclic extension may be shorter than m when n < m - 1
    if ext.shape[1] < M.n + M.m - 1:
        return np.array([window_sum(M, i) for i in range(M.n)], dtype=np.int64).reshape(M.n, M.b)
    return (csum[:, M.m : M.m + M.n] - csum[:, : M.n]).T


def decode_vector(
    x: Sequence[int],
    s_p: int,
    m: int,
    b: int,
    truncated: bool = False,
    T: Sequence[int] | None = None,
    verify: PackingMatrix | None = None,
) -> int:
    """Start index of the window whose column sum is ``x``.

    Walks the recursion from the bottom row up: each level contributes the
    first index of its dual value, minus one when the enclosing block lost
    its first column.  ``T`` may be supplied to skip recomputing the
    T-sequence.  With ``verify`` set to the packing matrix, the answer is
    re-checked with one :func:`window_sum`.
    """
    if len(x) != b:
        raise NoSuchWindowError(f"expected a {b}-vector, got {len(x)} components")
    if T is None:
        T = t_sequence(s_p, m, b)
    idx = 0
    trunc = truncated
    for level in range(b - 1, 0, -1):
        v = x[level]
        idx += decode_T(v, s_p, m, T[level]) - trunc
        trunc = block_is_truncated(v, s_p)
    idx += decode_zero(x[0], s_p, m) - trunc

    if verify is not None:
        if not 0 <= idx < verify.n or window_sum(verify, idx) != tuple(x):
            raise NoSuchWindowError(f"no window of the packing sums to {tuple(x)}")
    return idx
