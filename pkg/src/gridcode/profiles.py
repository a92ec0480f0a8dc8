"""Profile sequences, their m-duals, and constant-time dual decoders.

A profile is an integer sequence with entries in ``[0, 2*s_p]`` whose
cyclic window sums (the *m-dual*) form a staircase of repeated values.
That shape is what lets :func:`decode_zero` and :func:`decode_T` find
the first index of a window sum with a handful of arithmetic operations.
"""
from __future__ import annotations

from typing import Sequence

from .errors import NoSuchWindowError, ParameterError


def _check_sm(s_p: int, m: int) -> None:
    if s_p < 1:
        raise ParameterError(f"profile parameter s_p must be >= 1, got {s_p}")
    if m < 2:
        raise ParameterError(f"window size m must be >= 2, got {m}")


def profile_zero(s_p: int, m: int) -> tuple[int, ...]:
    """Base profile of length ``2*m*s_p``.

    >>> profile_zero(1, 3)
    (0, 0, 0, 2, 2, 1)
    >>> profile_zero(2, 2)
    (0, 0, 2, 2, 4, 3, 2, 1)
    """
    _check_sm(s_p, m)
    out: list[int] = []
    for c in range(s_p):
        out += [2 * c] * m
    for c in range(s_p):
        v = 2 * s_p - 2 * c
        out += [v] * (m - 1) + [v - 1]
    return tuple(out)


def profile_T(s_p: int, m: int, T: int) -> tuple[int, ...]:
    """Profile of length ``m*((2*m*s_p + 1)*T - 2)`` for ``T >= 1``.

    Cells are emitted row by row, left to right; empty cells emit nothing.

    >>> profile_T(1, 2, 2)
    (0, 0, 0, 0, 0, 2, 0, 2, 2, 2, 2, 1, 2, 1, 0, 1)
    """
    _check_sm(s_p, m)
    if T < 1:
        raise ParameterError(f"profile_T needs T >= 1 (use profile_zero for T = 0), got {T}")
    top = 2 * s_p
    out: list[int] = []
    # rows 0 .. m-1: (m-1-r zeros, 2c, r copies of 2s)^T
    for r in range(m):
        for c in range(s_p):
            out += ([0] * (m - 1 - r) + [2 * c] + [top] * r) * T
    # row m
    out += [top] * (m * T - 1)
    for c in range(1, s_p):
        out += ([top - 2 * c + 1] + [top] * (m - 1)) * T
    # rows m+1 .. 2m-1: (1, m-2-q copies of 2s, 2s-2c, q zeros)^T
    for q in range(m - 1):
        for c in range(s_p):
            reps = T - 1 if (q == 0 and c == 0) else T
            out += ([1] + [top] * (m - 2 - q) + [top - 2 * c] + [0] * q) * reps
    # row 2m
    out += ([1] + [0] * (m - 1)) * (T - 1) + [1]
    return tuple(out)


def profile(s_p: int, m: int, T: int) -> tuple[int, ...]:
    """Dispatch to :func:`profile_zero` or :func:`profile_T` on ``T``."""
    return profile_zero(s_p, m) if T == 0 else profile_T(s_p, m, T)


def profile_length(s_p: int, m: int, T: int) -> int:
    if T == 0:
        return 2 * m * s_p
    return m * ((2 * m * s_p + 1) * T - 2)


def dual(w: Sequence[int], m: int) -> tuple[int, ...]:
    """Cyclic sums of ``m`` consecutive entries, one per start index."""
    if m < 1:
        raise ParameterError(f"window size must be >= 1, got {m}")
    size = len(w)
    if size == 0:
        raise ParameterError("cannot take the dual of an empty sequence")
    w = list(w)
    acc = sum(w[j % size] for j in range(m))
    out = [acc]
    for i in range(1, size):
        acc += w[(i + m - 1) % size] - w[i - 1]
        out.append(acc)
    return tuple(out)


def decode_zero(v: int, s_p: int, m: int) -> int:
    """Index of ``v`` in the m-dual of ``profile_zero(s_p, m)``."""
    top = 2 * m * s_p
    if not 0 <= v < top:
        raise NoSuchWindowError(f"value {v} outside [0, {top - 1}]")
    if v % 2 == 0:
        return v // 2
    return top - 1 - (v - 1) // 2


def decode_T(v: int, s_p: int, m: int, T: int) -> int:
    """Smallest index of ``v`` in the m-dual of ``profile_T(s_p, m, T)``."""
    if T < 1:
        raise ParameterError(f"decode_T needs T >= 1, got {T}")
    if not 0 <= v <= 2 * m * s_p:
        raise NoSuchWindowError(f"value {v} outside [0, {2 * m * s_p}]")
    mTs = m * T * s_p
    if v % 2 == 0:
        r = v // (2 * s_p)
        c = (v // 2) % s_p
        out = 0
        if r > 0:
            out += r * mTs - r + 1
        if c > 0:
            out += c * m * T - 1 + (r == 0)
        return out
    u = 2 * m * s_p - v + 1
    r = u // (2 * s_p)
    c = (u // 2) % s_p
    out = 1 + m * (mTs - 1)
    if r > 0:
        out += mTs * r - r
    if c > 0:
        out += c * m * T - 1
    return out


def block_is_truncated(v: int, s_p: int) -> bool:
    """True when dual value ``v`` repeats ``m*T - 1`` times instead of ``m*T``.

    Those are the values in the first column of the dual table: every
    non-zero ``v`` with ``v mod 2*s_p`` in ``{0, 1}``.
    """
    return v != 0 and v % (2 * s_p) in (0, 1)
