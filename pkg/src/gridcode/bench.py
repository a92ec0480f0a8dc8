"""Timing of grid construction and of window localization."""
from __future__ import annotations

import statistics
import time

import numpy as np

from .errors import NoSuchWindowError, ParameterError
from .grid import build_grid, localize
from .packing import build_matrix, window_sums
from .params import DEFAULT_MAX_CELLS, CodeParams, derive_params


def random_multisets(p: CodeParams, sums: np.ndarray, count: int, rng: np.random.Generator):
    """``count`` realizable multisets with their corners, built from packing sums."""
    corners = rng.integers(0, p.n, size=(count, p.d))
    counts = np.zeros((count, p.k), dtype=np.int64)
    for i in range(p.d):
        for h in range(p.b):
            counts[:, p.colour(i, h)] = sums[corners[:, i], h]
    counts[:, p.blank] = p.window_cells - counts[:, : p.blank].sum(axis=1)
    return [tuple(row) for row in counts.tolist()], [tuple(row) for row in corners.tolist()]


def decode_latency(d: int, b: int, t: int, ops: int = 10**6, batch: int = 1000, seed: int = 0) -> dict:
    """Median nanoseconds per :func:`localize` call over ``ops`` random windows.

    The grid itself is never allocated: multisets are synthesized from the
    packing, so ``t`` can go well past what fits in memory as a grid.
    """
    if ops < 1 or batch < 1:
        raise ParameterError("ops and batch must be >= 1")
    p = derive_params(d, b, t, max_cells=None)
    sums = window_sums(build_matrix(p.s_p, p.m, p.b))
    rng = np.random.default_rng(seed)
    per_op = []
    done = 0
    while done < ops:
        size = min(batch, ops - done)
        mults, corners = random_multisets(p, sums, size, rng)
        out = [None] * size
        start = time.perf_counter_ns()
        for j, mult in enumerate(mults):
            out[j] = localize(mult, p)
        per_op.append((time.perf_counter_ns() - start) / size)
        if out != corners:
            bad = next(j for j in range(size) if out[j] != corners[j])
            raise NoSuchWindowError(f"decode mismatch at {corners[bad]}: got {out[bad]}")
        done += size
    return {"d": d, "b": b, "t": t, "n": p.n, "ops": ops, "median_ns": statistics.median(per_op)}


def build_throughput(d: int, b: int, t: int, reps: int = 3, max_cells: int | None = DEFAULT_MAX_CELLS) -> dict:
    """Median build time and cells per second over ``reps`` constructions."""
    if reps < 1:
        raise ParameterError(f"reps must be >= 1, got {reps}")
    p = derive_params(d, b, t, max_cells=max_cells)
    times = []
    for _ in range(reps):
        start = time.perf_counter()
        build_grid(p)
        times.append(time.perf_counter() - start)
    median = statistics.median(times)
    return {"d": d, "b": b, "t": t, "n": p.n, "cells": p.cells, "median_s": median, "cells_per_s": p.cells / median}
