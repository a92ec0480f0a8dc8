"""Exhaustive brute-force checks of every property the construction claims.

None of these use the decoders; they scan all windows and compare.
Counterexamples are always the lexicographically smallest failing pair,
independent of how many workers split the scan.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .errors import CapExceededError
from .grid import GridColouring, cyclic_window_sum, all_window_counts
from .packing import PackingMatrix, build_matrix, window_sums

DEFAULT_CAP = 10**6


@dataclass
class VerificationReport:
    property: str
    passed: bool
    examined: int
    wall_time: float
    counterexample: dict[str, Any] | None = None
    details: dict[str, Any] = field(default_factory=dict)

    def as_dict(self) -> dict[str, Any]:
        return {
            "property": self.property,
            "passed": self.passed,
            "examined": self.examined,
            "wall_time": round(self.wall_time, 6),
            "counterexample": self.counterexample,
            **({"details": self.details} if self.details else {}),
        }

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.property}: {self.examined} examined in {self.wall_time:.3f}s"
        if self.counterexample:
            text += f"; counterexample {self.counterexample}"
        return text


def _check_cap(count: int, cap: int | None, what: str) -> None:
    if cap is not None and count > cap:
        raise CapExceededError(f"{what}: {count} items exceeds verification cap {cap}")


def _first_duplicate(rows: np.ndarray) -> tuple[int, int] | None:
    """Smallest ``(i, j)``, ``i < j``, with ``rows[i] == rows[j]``."""
    if len(rows) < 2:
        return None
    _, inverse, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
    inverse = inverse.ravel()
    dup = counts[inverse] > 1
    if not dup.any():
        return None
    i = int(np.argmax(dup))
    same = np.flatnonzero(inverse == inverse[i])
    return i, int(same[1])


def _unravel(flat: int, n: int, d: int) -> tuple[int, ...]:
    return tuple(int(c) for c in np.unravel_index(flat, (n,) * d))


def verify_packing_injectivity(M: PackingMatrix, cap: int | None = DEFAULT_CAP) -> VerificationReport:
    _check_cap(M.n, cap, "packing injectivity")
    start = time.perf_counter()
    sums = window_sums(M)
    pair = _first_duplicate(sums)
    elapsed = time.perf_counter() - start
    cex = None
    if pair is not None:
        cex = {"indices": list(pair), "sum": [int(v) for v in sums[pair[0]]]}
    return VerificationReport("packing_injectivity", pair is None, M.n, elapsed, cex)


def window_count_table(G: GridColouring, workers: int = 1) -> np.ndarray:
    """Count vectors of every window, flattened to ``(n**d, k)`` in corner order.

    With ``workers > 1`` the corners are split into contiguous ranges of
    the first coordinate; each worker only reads the grid.
    """
    p = G.params
    if workers <= 1 or p.n < 2:
        return all_window_counts(G.cells, p.m, p.k).reshape(-1, p.k)
    bounds = np.linspace(0, p.n, min(workers, p.n) + 1).astype(int)

    def part(lo: int, hi: int) -> np.ndarray:
        # slab of rows lo .. hi+m-2; axis 0 is not periodic inside it
        slab = np.take(G.cells, np.arange(lo, hi + p.m - 1) % p.n, axis=0)
        out = np.empty((hi - lo,) + (p.n,) * (p.d - 1) + (p.k,), dtype=np.int32)
        for c in range(p.k):
            acc = (slab == c).astype(np.int32)
            csum = np.concatenate([np.zeros_like(acc[:1]), np.cumsum(acc, axis=0)], axis=0)
            acc = csum[p.m : p.m + hi - lo] - csum[: hi - lo]
            for axis in range(1, p.d):
                acc = cyclic_window_sum(acc, p.m, axis)
            out[..., c] = acc
        return out

    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(part, bounds[:-1], bounds[1:]))
    return np.concatenate(parts, axis=0).reshape(-1, p.k)


def verify_grid_uniqueness(
    G: GridColouring, cap: int | None = DEFAULT_CAP, workers: int = 1, table: np.ndarray | None = None
) -> VerificationReport:
    p = G.params
    _check_cap(p.cells, cap, "grid uniqueness")
    start = time.perf_counter()
    if table is None:
        table = window_count_table(G, workers)
    pair = _first_duplicate(table)
    elapsed = time.perf_counter() - start
    cex = None
    if pair is not None:
        cex = {
            "positions": [list(_unravel(i, p.n, p.d)) for i in pair],
            "multiset": [int(v) for v in table[pair[0]]],
        }
    return VerificationReport("grid_uniqueness", pair is None, p.cells, elapsed, cex)


def verify_quasi_periodicity(G: GridColouring, cap: int | None = DEFAULT_CAP) -> VerificationReport:
    """Every pigment-``i`` cell keeps its colour under a shift by ``m`` along any other axis."""
    p = G.params
    _check_cap(p.cells, cap, "quasi-periodicity")
    start = time.perf_counter()
    cells = G.cells
    non_blank = cells != p.blank
    pigment = cells % p.d
    best = None
    for j in range(p.d):
        shifted = np.roll(cells, -p.m, axis=j)
        bad = non_blank & (pigment != j) & (shifted != cells)
        if bad.any():
            x = _unravel(int(np.argmax(bad.ravel())), p.n, p.d)
            y = list(x)
            y[j] = (y[j] + p.m) % p.n
            cand = (x, tuple(y))
            if best is None or cand < best:
                best = cand
    elapsed = time.perf_counter() - start
    cex = None
    if best is not None:
        x, y = best
        cex = {"positions": [list(x), list(y)], "colours": [G[x], G[y]]}
    return VerificationReport("quasi_periodicity", best is None, p.cells * (p.d - 1), elapsed, cex)


def _pigment_counts(p, table: np.ndarray, i: int) -> np.ndarray:
    cols = [p.colour(i, h) for h in range(p.b)]
    return table[..., cols]


def verify_consistency(G: GridColouring, cap: int | None = DEFAULT_CAP, table: np.ndarray | None = None) -> VerificationReport:
    """The pigment-``i`` counts of a window depend on ``x_i`` alone."""
    p = G.params
    _check_cap(p.cells, cap, "anti-dimensional consistency")
    start = time.perf_counter()
    if table is None:
        table = window_count_table(G)
    grid_table = table.reshape((p.n,) * p.d + (p.k,))
    best = None
    for i in range(p.d):
        counts = np.moveaxis(_pigment_counts(p, grid_table, i), i, 0)
        ref = counts[(slice(None),) + (slice(0, 1),) * (p.d - 1)]
        bad = np.any(counts != ref, axis=-1)
        if bad.any():
            moved = np.unravel_index(int(np.argmax(bad.ravel())), bad.shape)
            x = [0] * p.d
            x[i] = int(moved[0])
            others = [a for a in range(p.d) if a != i]
            for a, v in zip(others, moved[1:]):
                x[a] = int(v)
            y = [0] * p.d
            y[i] = x[i]
            cand = (tuple(y), tuple(x), i)
            if best is None or cand < best:
                best = cand
    elapsed = time.perf_counter() - start
    cex = None
    if best is not None:
        y, x, i = best
        cex = {"positions": [list(y), list(x)], "pigment": i}
    return VerificationReport("anti_dimensional_consistency", best is None, p.cells * p.d, elapsed, cex)


def verify_inconsistency(G: GridColouring, cap: int | None = DEFAULT_CAP, table: np.ndarray | None = None) -> VerificationReport:
    """``x_i -> pigment-i counts`` is injective over ``[0, n-1]`` for every axis."""
    p = G.params
    _check_cap(p.cells, cap, "dimensional inconsistency")
    start = time.perf_counter()
    if table is None:
        table = window_count_table(G)
    grid_table = table.reshape((p.n,) * p.d + (p.k,))
    best = None
    for i in range(p.d):
        counts = np.moveaxis(_pigment_counts(p, grid_table, i), i, 0)
        line = counts[(slice(None),) + (0,) * (p.d - 1)]
        pair = _first_duplicate(line)
        if pair is not None:
            cand = (i, pair)
            if best is None or cand < best:
                best = cand
    elapsed = time.perf_counter() - start
    cex = None
    if best is not None:
        i, (a, c) = best
        cex = {"axis": i, "coordinates": [a, c]}
    return VerificationReport("dimensional_inconsistency", best is None, p.n * p.d, elapsed, cex)


def oracle_localize(G: GridColouring, mult: Sequence[int], cap: int | None = DEFAULT_CAP) -> tuple[int, ...] | None:
    """Scan every window; first corner whose multiset equals ``mult``, else ``None``."""
    p = G.params
    _check_cap(p.cells, cap, "oracle localization")
    if len(mult) != p.k:
        return None
    table = window_count_table(G)
    hits = np.flatnonzero(np.all(table == np.asarray(mult), axis=1))
    if hits.size == 0:
        return None
    return _unravel(int(hits[0]), p.n, p.d)


def verify_all(G: GridColouring, cap: int | None = DEFAULT_CAP, workers: int = 1) -> list[VerificationReport]:
    p = G.params
    _check_cap(p.cells, cap, "grid verification")
    table = window_count_table(G, workers)
    return [
        verify_packing_injectivity(build_matrix(p.s_p, p.m, p.b), cap),
        verify_grid_uniqueness(G, cap, workers, table),
        verify_quasi_periodicity(G, cap),
        verify_consistency(G, cap, table),
        verify_inconsistency(G, cap, table),
    ]
