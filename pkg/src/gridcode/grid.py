"""Grid colouring built from a vector sum packing, and window localization.

Colour ``i + h*d`` is pigment ``i`` (one per grid axis) in shade ``h``;
colour ``k-1 = b*d`` is blank.  Cells are stored one byte each, C order,
last coordinate fastest.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import InconsistentTotalError, NoSuchWindowError, ParameterError
from .packing import PackingMatrix, build_matrix, decode_vector, window_sum
from .params import CodeParams


@dataclass(frozen=True, eq=False)
class GridColouring:
    params: CodeParams
    cells: np.ndarray

    def __post_init__(self):
        cells = np.ascontiguousarray(self.cells, dtype=np.uint8)
        expected = (self.params.n,) * self.params.d
        if cells.shape != expected:
            raise ParameterError(f"cells have shape {cells.shape}, expected {expected}")
        cells.setflags(write=False)
        object.__setattr__(self, "cells", cells)

    def __getitem__(self, x: Sequence[int]) -> int:
        n = self.params.n
        return int(self.cells[tuple(c % n for c in x)])

    def __eq__(self, other):
        if not isinstance(other, GridColouring):
            return NotImplemented
        return self.params == other.params and np.array_equal(self.cells, other.cells)

    def __repr__(self):
        p = self.params
        return f"GridColouring(d={p.d}, b={p.b}, t={p.t}, n={p.n}, m={p.m}, k={p.k})"


def initial_colouring(p: CodeParams) -> np.ndarray:
    """Step (a): colour index ``(sum of coordinates) mod b*d``."""
    total = np.zeros((p.n,) * p.d, dtype=np.int64)
    for axis in range(p.d):
        shape = [1] * p.d
        shape[axis] = p.n
        total = total + np.arange(p.n).reshape(shape)
    return (total % (p.b * p.d)).astype(np.uint8)


def _block_erasures(p: CodeParams, M: PackingMatrix, i: int) -> np.ndarray:
    """Step (b) for axis ``i``: which base-block cells get blanked.

    Returns a bool array ``(n, m**(d-1))``: entry ``[j, q]`` is the ``q``-th
    cell (lexicographic over the other coordinates) of the block with
    ``x_i = j``.  Within each block the first ``z_j[l]`` cells of shade
    ``l`` are kept and the rest erased.
    """
    bd = p.b * p.d
    others = np.indices((p.m,) * (p.d - 1)).reshape(p.d - 1, -1).sum(axis=0)
    q = others.size
    colour_by_residue = (np.arange(bd)[:, None] + others[None, :]) % bd
    rank_by_residue = np.empty_like(colour_by_residue)
    for r in range(bd):
        row = colour_by_residue[r]
        for c in range(bd):
            sel = row == c
            rank_by_residue[r, sel] = np.arange(np.count_nonzero(sel))
        if np.any(np.bincount(row, minlength=bd) != p.s_max):
            raise AssertionError(f"base block does not hold {p.s_max} cells per shade")

    residues = np.arange(p.n) % bd
    colour = colour_by_residue[residues]
    rank = rank_by_residue[residues]
    z = M.rows.T.astype(np.int64)  # (n, b)
    keep_count = z[np.arange(p.n)[:, None], colour // p.d]
    erased = (colour % p.d == i) & (rank >= keep_count)
    assert erased.shape == (p.n, q)
    return erased


def _spread(p: CodeParams, block: np.ndarray, i: int, *, base_only: bool) -> np.ndarray:
    """Place a per-block table over the whole grid, axis ``i`` first.

    Step (c) is the periodic extension with period ``m`` along the other
    axes; ``base_only`` keeps the table on the base blocks alone.
    """
    shaped = block.reshape((p.n,) + (p.m,) * (p.d - 1))
    reps = (1,) + (p.n // p.m,) * (p.d - 1)
    full = np.tile(shaped, reps)
    if base_only:
        outside = np.ones(full.shape, dtype=bool)
        outside[(slice(None),) + (slice(0, p.m),) * (p.d - 1)] = False
        full[outside] = False
    return np.moveaxis(full, 0, i)


def construction_stages(p: CodeParams, M: PackingMatrix | None = None) -> Iterator[tuple[str, np.ndarray]]:
    """Yield ``(label, cells)`` after every construction step.

    Labels: ``"initial"``, then ``"block-<i>"`` (step (b) on axis ``i``)
    and ``"periodic-<i>"`` (step (c) on axis ``i``) for each axis.  For
    d = 2 that is five snapshots: initial, then block and periodic per axis.
    """
    if M is None:
        M = build_matrix(p.s_p, p.m, p.b)
    if M.n != p.n:
        raise ParameterError(f"packing length {M.n} does not match grid size {p.n}")
    cells = initial_colouring(p)
    pigment = cells % p.d
    yield "initial", cells.copy()
    for i in range(p.d):
        erased = _block_erasures(p, M, i)
        is_pigment = pigment == i
        base = cells.copy()
        base[is_pigment & _spread(p, erased, i, base_only=True)] = p.blank
        yield f"block-{i}", base
        cells[is_pigment & _spread(p, erased, i, base_only=False)] = p.blank
        yield f"periodic-{i}", cells.copy()


def build_grid(p: CodeParams, M: PackingMatrix | None = None) -> GridColouring:
    cells = None
    for _, cells in construction_stages(p, M):
        pass
    return GridColouring(p, cells)


def cyclic_window_sum(a: np.ndarray, m: int, axis: int) -> np.ndarray:
    n = a.shape[axis]
    ext = np.take(a, np.arange(n + m - 1) % n, axis=axis)
    csum = np.cumsum(ext, axis=axis)
    zero = np.zeros_like(np.take(csum, [0], axis=axis))
    csum = np.concatenate([zero, csum], axis=axis)
    hi = np.take(csum, np.arange(m, m + n), axis=axis)
    lo = np.take(csum, np.arange(n), axis=axis)
    return hi - lo


def all_window_counts(cells: np.ndarray, m: int, k: int) -> np.ndarray:
    """Colour counts of every window, shape ``cells.shape + (k,)``.

    Each axis is reduced with a sliding sum (add the slab entering, drop
    the slab leaving) so the cost is ``O(k * d * n**d)``.
    """
    out = np.empty(cells.shape + (k,), dtype=np.int32)
    for c in range(k):
        acc = (cells == c).astype(np.int32)
        for axis in range(cells.ndim):
            acc = cyclic_window_sum(acc, m, axis)
        out[..., c] = acc
    return out


def colour_multiset(G: GridColouring, x: Sequence[int]) -> tuple[int, ...]:
    """Count of each colour in the ``m**d`` window with corner ``x`` (cyclic)."""
    p = G.params
    if len(x) != p.d:
        raise ParameterError(f"position needs {p.d} coordinates, got {len(x)}")
    idx = np.ix_(*[(c + np.arange(p.m)) % p.n for c in x])
    counts = np.bincount(G.cells[idx].ravel(), minlength=p.k)
    return tuple(int(v) for v in counts[: p.k])


def pigment_vector(mult: Sequence[int], p: CodeParams, i: int) -> tuple[int, ...]:
    """Shade counts of pigment ``i``, in shade order."""
    return tuple(mult[p.colour(i, h)] for h in range(p.b))


def localize(
    mult: Sequence[int],
    p: CodeParams,
    verify: PackingMatrix | None = None,
) -> tuple[int, ...]:
    """Corner of the window whose colour multiset is ``mult``.

    One vector decode per axis.  Passing the packing matrix as ``verify``
    re-checks each axis with one window sum.
    """
    if len(mult) != p.k:
        raise NoSuchWindowError(f"multiset has {len(mult)} colours, expected {p.k}")
    if sum(mult) != p.window_cells:
        raise InconsistentTotalError(
            f"inconsistent total: counts sum to {sum(mult)}, expected m^d = {p.window_cells}"
        )
    top = 2 * p.m * p.s_p
    for c, v in enumerate(mult[: p.blank]):
        if not 0 <= v <= top:
            raise NoSuchWindowError(f"count {v} of colour {c} outside [0, {top}]")
    return tuple(
        decode_vector(pigment_vector(mult, p, i), p.s_p, p.m, p.b, T=p.T, verify=verify)
        for i in range(p.d)
    )


def expected_multiset(p: CodeParams, M: PackingMatrix, x: Sequence[int]) -> tuple[int, ...]:
    """Multiset at corner ``x`` predicted from the packing alone.

    Pigment ``i`` counts are the window sum of the packing at ``x_i``; the
    blank count makes up the rest.  Matches :func:`colour_multiset` on a
    built grid without allocating it.
    """
    counts = [0] * p.k
    for i in range(p.d):
        for h, v in enumerate(window_sum(M, x[i])):
            counts[p.colour(i, h)] = v
    counts[p.blank] = p.window_cells - sum(counts)
    return tuple(counts)
