"""CSV tables plus matplotlib figures summarizing a family of instances."""
from __future__ import annotations

import csv
import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import decode_latency  # noqa: E402
from .grid import GridColouring  # noqa: E402
from .io import palette  # noqa: E402
from .params import asymptotic_ratio, bound_check, derive_params  # noqa: E402

TEST_MATRIX = ((2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 1), (3, 1, 1))


def _write_csv(path: Path, rows: list[dict]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)


def bound_rows(instances=TEST_MATRIX) -> list[dict]:
    rows = []
    for d, b, t in instances:
        p = derive_params(d, b, t, max_cells=None)
        check = bound_check(p)
        rows.append({
            "d": d, "b": b, "t": t, "n": p.n, "m": p.m, "k": p.k,
            "windows": check.windows, "multisets": check.multisets,
            "margin": check.margin, "holds": check.holds,
        })
    return rows


def asymptotic_rows(d: int = 2, b: int = 1, ts=(1, 2, 4, 8, 16)) -> list[dict]:
    rows = []
    for t in ts:
        p = derive_params(d, b, t, max_cells=None)
        rows.append({"d": d, "b": b, "t": t, "m": p.m, "n": p.n, **asymptotic_ratio(p)})
    return rows


def latency_rows(d: int = 2, b: int = 1, ts=(1, 2, 4, 8, 16, 32, 64), ops: int = 10**5) -> list[dict]:
    return [decode_latency(d, b, t, ops=ops) for t in ts]


def plot_asymptotics(rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ts = [r["t"] for r in rows]
    ax.plot(ts, [r["ratio"] for r in rows], "o-", label="measured n / m^(k-1)")
    ax.axhline(rows[0]["construction_limit"], ls="--", color="k", lw=1, label="construction limit")
    ax.axhline(rows[0]["nominal_constant"], ls=":", color="r", lw=1, label="C_k^(1/d)")
    ax.set_xscale("log", base=2)
    ax.set_xlabel("scale t")
    ax.set_ylabel("n / m^(k-1)")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_latency(rows: list[dict], path: Path) -> None:
    fig, ax = plt.subplots(figsize=(5, 3.2))
    ns = [r["n"] for r in rows]
    ax.plot(ns, [r["median_ns"] / 1000 for r in rows], "s-")
    ax.set_xscale("log")
    ax.set_ylim(bottom=0)
    ax.set_xlabel("grid side n")
    ax.set_ylabel("median localize time (us)")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_grid(G: GridColouring, path: Path) -> None:
    p = G.params
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.imshow(palette(p.b, p.d)[G.cells], interpolation="nearest")
    ax.set_title(f"n={p.n}, m={p.m}, k={p.k}")
    ax.set_xticks([])
    ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(out_dir: str | os.PathLike, ops: int = 10**5, grid: GridColouring | None = None) -> list[Path]:
    """Write the CSV tables and PNG figures into ``out_dir``; return the paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []

    bounds = bound_rows()
    _write_csv(out / "bounds.csv", bounds)
    written.append(out / "bounds.csv")

    asym = asymptotic_rows()
    _write_csv(out / "asymptotics.csv", asym)
    plot_asymptotics(asym, out / "asymptotics.png")
    written += [out / "asymptotics.csv", out / "asymptotics.png"]

    lat = latency_rows(ops=ops)
    _write_csv(out / "decode_latency.csv", lat)
    plot_latency(lat, out / "decode_latency.png")
    written += [out / "decode_latency.csv", out / "decode_latency.png"]

    if grid is not None and grid.params.d == 2:
        plot_grid(grid, out / "grid.png")
        written.append(out / "grid.png")
    return written
