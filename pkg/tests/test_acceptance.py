"""Exit criteria.  Run with ``pytest tests/test_acceptance.py``; the terminal
summary prints one PASS/FAIL line per criterion."""
import time

import numpy as np
import pytest

from conftest import GRID8
from gridcode.bench import decode_latency
from gridcode.grid import all_window_counts, build_grid, colour_multiset, construction_stages, localize
from gridcode.packing import build_matrix, decode_vector, window_sums
from gridcode.params import asymptotic_ratio, bound_check, derive_params
from gridcode.profiles import block_is_truncated, decode_T, decode_zero, dual, profile_T, profile_zero
from gridcode.verify import verify_grid_uniqueness
from oracles import first_index, multiplicity, naive_dual
from test_grid import STAGES8

INSTANCES = [(2, 1, 1), (2, 1, 2), (2, 1, 3), (2, 2, 1), (3, 1, 1)]
EXHAUSTIVE_LIMIT = 10**6
SAMPLE_CORNERS = 10**4


def _median_seconds(fn, repeat=5):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - start)
    return sorted(times)[len(times) // 2], result


def test_c01_golden_profiles(record_property):
    record_property("criterion", "1 golden profiles (exact, < 1 ms)")
    cases = [
        (lambda: profile_zero(1, 3), (0, 0, 0, 2, 2, 1)),
        (lambda: profile_zero(2, 2), (0, 0, 2, 2, 4, 3, 2, 1)),
        (lambda: profile_T(1, 2, 2), (0, 0, 0, 0, 0, 2, 0, 2, 2, 2, 2, 1, 2, 1, 0, 1)),
    ]
    worst = 0.0
    for fn, expected in cases:
        elapsed, got = _median_seconds(fn)
        worst = max(worst, elapsed)
        assert got == expected
    record_property("detail", f"slowest call {worst * 1e6:.1f} us")
    assert worst < 1e-3


def test_c02_golden_duals(record_property):
    record_property("criterion", "2 golden duals (exact, < 1 ms)")
    cases = [
        (lambda: dual(profile_zero(2, 2), 2), (0, 2, 4, 6, 7, 5, 3, 1)),
        (lambda: dual(profile_T(1, 2, 2), 2), (0, 0, 0, 0, 2, 2, 2, 4, 4, 4, 3, 3, 3, 1, 1, 1)),
    ]
    worst = 0.0
    for fn, expected in cases:
        elapsed, got = _median_seconds(fn)
        worst = max(worst, elapsed)
        assert got == expected
    record_property("detail", f"slowest call {worst * 1e6:.1f} us")
    assert worst < 1e-3


def test_c03_golden_matrix(record_property):
    record_property("criterion", "3 golden matrix M^(2) for s=1, m=2")
    assert build_matrix(1, 2, 2).rows.tolist() == [
        [0, 0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1, 0, 2, 1],
        [0, 0, 0, 0, 0, 2, 0, 2, 2, 2, 2, 1, 2, 1, 0, 1],
    ]


def test_c04_golden_grid(record_property):
    record_property("criterion", "4 golden 8x8 grid and every construction stage")
    p = derive_params(2, 1, 1)
    stages = [cells.tolist() for _, cells in construction_stages(p)]
    assert stages == [[list(r) for r in stage] for stage in STAGES8]
    assert build_grid(p).cells.tolist() == [list(r) for r in GRID8]


def test_c05_localization_walkthrough(record_property):
    record_property("criterion", "5 localization walkthrough on the 8x8 grid")
    p = derive_params(2, 1, 1)
    G = build_grid(p)
    assert localize((5, 3, 8), p) == (5, 6)
    assert colour_multiset(G, (3, 1)) == (6, 2, 8)
    assert colour_multiset(G, (6, 5)) == (3, 5, 8)


def test_c06_size_256_instance(record_property):
    record_property("criterion", "6 size-256 instance: uniqueness over 65536 windows (< 10 s)")
    start = time.perf_counter()
    p = derive_params(2, 2, 1)
    assert (p.n, p.m, p.k) == (256, 8, 5)
    report = verify_grid_uniqueness(build_grid(p), workers=1)
    elapsed = time.perf_counter() - start
    record_property("detail", f"build + verify {elapsed:.2f} s, {report.examined} windows")
    assert report.passed and report.examined == 65536
    assert elapsed < 10


@pytest.mark.parametrize("dbt", INSTANCES, ids=lambda v: "d{}b{}t{}".format(*v))
def test_c07_round_trips(dbt, record_property):
    record_property("criterion", f"7 exhaustive round trips d={dbt[0]} b={dbt[1]} t={dbt[2]}")
    p = derive_params(*dbt)
    M = build_matrix(p.s_p, p.m, p.b)
    sums = window_sums(M).tolist()
    failures = sum(decode_vector(vec, p.s_p, p.m, p.b, T=p.T) != i for i, vec in enumerate(sums))

    G = build_grid(p)
    table = all_window_counts(G.cells, p.m, p.k).reshape(-1, p.k)
    if p.cells <= EXHAUSTIVE_LIMIT:
        flats = np.arange(p.cells)
    else:
        flats = np.random.default_rng(0).choice(p.cells, SAMPLE_CORNERS, replace=False)
    corners = np.stack(np.unravel_index(flats, (p.n,) * p.d), axis=1).tolist()
    rows = table[flats].tolist()
    for x, mult in zip(corners, rows):
        if list(localize(mult, p)) != x:
            failures += 1
    record_property("detail", f"{len(sums)} packing indices, {len(corners)} corners, {failures} failures")
    assert failures == 0


def test_c08_decoder_oracle_equivalence(record_property):
    record_property("criterion", "8 decoders vs first-index scans, s_p 1..6, m 2..8, T 1..4")
    failures = checked = 0
    for s in range(1, 7):
        for m in range(2, 9):
            d0 = naive_dual(profile_zero(s, m), m)
            for v in range(2 * m * s):
                checked += 1
                failures += decode_zero(v, s, m) != first_index(d0, v)
            for T in range(1, 5):
                dT = naive_dual(profile_T(s, m, T), m)
                for v in range(2 * m * s + 1):
                    checked += 2
                    failures += decode_T(v, s, m, T) != first_index(dT, v)
                    failures += block_is_truncated(v, s) != (multiplicity(dT, v) == m * T - 1)
    record_property("detail", f"{checked} checks, {failures} failures")
    assert failures == 0


def test_c09_counting_bound(record_property):
    record_property("criterion", "9 counting bound on every instance")
    lines = []
    ok = True
    for dbt in INSTANCES:
        check = bound_check(derive_params(*dbt))
        ok &= check.holds
        lines.append(f"d={dbt[0]} b={dbt[1]} t={dbt[2]}: {check.windows} <= {check.multisets}, margin {check.margin}")
    record_property("detail", "\n".join(lines))
    assert ok


def test_c10_constant_time_decoding(record_property):
    record_property("criterion", "10 median decode latency t=8 vs t=64 within 2x")
    small = decode_latency(2, 1, 8, ops=200_000)
    large = decode_latency(2, 1, 64, ops=200_000)
    ratio = max(small["median_ns"], large["median_ns"]) / min(small["median_ns"], large["median_ns"])
    record_property(
        "detail",
        f"t=8 (n={small['n']}): {small['median_ns']:.0f} ns; t=64 (n={large['n']}): "
        f"{large['median_ns']:.0f} ns; ratio {ratio:.2f}",
    )
    assert ratio < 2


def test_c11_asymptotics_report(record_property):
    record_property("criterion", "11 asymptotics report (non-gating)")
    lines = []
    for t in (1, 2, 4, 8, 16):
        r = asymptotic_ratio(derive_params(2, 1, t, max_cells=None))
        lines.append(
            f"t={t}: n/m^2 = {r['ratio']:.6f} (construction limit {r['construction_limit']}, "
            f"C_k^(1/d) = {r['nominal_constant']})"
        )
    record_property("detail", "\n".join(lines))
