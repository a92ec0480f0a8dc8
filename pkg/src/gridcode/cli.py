"""Command-line front end.

Exit codes: 0 success, 1 usage or input error, 2 verification failure
(including "no such window"), 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bench import build_throughput, decode_latency
from .errors import GridCodeError, InstanceTooLargeError, NoSuchWindowError
from .grid import build_grid, colour_multiset, localize
from .io import export_image, format_multiset, parse_multiset, read_grid, read_multiset, write_grid
from .packing import build_matrix, window_sums
from .params import DEFAULT_MAX_CELLS, asymptotic_ratio, bound_check, derive_params
from .profiles import dual, profile
from .report import write_report
from .verify import DEFAULT_CAP, oracle_localize, verify_all

EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_CAP = 0, 1, 2, 3


class UsageError(GridCodeError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_params(sp, required=True):
    sp.add_argument("-d", type=int, required=required, help="grid dimension (>= 2)")
    sp.add_argument("-b", type=int, required=required, help="shades per pigment (>= 1)")
    sp.add_argument("-t", type=int, required=required, help="scale (>= 1)")


def _params_from(args, max_cells=DEFAULT_MAX_CELLS):
    if None in (args.d, args.b, args.t):
        raise UsageError("give -d, -b and -t, or a grid file with --in")
    return derive_params(args.d, args.b, args.t, max_cells=max_cells)


def _emit(obj, fmt):
    if fmt == "csv" and isinstance(obj, list) and obj and isinstance(obj[0], dict):
        keys = list(obj[0])
        print(",".join(keys))
        for row in obj:
            print(",".join(str(row[k]) for k in keys))
    else:
        print(json.dumps(obj))


def cmd_build(args) -> int:
    p = _params_from(args, args.max_cells)
    check = bound_check(p)
    G = build_grid(p)
    fmt = args.format or "bin"
    out = args.out or f"grid_d{p.d}_b{p.b}_t{p.t}.{'ppm' if fmt == 'ppm' else 'bin'}"
    if fmt == "ppm":
        export_image(G, out)
    elif fmt == "bin":
        write_grid(G, out)
    else:
        raise UsageError(f"build writes bin or ppm, not {fmt}")
    print(json.dumps({
        "params": p.as_dict(),
        "bound": {"holds": check.holds, "windows": check.windows,
                  "multisets": check.multisets, "margin": check.margin},
        "asymptotics": asymptotic_ratio(p),
        "out": out,
    }))
    return EXIT_OK


def cmd_sample(args) -> int:
    G = read_grid(args.input)
    if len(args.x) != G.params.d:
        raise UsageError(f"-x needs {G.params.d} coordinates")
    print(format_multiset(colour_multiset(G, args.x), args.format or "json"))
    return EXIT_OK


def cmd_locate(args) -> int:
    G = read_grid(args.input) if args.input else None
    p = G.params if G is not None else _params_from(args, max_cells=None)
    if args.multiset is not None:
        mult = parse_multiset(args.multiset, p.k)
    elif args.multiset_file is not None:
        mult = read_multiset(args.multiset_file, p.k)
    else:
        raise UsageError("give --multiset or --multiset-file")
    M = build_matrix(p.s_p, p.m, p.b) if args.verify else None
    x = localize(mult, p, verify=M)
    result = {"position": list(x)}
    if args.oracle_check:
        if G is None:
            raise UsageError("--oracle-check needs the grid file via --in")
        truth = oracle_localize(G, mult, cap=args.cap)
        result["oracle"] = list(truth) if truth is not None else None
        if truth != x:
            print(json.dumps(result))
            print(f"oracle disagrees: decoder {x}, scan {truth}", file=sys.stderr)
            return EXIT_VERIFY
    if args.format == "csv":
        print(",".join(map(str, x)))
    else:
        print(json.dumps(result))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        G = read_grid(args.input)
    else:
        G = build_grid(_params_from(args))
    reports = verify_all(G, cap=args.cap, workers=args.workers)
    if args.format == "csv":
        _emit([{"property": r.property, "passed": r.passed, "examined": r.examined,
                "wall_time": f"{r.wall_time:.6f}",
                "counterexample": json.dumps(r.counterexample).replace(",", ";")} for r in reports], "csv")
    else:
        print(json.dumps({"params": G.params.as_dict(), "reports": [r.as_dict() for r in reports]}))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_export(args) -> int:
    G = read_grid(args.input)
    export_image(G, args.out)
    print(args.out)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.reps < 1:
        raise UsageError(f"--reps must be >= 1, got {args.reps}")
    build = build_throughput(args.d, args.b, args.t, reps=args.reps)
    decode = decode_latency(args.d, args.b, args.t, ops=args.ops)
    _emit({"build": build, "decode": decode}, "json")
    return EXIT_OK


def cmd_profile(args) -> int:
    seq = profile(args.s, args.m, args.T)
    print(",".join(map(str, seq)))
    if args.dual:
        print(",".join(map(str, dual(seq, args.m))))
    return EXIT_OK


def cmd_packing(args) -> int:
    if args.s is not None:
        if args.m is None or args.b is None:
            raise UsageError("-s needs -m and -b")
        s_p, m, b = args.s, args.m, args.b
    else:
        p = _params_from(args, max_cells=None)
        s_p, m, b = p.s_p, p.m, p.b
    M = build_matrix(s_p, m, b)
    if args.show == "rows":
        for row in M.rows:
            print(",".join(map(str, row.tolist())))
    elif args.show == "duals":
        for row in window_sums(M).T:
            print(",".join(map(str, row.tolist())))
    else:
        print("index," + ",".join(f"sum{l}" for l in range(M.b)))
        for i, row in enumerate(window_sums(M).tolist()):
            print(f"{i}," + ",".join(map(str, row)))
    return EXIT_OK


def cmd_report(args) -> int:
    G = read_grid(args.input) if args.input else None
    for path in write_report(args.out, ops=args.ops, grid=G):
        print(path)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gridcode", description="Multiset positioning codes: build, sample, locate, verify.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("build", help="build a grid colouring and write it")
    _add_params(sp)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("bin", "ppm"))
    sp.add_argument("--max-cells", type=int, default=DEFAULT_MAX_CELLS)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("sample", help="print the colour multiset of one window")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("-x", type=int, nargs="+", required=True, help="window corner")
    sp.add_argument("--format", choices=("json", "csv"))
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("locate", help="decode a colour multiset to its window corner")
    _add_params(sp, required=False)
    sp.add_argument("--in", dest="input", help="grid file (supplies parameters; needed for --oracle-check)")
    sp.add_argument("--multiset", help="counts as 5,3,8 or 0:5,1:3,2:8 or JSON")
    sp.add_argument("--multiset-file")
    sp.add_argument("--oracle-check", action="store_true", help="cross-check against a full window scan")
    sp.add_argument("--no-verify", dest="verify", action="store_false", help="skip the round-trip check")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--format", choices=("json", "csv"))
    sp.set_defaults(func=cmd_locate)

    sp = sub.add_parser("verify", help="run every exhaustive property check")
    _add_params(sp, required=False)
    sp.add_argument("--in", dest="input")
    sp.add_argument("--cap", type=int, default=DEFAULT_CAP)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--format", choices=("json", "csv"))
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="write a 2-D grid as a binary PPM image")
    sp.add_argument("--in", dest="input", required=True)
    sp.add_argument("--out", required=True)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("bench", help="time construction and localization")
    _add_params(sp)
    sp.add_argument("--reps", type=int, default=3)
    sp.add_argument("--ops", type=int, default=10**6)
    sp.set_defaults(func=cmd_bench)

    sp = sub.add_parser("profile", help="print a profile sequence (and its dual)")
    sp.add_argument("-s", type=int, required=True)
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-T", type=int, default=0)
    sp.add_argument("--dual", action="store_true")
    sp.set_defaults(func=cmd_profile)

    sp = sub.add_parser("packing", help="print packing rows, duals or the window-sum table as CSV")
    _add_params(sp, required=False)
    sp.add_argument("-s", type=int)
    sp.add_argument("-m", type=int)
    sp.add_argument("--show", choices=("rows", "duals", "sums"), default="rows")
    sp.set_defaults(func=cmd_packing)

    sp = sub.add_parser("report", help="write CSV tables and PNG figures")
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--in", dest="input", help="optional 2-D grid to render")
    sp.add_argument("--ops", type=int, default=10**5)
    sp.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except InstanceTooLargeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except NoSuchWindowError as exc:
        print(f"no such window: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (GridCodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
