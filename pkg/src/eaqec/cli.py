"""Command-line front end.

Codes are named either as a file path or as ``catalog:<name>``.  Exit
codes: 0 success, 1 usage error, 2 invalid input or failed validation,
3 refused cost (raise ``--max-cost`` or pass ``--full`` to override).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence

from . import circulant as circulant_mod
from . import code as code_mod
from . import frames, search
from .catalog import (
    CheckMatrixFormatError,
    entries as catalog_entries,
    dump_check_matrix,
    get as catalog_get,
    load_check_matrix,
    report_json,
)
from .circuit import serialize_circuit, synthesize_encoding
from .code import LogicalMatrix, SimplifiedCheckMatrix

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INVALID = 2
EXIT_COST = 3

DEFAULT_MAX_COST = 10**8


class _CliError(Exception):
    def __init__(self, status: int, message: str) -> None:
        super().__init__(message)
        self.status = status


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_code(name: str) -> tuple[SimplifiedCheckMatrix, LogicalMatrix | None]:
    if name.startswith("catalog:"):
        try:
            entry = catalog_get(name[len("catalog:"):])
        except KeyError as exc:
            raise _CliError(EXIT_INVALID, str(exc.args[0])) from None
        return entry.matrix, entry.logical
    try:
        return load_check_matrix(name), None
    except OSError as exc:
        raise _CliError(EXIT_INVALID, f"cannot read {name}: {exc.strerror}") from None
    except CheckMatrixFormatError as exc:
        raise _CliError(EXIT_INVALID, f"{name}: {exc}") from None


def _cli_workers(requested: int | None) -> int:
    if requested is not None:
        if requested < 1:
            raise _CliError(EXIT_USAGE, "--workers must be at least 1")
        return requested
    env = os.environ.get(search.WORKERS_ENV)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise _CliError(
                EXIT_USAGE, f"{search.WORKERS_ENV} must be an integer, got {env!r}"
            ) from None
    return os.cpu_count() or 1


def _standard_frame(name: str) -> frames.SymplecticFrame:
    h, _ = _load_code(name)
    if h.c != 0:
        raise _CliError(
            EXIT_INVALID,
            f"{name} already uses {h.c} ebits; optimization starts from a "
            "standard code with commuting rows",
        )
    return frames.frame_from_code(h)


def _cmd_distance(args: argparse.Namespace) -> int:
    h, logical = _load_code(args.code)
    print(report_json(code_mod.report(h, logical)))
    return EXIT_OK


def _cmd_ebits(args: argparse.Namespace) -> int:
    h, _ = _load_code(args.code)
    print(code_mod.ebit_count(h))
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    h, logical = _load_code(args.code)
    problems = code_mod.validate(h, logical)
    if problems:
        for p in problems:
            print(p, file=sys.stderr)
        return EXIT_INVALID
    m = h.m
    print(f"ok: n={h.n} m={m} c={h.c} k={h.k}")
    return EXIT_OK


def _optimize_human(res: search.OptimizationResult, c: int) -> str:
    lines = [
        f"c={c}: d_opt={res.d_opt}  N_opt={res.n_opt}  total={res.total}  "
        f"degenerate_optima={res.degenerate_optima}  elapsed={res.elapsed_s:.3f}s"
    ]
    for chk, _, rep in res.exemplars:
        p = rep.params
        lines.append(
            f"  exemplar [[{p.n},{p.k},{p.d};{p.c}]]"
            + (" degenerate" if p.degenerate else "")
            + (" saturates-singleton" if rep.singleton_saturated else "")
        )
    return "\n".join(lines)


def _cmd_optimize(args: argparse.Namespace) -> int:
    frame = _standard_frame(args.code)
    try:
        spec = search.SearchSpec(frame=frame, c=args.c, mode="exhaustive")
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, str(exc)) from None
    progress = None
    if args.progress:

        def progress(done: int, total: int, best: int | None, elapsed: float) -> None:
            print(
                f"\r{done}/{total} candidates, best d {best}, {elapsed:.0f}s",
                end="",
                file=sys.stderr,
                flush=True,
            )

    try:
        res = search.exhaustive_optimize(
            spec,
            max_cost=args.max_cost,
            workers=_cli_workers(args.workers),
            progress=progress,
        )
    except search.SearchCostExceeded as exc:
        raise _CliError(EXIT_COST, str(exc)) from None
    finally:
        if args.progress:
            print(file=sys.stderr)
    if args.format == "csv":
        print(search.CSV_HEADER)
        print(res.csv_row(args.c))
    else:
        print(_optimize_human(res, args.c))
    return EXIT_OK


def _cmd_random_search(args: argparse.Namespace) -> int:
    frame = _standard_frame(args.code)
    try:
        spec = search.SearchSpec(
            frame=frame,
            c=args.c,
            mode="random",
            t_policy=args.t_policy,
            budget=args.iters,
            seed=args.seed,
            merit_window=args.merit_window,
            restart=args.restart,
        )
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, str(exc)) from None
    res, trials = search.random_search(spec)
    if args.format == "csv":
        print(search.CSV_HEADER)
        print(res.csv_row(args.c))
    else:
        p = res.exemplars[0][2].params
        print(
            f"best [[{p.n},{p.k},{p.d};{p.c}]] after {trials} of {args.iters} "
            f"trials (seed {args.seed}); hits at d={res.d_opt}: {res.n_opt}, "
            f"degenerate: {res.degenerate_optima}, elapsed {res.elapsed_s:.3f}s"
        )
    return EXIT_OK


_FULL_SCAN_FLOOR = 8


def _cmd_circulant_scan(args: argparse.Namespace) -> int:
    if args.n >= _FULL_SCAN_FLOOR and not args.full:
        raise _CliError(
            EXIT_COST,
            f"a full n={args.n} scan covers {1 << (2 * args.n)} seeds and can "
            "run for hours; pass --full to start it",
        )
    if (args.rmin is None) != (args.rmax is None):
        raise _CliError(EXIT_USAGE, "--rmin and --rmax go together")
    r_values = None
    if args.rmin is not None:
        if not 1 <= args.rmin <= args.rmax <= 2 * args.n:
            raise _CliError(
                EXIT_USAGE, f"need 1 <= rmin <= rmax <= {2 * args.n}"
            )
        r_values = range(args.rmin, args.rmax + 1)
    try:
        records = circulant_mod.scan(
            args.n, r_values, workers=_cli_workers(args.workers)
        )
    except ValueError as exc:
        raise _CliError(EXIT_USAGE, str(exc)) from None
    if args.best:
        records = circulant_mod.best_per_class(records)
    csv_text = circulant_mod.scan_csv(records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv_text)
        print(f"{len(records)} records -> {args.out}")
    elif args.format == "csv":
        print(csv_text, end="")
    else:
        for rec in records:
            flags = []
            if rec.degenerate:
                flags.append("degenerate")
            if rec.saturates_singleton:
                flags.append("saturates-singleton")
            if rec.known_nonequivalent:
                flags.append("beyond-standard")
            print(
                f"[[{rec.n},{rec.k},{rec.d};{rec.c}]]  r={rec.r}  "
                f"seed={circulant_mod.CirculantSeed(rec.n, rec.seed, rec.r).to_string()}"
                + ("  " + " ".join(flags) if flags else "")
            )
    return EXIT_OK


def _cmd_synth(args: argparse.Namespace) -> int:
    h, _ = _load_code(args.code)
    circ, _ = synthesize_encoding(h)
    text = serialize_circuit(circ)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"{len(circ.gates)} gates -> {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def _cmd_nrc(args: argparse.Namespace) -> int:
    if not 0 <= args.c <= args.r:
        raise _CliError(EXIT_USAGE, f"need 0 <= c <= r, got c={args.c} r={args.r}")
    print(frames.count_N(args.r, args.c))
    return EXIT_OK


def _cmd_catalog(args: argparse.Namespace) -> int:
    entries = catalog_entries()
    if args.action == "list":
        for entry in entries.values():
            n, k, c, d = entry.params
            print(f"{entry.name:20s} [[{n},{k},{d};{c}]]  {entry.provenance:10s} {entry.note}")
        return EXIT_OK
    if args.name is None:
        raise _CliError(EXIT_USAGE, "catalog show needs a name")
    try:
        entry = catalog_get(args.name)
    except KeyError as exc:
        raise _CliError(EXIT_INVALID, str(exc.args[0])) from None
    n, k, c, d = entry.params
    print(f"# {entry.name}: [[{n},{k},{d};{c}]], {entry.provenance}")
    print(f"# {entry.note}")
    if entry.d_std:
        pairs = ", ".join(f"c={cc}: {dd}" for cc, dd in sorted(entry.d_std.items()))
        print(f"# best standard [[n+c,k]] distance by ebit count: {pairs}")
    print(dump_check_matrix(entry.matrix), end="")
    return EXIT_OK


def _add_code_argument(p: argparse.ArgumentParser) -> None:
    p.add_argument("code", help="matrix file path, or catalog:<name>")


def build_parser() -> _Parser:
    parser = _Parser(prog="eaqec", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("distance", help="distance report as JSON")
    _add_code_argument(p)
    p.set_defaults(func=_cmd_distance)

    p = sub.add_parser("ebits", help="count the required ebits")
    _add_code_argument(p)
    p.set_defaults(func=_cmd_ebits)

    p = sub.add_parser("validate", help="structural checks; nonzero exit on failure")
    _add_code_argument(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("optimize", help="exhaustive ebit-assisted optimization")
    _add_code_argument(p)
    p.add_argument("--c", type=int, required=True, help="ebits to spend")
    p.add_argument(
        "--exhaustive",
        action="store_true",
        help="confirm the exhaustive sweep (the only optimize mode)",
    )
    p.add_argument(
        "--max-cost",
        type=int,
        default=DEFAULT_MAX_COST,
        help=f"refuse sweeps costlier than this (default {DEFAULT_MAX_COST:.0e})",
    )
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--format", choices=("csv", "human"), default="csv")
    p.add_argument("--progress", action="store_true", help="progress line on stderr")
    p.set_defaults(func=_cmd_optimize)

    p = sub.add_parser("random-search", help="merit-guided random optimization")
    _add_code_argument(p)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--iters", type=int, required=True, help="trial budget")
    p.add_argument("--seed", type=int, required=True, help="RNG seed")
    p.add_argument(
        "--restart",
        action="store_true",
        help="draw every trial from the base frame instead of the best-so-far",
    )
    p.add_argument("--t-policy", choices=("fixed", "random"), default="fixed")
    p.add_argument("--merit-window", type=int, default=None)
    p.add_argument("--format", choices=("csv", "human"), default="human")
    p.set_defaults(func=_cmd_random_search)

    p = sub.add_parser("circulant-scan", help="scan cyclic seeds for good codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rmin", type=int, default=None)
    p.add_argument("--rmax", type=int, default=None)
    p.add_argument(
        "--full", action="store_true", help="allow the hours-long n >= 8 scans"
    )
    p.add_argument(
        "--best",
        action="store_true",
        help="keep only the best distance per (n, k, c)",
    )
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--out", default=None, help="write CSV here instead of stdout")
    p.add_argument("--format", choices=("csv", "human"), default="csv")
    p.set_defaults(func=_cmd_circulant_scan)

    p = sub.add_parser("synth", help="synthesize the encoding circuit")
    _add_code_argument(p)
    p.add_argument("--out", default=None, help="write the circuit here")
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("nrc", help="count distinct row operations N(r, c)")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p.set_defaults(func=_cmd_nrc)

    p = sub.add_parser("catalog", help="list built-in codes or show one")
    p.add_argument("action", choices=("list", "show"), nargs="?", default="list")
    p.add_argument("name", nargs="?", default=None)
    p.set_defaults(func=_cmd_catalog)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _CliError as exc:
        print(f"eaqec: {exc}", file=sys.stderr)
        return exc.status
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
