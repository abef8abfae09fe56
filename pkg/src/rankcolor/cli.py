"""Command-line entry point.

Exit codes: 0 success / valid solution, 1 invalid solution, 2 usage error,
3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from rankcolor.bounds import bounds_csv
from rankcolor.coloring import read_coloring, verify
from rankcolor.errors import DomainError, ValidationError
from rankcolor.export import FORMATS, export
from rankcolor.oracle import exact_psi_c
from rankcolor.runner import load_config, solve

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


def _cmd_solve(args) -> int:
    config = load_config(args.config)
    if args.output_dir is not None:
        config = replace(config, output_dir=Path(args.output_dir))
    summary = solve(config)
    for r in summary.runs:
        found = "none" if r.verified_colors is None else f"{r.verified_colors} colors -> {r.solution}"
        print(f"seed {r.seed:>6}  palette {r.palette_size:>3}  gens {r.generations:>5}  "
              f"{r.wall_time_s:8.1f}s  verified: {found}")
    print(f"best verified coloring of K{summary.n}: {summary.best_verified}")
    return EXIT_OK


def _cmd_verify(args) -> int:
    try:
        coloring, meta = read_coloring(args.file)
    except ValidationError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    report = verify(coloring)
    if args.json:
        print(json.dumps({"file": str(args.file), "n": coloring.n, **report.to_dict()}, indent=2))
    else:
        print(f"{args.file}: K{coloring.n}, palette {coloring.palette_size}")
        print(f"  colors used : {report.color_count}")
        print(f"  complete    : {report.is_complete}")
        print(f"  connected   : {report.is_connected}")
        print("  class sizes : " + " ".join(f"{c}:{s}" for c, s in report.class_sizes.items()))
        split = {c: k for c, k in report.class_components.items() if k != 1}
        if split:
            print("  disconnected classes (components): " + " ".join(f"{c}:{k}" for c, k in split.items()))
        if report.uncovered_pairs:
            print("  uncovered pairs: " + " ".join(f"({a},{b})" for a, b in report.uncovered_pairs))
    return EXIT_OK if report.is_valid else EXIT_INVALID


def _cmd_bounds(args) -> int:
    text = bounds_csv(args.n_min, args.n_max)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    result = exact_psi_c(args.n, args.budget)
    print(json.dumps(result.to_dict()))
    return EXIT_OK


def _cmd_export(args) -> int:
    try:
        coloring, _ = read_coloring(args.file)
    except ValidationError as exc:
        print(f"{args.file}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = export(coloring, args.format)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rankcolor",
        description="Rank GA search, verification and bounds for connected complete edge-colorings of K_n.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run the Rank GA once per configured seed")
    p.add_argument("config", help="TOML run configuration")
    p.add_argument("--output-dir", help="override output_dir from the config")
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("verify", help="check a coloring file; exit 0 iff complete and connected")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("bounds", help="CSV of tabulated and analytic bounds for n_min..n_max")
    p.add_argument("n_min", type=int)
    p.add_argument("n_max", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("oracle", help="exact psi_c(n) by exhaustive search (n <= 5, n = 6 with --budget)")
    p.add_argument("n", type=int)
    p.add_argument("--budget", type=int, help="maximum number of search nodes")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("export", help="render a coloring file as DOT or a per-class listing")
    p.add_argument("file")
    p.add_argument("--format", required=True, choices=sorted(FORMATS))
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (DomainError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
