"""Command-line front end: compute, verify and bench subcommands.

Exit codes: 0 success, 1 verify mismatch, 2 malformed input file or usage,
3 validation failure, 4 resource limit (grid cell budget, brute-force size
cap). Errors are reported on stderr as one line "taustar: <Code>: <message>"
so callers can match on the stable code.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from dataclasses import dataclass
from statistics import median
from time import perf_counter
from typing import Sequence

import numpy as np

from .core import Dataset, validate
from .errors import (
    CsvFormatError,
    InvalidPermutationCountError,
    TauStarError,
    TooFewSamplesError,
)
from .fast import tstar_fast
from .grid import DEFAULT_MAX_GRID_CELLS
from .inference import permutation_test
from .oracle import count_quadruples_naive, tstar_naive
from .result import TauStarResult

__all__ = ["RunConfig", "main", "cmd_compute", "cmd_verify", "cmd_bench", "bench_rows"]

DEFAULT_NAIVE_SIZE_CAP = 200

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4

_EXIT_BY_CODE = {
    "CsvFormat": EXIT_PARSE,
    "LengthMismatch": EXIT_VALIDATION,
    "NonFiniteValue": EXIT_VALIDATION,
    "TooFewSamples": EXIT_VALIDATION,
    "InvalidPermutationCount": EXIT_VALIDATION,
    "GridTooLarge": EXIT_RESOURCE,
    "NaiveSizeCap": EXIT_RESOURCE,
}


class NaiveSizeCapError(TauStarError):
    """Brute-force method refused because n exceeds the configured cap."""

    code = "NaiveSizeCap"


@dataclass
class RunConfig:
    input_path: str
    x_col: str = "0"
    y_col: str = "1"
    header: bool = False
    method: str = "auto"
    permutations: int = 0
    seed: int = 0
    fmt: str = "json"
    max_grid_cells: int = DEFAULT_MAX_GRID_CELLS
    naive_size_cap: int = DEFAULT_NAIVE_SIZE_CAP
    force_naive: bool = False


def _resolve_column(selector: str, header_row: list[str] | None, n_fields: int) -> int:
    try:
        idx = int(selector)
    except ValueError:
        if header_row is None:
            raise CsvFormatError(
                f"column {selector!r} is not an index and no --header was given"
            )
        try:
            idx = header_row.index(selector)
        except ValueError:
            raise CsvFormatError(f"column {selector!r} not found in header {header_row}")
    if not 0 <= idx < n_fields:
        raise CsvFormatError(f"column index {idx} outside 0..{n_fields - 1}")
    return idx


def _read_xy(cfg: RunConfig) -> tuple[list[float], list[float]]:
    """Parse the CSV input. Rows with the wrong field count are errors."""
    try:
        fh = open(cfg.input_path, newline="")
    except OSError as exc:
        raise CsvFormatError(f"cannot read {cfg.input_path}: {exc}")
    with fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CsvFormatError(f"{cfg.input_path} is empty", line=1)

    header_row = None
    first_data = 0
    if cfg.header:
        header_row = rows[0]
        first_data = 1
    if first_data >= len(rows):
        raise CsvFormatError("no data rows after header", line=1)

    arity = len(rows[first_data])
    x_idx = _resolve_column(cfg.x_col, header_row, arity)
    y_idx = _resolve_column(cfg.y_col, header_row, arity)

    xs: list[float] = []
    ys: list[float] = []
    for offset, row in enumerate(rows[first_data:]):
        line = first_data + offset + 1
        if len(row) != arity:
            raise CsvFormatError(
                f"line {line}: expected {arity} fields, got {len(row)}", line=line
            )
        try:
            xs.append(float(row[x_idx]))
            ys.append(float(row[y_idx]))
        except ValueError:
            raise CsvFormatError(f"line {line}: non-numeric value in {row}", line=line)
    return xs, ys


def _check_naive_cap(cfg: RunConfig, n: int) -> None:
    if n > cfg.naive_size_cap and not cfg.force_naive:
        raise NaiveSizeCapError(
            f"brute-force method refused for n={n} > cap {cfg.naive_size_cap} "
            f"(O(n^4) would be slow); pass --force-naive to override or use --method fast"
        )


def _result_fields(result: TauStarResult) -> dict:
    fields: dict = {"n": result.n, "m_x": result.m_x, "m_y": result.m_y}
    if result.n_c is not None:
        fields["n_c"] = result.n_c
        fields["n_d"] = result.n_d
    fields.update(
        numerator=result.numerator,
        denominator=result.denominator,
        tstar=result.tstar,
        method=result.method,
    )
    return fields


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report))
    else:
        for key, value in report.items():
            print(f"{key}: {value}")


def cmd_compute(cfg: RunConfig) -> int:
    xs, ys = _read_xy(cfg)
    d = validate(xs, ys)
    if cfg.permutations < 0:
        raise InvalidPermutationCountError(
            f"--permutations must be >= 0, got {cfg.permutations}"
        )

    method = cfg.method
    if method == "naive":
        _check_naive_cap(cfg, d.n)
    t0 = perf_counter()
    if method == "naive":
        result = tstar_naive(d)
    else:
        result = tstar_fast(d, max_grid_cells=cfg.max_grid_cells)
    elapsed_ms = (perf_counter() - t0) * 1000.0

    report = _result_fields(result)
    if cfg.permutations > 0:
        test = permutation_test(
            d, cfg.permutations, cfg.seed, max_grid_cells=cfg.max_grid_cells
        )
        report["p_value"] = test.p_value
        report["permutations"] = test.permutations
        report["seed"] = test.seed
    report["elapsed_ms"] = elapsed_ms
    _emit(report, cfg.fmt)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    """Run the fast and brute-force methods and require exact agreement."""
    xs, ys = _read_xy(cfg)
    d = validate(xs, ys)
    _check_naive_cap(cfg, d.n)

    fast = tstar_fast(d, max_grid_cells=cfg.max_grid_cells)
    n_c, n_d = count_quadruples_naive(d)
    naive = tstar_naive(d)

    checks = {
        "n_c": (fast.n_c, n_c),
        "n_d": (fast.n_d, n_d),
        "numerator": (fast.numerator, naive.numerator),
    }
    mismatches = {
        key: {"fast": got, "naive": want}
        for key, (got, want) in checks.items()
        if got != want
    }
    report = {
        "n": d.n,
        "agree": not mismatches,
        "fast": {"n_c": fast.n_c, "n_d": fast.n_d, "numerator": fast.numerator},
        "naive": {"n_c": n_c, "n_d": n_d, "numerator": naive.numerator},
        "denominator": fast.denominator,
        "tstar": fast.tstar,
    }
    if mismatches:
        report["mismatches"] = mismatches
    _emit(report, cfg.fmt)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def _bench_data(distribution: str, n: int, rng: np.random.Generator) -> Dataset:
    if distribution == "monotone":
        xs = rng.permutation(n).astype(np.float64)
        return Dataset(xs, xs.copy())
    if distribution == "independent":
        return Dataset(rng.random(n), rng.random(n))
    if distribution == "mixed-ties":
        alphabet = max(1, -(-n // 10))  # ceil(n/10)
        return Dataset(
            rng.integers(0, alphabet, n).astype(np.float64),
            rng.integers(0, alphabet, n).astype(np.float64),
        )
    raise ValueError(f"unknown distribution {distribution!r}")


def bench_rows(
    sizes: Sequence[int],
    repeats: int,
    distribution: str,
    seed: int,
    max_grid_cells: int = DEFAULT_MAX_GRID_CELLS,
) -> list[dict]:
    """Time the fast method per size; median of `repeats` runs per size."""
    if not sizes or any(n < 4 for n in sizes):
        raise TooFewSamplesError("bench sizes must be a non-empty list of n >= 4")
    rng = np.random.default_rng(seed)
    rows: list[dict] = []
    prev: float | None = None
    for n in sizes:
        d = _bench_data(distribution, n, rng)
        times = []
        result = None
        for _ in range(max(1, repeats)):
            t0 = perf_counter()
            result = tstar_fast(d, max_grid_cells=max_grid_cells)
            times.append(perf_counter() - t0)
        med = median(times)
        assert result is not None
        rows.append(
            {
                "n": n,
                "m_x": result.m_x,
                "m_y": result.m_y,
                "median_ms": med * 1000.0,
                "ratio_vs_prev": (med / prev) if prev else None,
            }
        )
        prev = med
    return rows


def cmd_bench(args: argparse.Namespace) -> int:
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    rows = bench_rows(
        sizes, args.repeats, args.distribution, args.seed, args.max_grid_cells
    )
    if args.fmt == "json":
        print(json.dumps(rows))
    else:
        print(f"{'n':>8} {'m_x':>8} {'m_y':>8} {'median_ms':>12} {'ratio':>8}")
        for row in rows:
            ratio = "" if row["ratio_vs_prev"] is None else f"{row['ratio_vs_prev']:.2f}"
            print(
                f"{row['n']:>8} {row['m_x']:>8} {row['m_y']:>8} "
                f"{row['median_ms']:>12.3f} {ratio:>8}"
            )
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="taustar",
        description="Exact tau-star sign covariance and permutation test for CSV data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="CSV file of paired samples")
        p.add_argument("--x-col", default="0", help="x column index or header name")
        p.add_argument("--y-col", default="1", help="y column index or header name")
        p.add_argument("--header", action="store_true", help="first row is a header")
        p.add_argument("--format", dest="fmt", choices=["json", "text"], default="json")
        p.add_argument("--max-grid-cells", type=int, default=DEFAULT_MAX_GRID_CELLS)
        p.add_argument("--naive-size-cap", type=int, default=DEFAULT_NAIVE_SIZE_CAP)
        p.add_argument("--force-naive", action="store_true")

    pc = sub.add_parser("compute", help="compute tau-star, optionally with a test")
    add_io_args(pc)
    pc.add_argument("--method", choices=["auto", "fast", "naive"], default="auto")
    pc.add_argument("--permutations", type=int, default=0, help="0 disables the test")
    pc.add_argument("--seed", type=int, default=0)

    pv = sub.add_parser("verify", help="cross-check fast vs brute-force counts")
    add_io_args(pv)

    pb = sub.add_parser("bench", help="time the fast method across sizes")
    pb.add_argument("--sizes", required=True, help="comma list, e.g. 1000,2000,4000")
    pb.add_argument("--repeats", type=int, default=3)
    pb.add_argument(
        "--distribution",
        choices=["independent", "monotone", "mixed-ties"],
        default="monotone",
    )
    pb.add_argument("--seed", type=int, default=0)
    pb.add_argument("--format", dest="fmt", choices=["json", "text"], default="text")
    pb.add_argument("--max-grid-cells", type=int, default=DEFAULT_MAX_GRID_CELLS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "compute":
            cfg = RunConfig(
                input_path=args.input,
                x_col=args.x_col,
                y_col=args.y_col,
                header=args.header,
                method=args.method,
                permutations=args.permutations,
                seed=args.seed,
                fmt=args.fmt,
                max_grid_cells=args.max_grid_cells,
                naive_size_cap=args.naive_size_cap,
                force_naive=args.force_naive,
            )
            return cmd_compute(cfg)
        if args.command == "verify":
            cfg = RunConfig(
                input_path=args.input,
                x_col=args.x_col,
                y_col=args.y_col,
                header=args.header,
                fmt=args.fmt,
                max_grid_cells=args.max_grid_cells,
                naive_size_cap=args.naive_size_cap,
                force_naive=args.force_naive,
            )
            return cmd_verify(cfg)
        return cmd_bench(args)
    except TauStarError as exc:
        print(f"taustar: {exc.code}: {exc}", file=sys.stderr)
        return _EXIT_BY_CODE.get(exc.code, EXIT_VALIDATION)


if __name__ == "__main__":
    raise SystemExit(main())
