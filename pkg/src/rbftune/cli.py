"""Command-line front end.

Subcommands
-----------
tune      tune one configuration and print a JSON report
bench     run the synthetic benchmark matrices and write CSV/Markdown tables
real      tune on measurement data from a CSV file (MAE and relative MAE)
gen-data  write a synthetic scattered-data CSV

Data goes to standard output or to files; diagnostics go to standard
error. Exit codes: 0 success, 1 runtime or numerical failure, 2 usage
error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .data import halton_points, load_csv, random_points, eval_test_function
from .exceptions import RbfTuneError
from .tuning import TunedRbfRegressor, TuneReport, tune_report

_KERNEL_CHOICES = ("ga", "m2", "w2")
_METHOD_CHOICES = ("loocv", "loocv-star", "bo")
_FUNCTION_CHOICES = ("f1", "f2")
_POINT_CHOICES = ("random", "halton")

_DEFAULT_SIZES = (250, 500, 1000)
_DEFAULT_XIS = (0.1, 0.01, 0.001)
_DEFAULT_FRACTIONS = (0.2, 0.4, 0.6, 0.8, 1.0)
_DEFAULT_TEST_SIZE = 1000
_SWEEP_XI = 0.01


def _derived_seed(master: int, *key: int) -> int:
    """Stable child seed for a benchmark cell or data set."""
    return int(np.random.SeedSequence([master, *key]).generate_state(1, np.uint64)[0])


def _locations(kind: str, n: int, seed: int) -> np.ndarray:
    if kind == "halton":
        return halton_points(n, 2)
    return random_points(n, 2, seed)


def _fmt(value) -> str:
    """Full-precision text for CSV fields (shortest round-trip form)."""
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(float(value))  # plain float: numpy scalars repr differently
    return str(value)


def _json_ready(report: TuneReport, **extra):
    record = dataclasses.asdict(report)
    record["trace"] = [
        [e, v if math.isfinite(v) else None] for e, v in record["trace"]
    ]
    record.update(extra)
    return record


def _write_csv(path: Path, fieldnames, rows) -> None:
    with open(path, "w", newline="") as handle:
        writer = csv.DictWriter(handle, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _fmt(row.get(k)) for k in fieldnames})


def _write_markdown(path: Path, title, fieldnames, rows) -> None:
    def cell(row, name):
        value = row.get(name)
        if value is None:
            return ""
        if name in ("mae", "rmae", "time_s"):
            return f"{value:.6e}"
        if name in ("epsilon_star", "xi", "centers_pct"):
            return f"{value:.6f}"
        return str(value)

    lines = [f"# {title}", ""]
    lines.append("| " + " | ".join(fieldnames) + " |")
    lines.append("|" + "|".join("---" for _ in fieldnames) + "|")
    for row in rows:
        lines.append("| " + " | ".join(cell(row, name) for name in fieldnames) + " |")
    path.write_text("\n".join(lines) + "\n")


def _build_estimator(args, method: str, kernel: str, xi: float, seed: int) -> TunedRbfRegressor:
    return TunedRbfRegressor(
        kernel=kernel,
        method=method,
        eps_max=args.eps_max,
        grid_size=args.grid,
        nstart=args.nstart,
        niter=args.niter,
        xi=xi,
        random_state=seed,
    )


# ---------------------------------------------------------------------------
# tune
# ---------------------------------------------------------------------------

def _cmd_tune(args) -> int:
    data_seed = _derived_seed(args.seed, 1)
    test_seed = _derived_seed(args.seed, 2)
    center_seed = _derived_seed(args.seed, 3)
    tuner_seed = _derived_seed(args.seed, 4)

    X = _locations(args.points, args.n, data_seed)
    y = eval_test_function(args.function, X)
    X_test = random_points(_DEFAULT_TEST_SIZE, 2, test_seed)
    y_test = eval_test_function(args.function, X_test)

    centers = None
    if args.centers is not None:
        if not 0 < args.centers <= 1:
            raise ValueError("--centers must lie in (0, 1]")
        if args.centers < 1:
            m = math.ceil(args.centers * args.n)
            rng = np.random.default_rng(center_seed)
            centers = X[np.sort(rng.choice(args.n, size=m, replace=False))]

    estimator = _build_estimator(args, args.method, args.kernel, args.xi, tuner_seed)
    report = tune_report(estimator, X, y, X_test, y_test, centers=centers)
    record = _json_ready(
        report, function=args.function, points=args.points, seed=args.seed
    )
    print(json.dumps(record))
    return 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

_INTERP_FIELDS = ("function", "points", "kernel", "n", "method", "xi", "epsilon_star", "mae")
_APPROX_FIELDS = ("kernel", "points", "n", "centers_pct", "epsilon_star", "mae")


def _interp_cells(args, function, kind, kernels):
    """Row skeletons for one interpolation table, in output order."""
    cells = []
    for n in args.sizes:
        for kernel in kernels:
            for method in args.methods:
                xis = args.xis if method == "bo" else (None,)
                for xi in xis:
                    cells.append(
                        {
                            "function": function,
                            "points": kind,
                            "kernel": kernel,
                            "n": n,
                            "method": method,
                            "xi": xi,
                        }
                    )
    return cells


def _run_interp_cell(args, cell, index):
    data_seed = _derived_seed(args.seed, 10, args.sizes.index(cell["n"]), _POINT_CHOICES.index(cell["points"]))
    tuner_seed = _derived_seed(args.seed, 11, index)
    X = _locations(cell["points"], cell["n"], data_seed)
    y = eval_test_function(cell["function"], X)
    X_test = random_points(args.test_size, 2, _derived_seed(args.seed, 12))
    y_test = eval_test_function(cell["function"], X_test)
    xi = cell["xi"] if cell["xi"] is not None else _SWEEP_XI
    estimator = _build_estimator(args, cell["method"], cell["kernel"], xi, tuner_seed)
    report = tune_report(estimator, X, y, X_test, y_test)
    return {**cell, "epsilon_star": report.epsilon_star, "mae": report.mae_test,
            "time_s": report.elapsed}


def _run_approx_cell(args, cell, index):
    data_seed = _derived_seed(args.seed, 10, args.sizes.index(cell["n"]), _POINT_CHOICES.index(cell["points"]))
    tuner_seed = _derived_seed(args.seed, 13, index)
    center_seed = _derived_seed(args.seed, 14, index)
    X = _locations(cell["points"], cell["n"], data_seed)
    y = eval_test_function("f1", X)
    X_test = random_points(args.test_size, 2, _derived_seed(args.seed, 12))
    y_test = eval_test_function("f1", X_test)

    fraction = cell["centers_pct"] / 100.0
    centers = None
    if fraction < 1:
        m = math.ceil(fraction * cell["n"])
        rng = np.random.default_rng(center_seed)
        centers = X[np.sort(rng.choice(cell["n"], size=m, replace=False))]
    estimator = _build_estimator(args, "bo", cell["kernel"], _SWEEP_XI, tuner_seed)
    report = tune_report(estimator, X, y, X_test, y_test, centers=centers)
    return {**cell, "epsilon_star": report.epsilon_star, "mae": report.mae_test,
            "time_s": report.elapsed}


def _run_cells(pool, runner, args, cells):
    if pool is None:
        return [runner(args, cell, i) for i, cell in enumerate(cells)]
    futures = [pool.submit(runner, args, cell, i) for i, cell in enumerate(cells)]
    return [f.result() for f in futures]


def _cmd_bench(args) -> int:
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    tables = []
    square_kernels = [k for k in ("m2", "ga") if k in args.kernels]
    for function in args.functions:
        for kind in args.point_kinds:
            if square_kernels:
                tables.append(
                    (f"interp-{function}-{kind}-" + "".join(square_kernels),
                     "interp", _interp_cells(args, function, kind, square_kernels))
                )
    if "w2" in args.kernels:
        for kind in args.point_kinds:
            cells = []
            for function in args.functions:
                cells.extend(_interp_cells(args, function, kind, ["w2"]))
            tables.append((f"interp-{kind}-w2", "interp", cells))
    for kernel in args.kernels:
        cells = [
            {"kernel": kernel, "points": kind, "n": n, "centers_pct": round(frac * 100)}
            for n in args.sizes
            for kind in args.point_kinds
            for frac in args.fractions
        ]
        tables.append((f"approx-f1-{kernel}", "approx", cells))

    pool = ThreadPoolExecutor(max_workers=args.jobs) if args.jobs > 1 else None
    try:
        for name, flavor, cells in tables:
            runner = _run_interp_cell if flavor == "interp" else _run_approx_cell
            print(f"bench: {name} ({len(cells)} cells)", file=sys.stderr)
            rows = _run_cells(pool, runner, args, cells)
            fields = _INTERP_FIELDS if flavor == "interp" else _APPROX_FIELDS
            _write_csv(out_dir / f"{name}.csv", fields, rows)
            _write_markdown(
                out_dir / f"{name}.md", name, fields + ("time_s",), rows
            )
    finally:
        if pool is not None:
            pool.shutdown()
    print(f"bench: wrote {len(tables)} tables to {out_dir}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------------------
# real
# ---------------------------------------------------------------------------

_REAL_FIELDS = ("kernel", "method", "epsilon_star", "mae", "rmae", "n_train", "n_test")


def _cmd_real(args) -> int:
    X_all, y_all = load_csv(args.csv, dim=2, header=args.header)
    n_train, n_test = args.sizes
    total = n_train + n_test
    if len(X_all) < total:
        raise ValueError(
            f"{args.csv}: needs at least {total} rows for a {n_train}/{n_test} "
            f"split, found {len(X_all)}"
        )

    rng = np.random.default_rng(_derived_seed(args.seed, 21))
    picked = rng.choice(len(X_all), size=total, replace=False)
    X, y = X_all[picked[:n_train]], y_all[picked[:n_train]]
    X_test, y_test = X_all[picked[n_train:]], y_all[picked[n_train:]]

    records = []
    rows = []
    for kernel in args.kernels:
        for index, method in enumerate(("loocv", "bo")):
            tuner_seed = _derived_seed(args.seed, 22, _KERNEL_CHOICES.index(kernel), index)
            estimator = _build_estimator(args, method, kernel, args.xi, tuner_seed)
            report = tune_report(
                estimator, X, y, X_test, y_test, include_rmae=True
            )
            records.append(_json_ready(report, source=str(args.csv), seed=args.seed))
            rows.append(
                {
                    "kernel": kernel,
                    "method": method,
                    "epsilon_star": report.epsilon_star,
                    "mae": report.mae_test,
                    "rmae": report.rmae_test,
                    "time_s": report.elapsed,
                    "n_train": n_train,
                    "n_test": n_test,
                }
            )
    print(json.dumps(records))
    if args.out is not None:
        out_dir = Path(args.out)
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_csv(out_dir / "real.csv", _REAL_FIELDS, rows)
        _write_markdown(out_dir / "real.md", "real-data results",
                        _REAL_FIELDS + ("time_s",), rows)
    return 0


# ---------------------------------------------------------------------------
# gen-data
# ---------------------------------------------------------------------------

def _cmd_gen_data(args) -> int:
    X = _locations(args.points, args.n, _derived_seed(args.seed, 31))
    y = eval_test_function(args.function, X)
    lines = [
        ",".join([_fmt(float(v)) for v in row] + [_fmt(float(val))])
        for row, val in zip(X, y)
    ]
    text = "\n".join(lines) + "\n"
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)
    return 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _comma_list(cast, valid=None, flag=""):
    def parse(text):
        items = [cast(token) for token in text.split(",") if token.strip()]
        if not items:
            raise argparse.ArgumentTypeError(f"{flag}: empty list")
        if valid is not None:
            for item in items:
                if item not in valid:
                    raise argparse.ArgumentTypeError(
                        f"{flag}: {item!r} not in {sorted(valid)}"
                    )
        return tuple(items)

    return parse


def _add_search_flags(parser):
    parser.add_argument("--eps-max", type=float, default=20.0,
                        help="upper end of the shape-parameter interval")
    parser.add_argument("--grid", type=int, default=500,
                        help="grid size for the loocv method")
    parser.add_argument("--nstart", type=int, default=5,
                        help="random initial evaluations for bo")
    parser.add_argument("--niter", type=int, default=25,
                        help="Bayesian iterations for bo")
    parser.add_argument("--seed", type=int, default=0, help="master seed")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rbftune",
        description="RBF fitting with automatic shape-parameter selection",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    tune = sub.add_parser("tune", help="tune one configuration, print a JSON report")
    tune.add_argument("--method", choices=_METHOD_CHOICES, required=True)
    tune.add_argument("--kernel", choices=_KERNEL_CHOICES, required=True)
    tune.add_argument("--function", choices=_FUNCTION_CHOICES, default="f1")
    tune.add_argument("--points", choices=_POINT_CHOICES, default="halton")
    tune.add_argument("--n", type=int, default=500)
    tune.add_argument("--centers", type=float, default=None,
                      help="fraction of data locations used as centers, in (0, 1]")
    tune.add_argument("--xi", type=float, default=0.01,
                      help="exploration margin for bo")
    _add_search_flags(tune)
    tune.set_defaults(run=_cmd_tune)

    bench = sub.add_parser("bench", help="run the benchmark matrices, write CSV tables")
    bench.add_argument("--out", required=True, help="output directory")
    bench.add_argument("--sizes", type=_comma_list(int, flag="--sizes"),
                       default=_DEFAULT_SIZES)
    bench.add_argument("--functions", type=_comma_list(str, set(_FUNCTION_CHOICES), "--functions"),
                       default=_FUNCTION_CHOICES)
    bench.add_argument("--kernels", type=_comma_list(str, set(_KERNEL_CHOICES), "--kernels"),
                       default=_KERNEL_CHOICES)
    bench.add_argument("--methods", type=_comma_list(str, set(_METHOD_CHOICES), "--methods"),
                       default=_METHOD_CHOICES)
    bench.add_argument("--point-kinds", type=_comma_list(str, set(_POINT_CHOICES), "--point-kinds"),
                       default=_POINT_CHOICES)
    bench.add_argument("--xis", type=_comma_list(float, flag="--xis"), default=_DEFAULT_XIS)
    bench.add_argument("--fractions", type=_comma_list(float, flag="--fractions"),
                       default=_DEFAULT_FRACTIONS)
    bench.add_argument("--test-size", type=int, default=_DEFAULT_TEST_SIZE)
    bench.add_argument("--jobs", type=int, default=1, help="concurrent benchmark cells")
    _add_search_flags(bench)
    bench.set_defaults(run=_cmd_bench)

    real = sub.add_parser("real", help="tune on measurement data from a CSV file")
    real.add_argument("csv", help="CSV file of x1,x2,value records")
    real.add_argument("--sizes", type=_comma_list(int, flag="--sizes"), default=(1000, 500),
                      help="train,test subsample sizes")
    real.add_argument("--kernels", type=_comma_list(str, {"m2", "w2"}, "--kernels"),
                      default=("m2", "w2"),
                      help="kernels to run (ga is excluded: measurement data "
                           "lacks the regularity it needs)")
    real.add_argument("--xi", type=float, default=0.01)
    real.add_argument("--header", action="store_true", help="skip one header line")
    real.add_argument("--out", default=None, help="also write CSV/Markdown here")
    _add_search_flags(real)
    real.set_defaults(run=_cmd_real)

    gen = sub.add_parser("gen-data", help="write a synthetic scattered-data CSV")
    gen.add_argument("--points", choices=_POINT_CHOICES, default="halton")
    gen.add_argument("--n", type=int, default=500)
    gen.add_argument("--function", choices=_FUNCTION_CHOICES, default="f1")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", default=None, help="output file (default: stdout)")
    gen.set_defaults(run=_cmd_gen_data)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "sizes", None) is not None and args.command == "real":
        if len(args.sizes) != 2:
            parser.error("--sizes takes exactly two values: train,test")
    try:
        return args.run(args)
    except (RbfTuneError, ValueError, OSError) as exc:
        print(f"rbftune: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
