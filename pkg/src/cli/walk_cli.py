"""
urnwalk: expected maximum of the urn walk and its with-replacement twin.

Verbs:
    compute   one exact value
    table     both result tables as CSV
    figure    the convergence series as CSV
    bench     method timings as CSV
    sample    Monte Carlo estimate
    config    show or persist defaults
"""

import argparse
import json
import sys
from contextlib import contextmanager
from dataclasses import asdict
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Optional, TextIO

from ..common.verbose import set_verbose, timed, vprint
from ..config.settings import get_settings_file, load_settings, parse_setting, save_settings, saved_settings
from ..reporting.bench import parse_flag_matrix, run_benchmark, write_bench_csv
from ..reporting.formatting import format_decimal, format_exact
from ..reporting.tables import TABLE_HEADER, build_figure_series, build_table, write_figure_csv, write_table_csv
from ..walk.core import Ratio, WalkConfig
from ..walk.enumeration import EnumerationKind, EnumerationMethod, EnumerationReport, run_method
from ..walk.iid import ONE_THIRD, IidWalkConfig, expected_max_iid, expected_max_iid_ratio
from ..walk.montecarlo import sample_iid_walk, sample_urn_walk
from ..walk.oracle import expected_max_dp
from ..walk.workers import enumerate_partitioned

METHOD_CHOICES = [k.value for k in EnumerationKind]
PRUNABLE = {EnumerationKind.COMBINATIONS_RECURSIVE, EnumerationKind.COMBINATIONS_ITERATIVE}

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_MARKED_CELLS = 2


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


def _method_list(text: str) -> list[EnumerationKind]:
    kinds = []
    for name in (part.strip() for part in text.split(",")):
        if name not in METHOD_CHOICES:
            raise argparse.ArgumentTypeError(f"unknown method {name!r} (choose from {', '.join(METHOD_CHOICES)})")
        kinds.append(EnumerationKind(name))
    return kinds


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", action="store_true", help="Show timing and instrumentation on stderr")

    ap = argparse.ArgumentParser(
        prog="urnwalk",
        description="Exact expected maximum of a random walk drawn from an urn without replacement",
    )
    sub = ap.add_subparsers(dest="verb", required=True)

    compute = sub.add_parser("compute", parents=[common], help="Compute one exact expectation")
    compute.add_argument("--model", choices=["urn", "iid"], default="urn")
    compute.add_argument("--delta", type=int, required=True, help="Number of white marbles (δ)")
    compute.add_argument("--method", choices=METHOD_CHOICES, default="dp", help="Urn engine (default: dp)")
    compute.add_argument("--prune-horizon", action="store_true", help="Stop each walk once its maximum is settled")
    compute.add_argument("--prune-lex", action="store_true", help="Skip lexicographic blocks with maximum 0")
    compute.add_argument("--workers", type=int, default=None, help="Partitioned enumeration (combos-iter only)")
    compute.add_argument("--exhaustive-cap", type=int, default=None, help="Largest delta for the exhaustive method")
    compute.add_argument("--reds", type=int, default=None, help="Override the red count (urn model)")
    compute.add_argument("--p", type=_fraction, default=None, help="Up probability (iid model, default 1/3)")
    compute.add_argument("--steps", type=int, default=None, help="Horizon override (iid model, default 3δ/2)")
    compute.add_argument("--format", choices=["text", "json", "csv"], default="text")
    compute.add_argument("--precision", type=int, default=None, help="Decimal places (default 6)")

    table = sub.add_parser("table", parents=[common], help="Write both result tables as CSV")
    table.add_argument("--delta-max", type=int, required=True)
    table.add_argument("--methods", type=_method_list, default=[EnumerationKind.DP],
                       help="Comma-separated urn methods (default: dp)")
    table.add_argument("--prune-horizon", action="store_true")
    table.add_argument("--prune-lex", action="store_true")
    table.add_argument("--workers", type=int, default=None)
    table.add_argument("--exhaustive-cap", type=int, default=None)
    table.add_argument("--precision", type=int, default=None)
    table.add_argument("--out", default=None, help="Output CSV path, '-' for stdout")
    table.add_argument("--strict", action="store_true", help="Exit non-zero if any cell is marked")

    figure = sub.add_parser("figure", parents=[common], help="Write the convergence series as CSV")
    figure.add_argument("--delta-max", type=int, required=True)
    figure.add_argument("--precision", type=int, default=None)
    figure.add_argument("--out", default=None, help="Output CSV path, '-' for stdout")

    bench = sub.add_parser("bench", parents=[common], help="Time the enumeration methods")
    bench.add_argument("--delta-min", type=int, default=2)
    bench.add_argument("--delta-max", type=int, required=True)
    bench.add_argument("--methods", type=_method_list,
                       default=[EnumerationKind.COMBINATIONS_RECURSIVE, EnumerationKind.COMBINATIONS_ITERATIVE],
                       help="Comma-separated methods (default: combos,combos-iter)")
    bench.add_argument("--flags", default="all", help="Pruning flag matrix: none, horizon, lex, both, all")
    bench.add_argument("--timeout", type=float, default=None, help="Seconds per cell, 0 = none")
    bench.add_argument("--exhaustive-cap", type=int, default=None)
    bench.add_argument("--out", default=None, help="Output CSV path, '-' for stdout")
    bench.add_argument("--strict", action="store_true", help="Exit non-zero if any cell is marked")

    sample = sub.add_parser("sample", parents=[common], help="Monte Carlo estimate")
    sample.add_argument("--model", choices=["urn", "iid"], default="urn")
    sample.add_argument("--delta", type=int, required=True)
    sample.add_argument("--trials", type=int, default=None)
    sample.add_argument("--seed", type=int, default=None)
    sample.add_argument("--workers", type=int, default=None)
    sample.add_argument("--batch", type=int, default=None, help="Trials per vectorised batch")
    sample.add_argument("--reds", type=int, default=None)
    sample.add_argument("--p", type=_fraction, default=None)
    sample.add_argument("--steps", type=int, default=None)
    sample.add_argument("--format", choices=["text", "json"], default="text")
    sample.add_argument("--precision", type=int, default=None)

    config = sub.add_parser("config", parents=[common], help="Show or persist defaults")
    config.add_argument("action", choices=["show", "set"])
    config.add_argument("key", nargs="?")
    config.add_argument("value", nargs="?")
    return ap


def _setting(args: argparse.Namespace, name: str, settings: dict[str, Any]) -> Any:
    value = getattr(args, name, None)
    if value is None:
        return settings[name]
    return parse_setting(name, value)


@contextmanager
def _output(path: str) -> Iterator[TextIO]:
    if path == "-":
        yield sys.stdout
        return
    out_path = Path(path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with open(out_path, "w", encoding="utf-8", newline="") as f:
        yield f
    print(f"Wrote: {out_path}", file=sys.stderr)


def _default_out(args: argparse.Namespace, settings: dict[str, Any], name: str) -> str:
    return args.out if args.out is not None else str(Path(settings["output_dir"]) / name)


def _iid_config(args: argparse.Namespace) -> IidWalkConfig:
    if args.steps is not None:
        steps = args.steps
    else:
        steps = WalkConfig(args.delta).n
    return IidWalkConfig(steps, args.p if args.p is not None else ONE_THIRD)


def _validate_compute(args: argparse.Namespace, workers: int, cap: int) -> None:
    kind = EnumerationKind(args.method)
    if args.model == "iid":
        if args.method != EnumerationKind.DP.value:
            raise ValueError("the iid model is computed by dp only; drop --method")
        if args.reds is not None:
            raise ValueError("--reds applies to the urn model only")
        if args.prune_horizon or args.prune_lex or workers > 1:
            raise ValueError("pruning flags and --workers apply to the urn model only")
        return
    if args.p is not None or args.steps is not None:
        raise ValueError("--p and --steps apply to the iid model only")
    if (args.prune_horizon or args.prune_lex) and kind not in PRUNABLE:
        raise ValueError(f"pruning flags apply to combos and combos-iter, not {args.method}")
    if workers > 1 and kind is not EnumerationKind.COMBINATIONS_ITERATIVE:
        raise ValueError(f"--workers > 1 needs --method combos-iter, not {args.method}")
    if kind is EnumerationKind.EXHAUSTIVE and args.delta > cap:
        raise ValueError(
            f"exhaustive enumeration is capped at delta={cap} (n! permutations); "
            f"use --exhaustive-cap to raise it or another method"
        )


def cmd_compute(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    cap = _setting(args, "exhaustive_cap", settings)
    precision = _setting(args, "precision", settings)
    workers = _setting(args, "workers", settings)
    if args.workers is None and args.method != EnumerationKind.COMBINATIONS_ITERATIVE.value:
        # configured workers apply to combos-iter only, as in `table`
        workers = 1
    _validate_compute(args, workers, cap)

    report: Optional[EnumerationReport] = None
    if args.model == "iid":
        iid_cfg = _iid_config(args)
        with timed("Computation"):
            ratio = expected_max_iid_ratio(iid_cfg)
        method_label = "dp"
        n = iid_cfg.steps
        reds = args.delta // 2
    else:
        cfg = WalkConfig(args.delta, args.reds)
        method = EnumerationMethod.parse(args.method, args.prune_horizon, args.prune_lex)
        with timed("Computation"):
            if workers > 1:
                report = enumerate_partitioned(cfg, workers, args.prune_horizon, args.prune_lex)
            else:
                report = run_method(cfg, method, cap)
        ratio = report.ratio
        method_label = report.method
        n = cfg.n
        reds = cfg.reds
        vprint(
            f"  sequences evaluated {report.sequences_evaluated:,}, skipped {report.sequences_skipped:,}, "
            f"nodes pruned {report.nodes_pruned:,}, steps {report.steps_evaluated:,}"
        )

    _print_value(args, ratio, method_label, n, reds, precision, report)
    return EXIT_OK


def _print_value(
    args: argparse.Namespace, ratio: Ratio, method: str, n: int, reds: int, precision: int,
    report: Optional[EnumerationReport],
) -> None:
    value = ratio.value
    decimal = format_decimal(value, precision)
    if args.format == "json":
        payload = {
            "model": args.model,
            "delta": args.delta,
            "n": n,
            "method": method,
            "exact": format_exact(value),
            "ratio": f"{ratio.numerator}/{ratio.denominator}",
            "decimal": decimal,
        }
        if report is not None:
            payload.update(
                elapsed_ms=round(report.elapsed * 1000, 3),
                sequences_evaluated=report.sequences_evaluated,
                sequences_skipped=report.sequences_skipped,
                nodes_pruned=report.nodes_pruned,
                steps_evaluated=report.steps_evaluated,
            )
        print(json.dumps(payload, sort_keys=True))
    elif args.format == "csv":
        print(",".join(TABLE_HEADER))
        print(",".join(str(v) for v in [
            args.delta, args.delta, reds, args.model, method, format_exact(value), decimal,
            f"{report.elapsed * 1000:.3f}" if report else "",
            report.sequences_evaluated if report else 0,
            report.nodes_pruned if report else 0,
        ]))
    elif value == 0:
        print("0")
    else:
        print(f"{ratio} ≈ {decimal}")


def cmd_table(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    workers = _setting(args, "workers", settings)
    methods = [
        EnumerationMethod(kind, args.prune_horizon, args.prune_lex) if kind in PRUNABLE else EnumerationMethod(kind)
        for kind in args.methods
    ]
    precision = _setting(args, "precision", settings)
    with timed("Table"):
        rows = build_table(args.delta_max, methods, _setting(args, "exhaustive_cap", settings), workers, precision)
    with _output(_default_out(args, settings, "table.csv")) as out:
        write_table_csv(rows, out)
    marked = [r for r in rows if not r.ok]
    for row in marked:
        print(f"Marked: delta={row.delta} {row.method} {row.status}", file=sys.stderr)
    return EXIT_MARKED_CELLS if args.strict and marked else EXIT_OK


def cmd_figure(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    with timed("Figure series"):
        series = build_figure_series(args.delta_max)
    with _output(_default_out(args, settings, "figure.csv")) as out:
        write_figure_csv(series, out, _setting(args, "precision", settings))
    return EXIT_OK


def cmd_bench(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    flag_matrix = parse_flag_matrix(args.flags)
    if args.delta_min < 0 or args.delta_min > args.delta_max:
        raise ValueError(f"need 0 <= delta-min <= delta-max, got {args.delta_min}..{args.delta_max}")
    deltas = [d for d in range(args.delta_min, args.delta_max + 1) if d % 2 == 0]
    timeout = settings["bench_timeout"] if args.timeout is None else parse_setting("bench_timeout", args.timeout)
    with timed("Benchmark"):
        records = run_benchmark(
            deltas, args.methods, flag_matrix, timeout, _setting(args, "exhaustive_cap", settings)
        )
    with _output(_default_out(args, settings, "bench.csv")) as out:
        write_bench_csv(records, out)
    marked = [r for r in records if not r.ok]
    for record in marked:
        print(f"Marked: delta={record.delta} {record.method} {record.status}", file=sys.stderr)
    return EXIT_MARKED_CELLS if args.strict and marked else EXIT_OK


def cmd_sample(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    trials = _setting(args, "trials", settings)
    seed = _setting(args, "seed", settings)
    workers = _setting(args, "workers", settings)
    batch = _setting(args, "sample_batch", settings) if args.batch is None else parse_setting("sample_batch", args.batch)
    precision = _setting(args, "precision", settings)

    if args.model == "urn":
        if args.p is not None or args.steps is not None:
            raise ValueError("--p and --steps apply to the iid model only")
        cfg = WalkConfig(args.delta, args.reds)
        with timed("Sampling"):
            report = sample_urn_walk(cfg, trials, seed, workers, batch)
        exact = expected_max_dp(cfg)
    else:
        if args.reds is not None:
            raise ValueError("--reds applies to the urn model only")
        iid_cfg = _iid_config(args)
        with timed("Sampling"):
            report = sample_iid_walk(iid_cfg, trials, seed, workers, batch)
        exact = expected_max_iid(iid_cfg)

    if args.format == "json":
        payload = asdict(report)
        payload.update(delta=args.delta, exact=format_exact(exact), within_3se=report.within(exact))
        print(json.dumps(payload, sort_keys=True))
    else:
        print(
            f"mean {report.mean_max:.{precision}f} ± {report.std_error:.{precision}f} "
            f"({report.trials:,} trials, seed {report.seed}, {report.generator}, {report.workers} worker(s))"
        )
        verdict = "yes" if report.within(exact) else "no"
        print(f"exact {format_exact(exact)} ≈ {format_decimal(exact, precision)}; within 3 SE: {verdict}")
    return EXIT_OK


def cmd_config(args: argparse.Namespace, settings: dict[str, Any]) -> int:
    if args.action == "show":
        print(json.dumps(settings, indent=2, sort_keys=True))
        return EXIT_OK
    if args.key is None or args.value is None:
        raise ValueError("usage: urnwalk config set KEY VALUE")
    stored = saved_settings()
    stored[args.key] = parse_setting(args.key, args.value)
    path = save_settings(stored)
    print(f"Saved {args.key} = {stored[args.key]!r} to {path}")
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "figure": cmd_figure,
    "bench": cmd_bench,
    "sample": cmd_sample,
    "config": cmd_config,
}


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    set_verbose(args.verbose)
    try:
        settings = load_settings()
        vprint(f"Settings file: {get_settings_file()}")
        return COMMANDS[args.verb](args, settings)
    except (ValueError, RuntimeError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
