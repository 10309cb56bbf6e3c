"""
Benchmark harness for the enumeration methods.

Times every (method, δ, pruning flags) cell. Absolute times are
informational; the work counters (sequences evaluated, steps walked,
subtrees pruned) are what comparisons rely on.

When a timeout is set each cell runs in a child process that is
terminated once the timeout passes; the cell is then marked `timeout`.
"""

import csv
import multiprocessing
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from tqdm import tqdm

from ..common.verbose import is_verbose, vprint
from ..walk.core import WalkConfig
from ..walk.enumeration import (
    EXHAUSTIVE_CAP_DEFAULT,
    EnumerationKind,
    EnumerationMethod,
    EnumerationReport,
    InfeasibleError,
    run_method,
)
from .tables import STATUS_INFEASIBLE, STATUS_OK, STATUS_TIMEOUT

BENCH_HEADER = [
    "method", "delta", "prune_horizon", "prune_lexicographic", "elapsed_ms",
    "sequences_evaluated", "sequences_skipped", "nodes_pruned", "steps_evaluated", "status",
]

# (prune_horizon, prune_lexicographic) combinations by name
FLAG_MATRICES: dict[str, list[tuple[bool, bool]]] = {
    "none": [(False, False)],
    "horizon": [(True, False)],
    "lex": [(False, True)],
    "both": [(True, True)],
    "all": [(False, False), (True, False), (False, True), (True, True)],
}


@dataclass(frozen=True)
class BenchRecord:
    """Timing and work counters for one benchmark cell."""
    method: str
    delta: int
    prune_horizon: bool
    prune_lexicographic: bool
    elapsed: float
    sequences_evaluated: int = 0
    sequences_skipped: int = 0
    nodes_pruned: int = 0
    steps_evaluated: int = 0
    status: str = STATUS_OK

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


def parse_flag_matrix(name: str) -> list[tuple[bool, bool]]:
    try:
        return FLAG_MATRICES[name]
    except KeyError:
        raise ValueError(f"unknown flag matrix {name!r} (choose from {', '.join(FLAG_MATRICES)})") from None


def _cell_worker(conn, delta: int, method: EnumerationMethod, exhaustive_cap: int) -> None:
    try:
        conn.send(("ok", run_method(WalkConfig(delta), method, exhaustive_cap)))
    except InfeasibleError as e:
        conn.send((STATUS_INFEASIBLE, str(e)))
    except Exception as e:
        conn.send(("error", f"{type(e).__name__}: {e}"))
    finally:
        conn.close()


def _run_cell(
    delta: int, method: EnumerationMethod, exhaustive_cap: int, timeout: Optional[float]
) -> tuple[str, Optional[EnumerationReport]]:
    if not timeout:
        try:
            return STATUS_OK, run_method(WalkConfig(delta), method, exhaustive_cap)
        except InfeasibleError as e:
            vprint(f"  {method.label} delta={delta}: {e}")
            return STATUS_INFEASIBLE, None

    ctx = multiprocessing.get_context()
    receiver, sender = ctx.Pipe(duplex=False)
    process = ctx.Process(target=_cell_worker, args=(sender, delta, method, exhaustive_cap), daemon=True)
    process.start()
    sender.close()
    try:
        if not receiver.poll(timeout):
            vprint(f"  {method.label} delta={delta}: timed out after {timeout:.1f}s")
            return STATUS_TIMEOUT, None
        status, payload = receiver.recv()
    finally:
        if process.is_alive():
            process.terminate()
        process.join()
        receiver.close()
    if status == "error":
        raise RuntimeError(f"benchmark cell {method.label} delta={delta} failed: {payload}")
    if status == STATUS_INFEASIBLE:
        vprint(f"  {method.label} delta={delta}: {payload}")
        return STATUS_INFEASIBLE, None
    return STATUS_OK, payload


def bench_cells(kinds: Sequence[EnumerationKind], flag_matrix: Sequence[tuple[bool, bool]]) -> list[EnumerationMethod]:
    """Distinct methods to time; flags are collapsed for methods that ignore them."""
    methods = []
    for kind in kinds:
        for horizon, lex in flag_matrix:
            method = EnumerationMethod(kind, horizon, lex)
            if not method.uses_pruning:
                method = EnumerationMethod(kind)
            if method not in methods:
                methods.append(method)
    return methods


def run_benchmark(
    deltas: Sequence[int],
    kinds: Sequence[EnumerationKind],
    flag_matrix: Sequence[tuple[bool, bool]] = FLAG_MATRICES["all"],
    timeout: Optional[float] = None,
    exhaustive_cap: int = EXHAUSTIVE_CAP_DEFAULT,
) -> list[BenchRecord]:
    """
    Time each (method, δ, flags) cell.

    Args:
        deltas: Urn sizes to run
        kinds: Methods to compare
        flag_matrix: Pruning flag combinations for the combination methods
        timeout: Seconds per cell; None or 0 runs cells in-process without a limit
        exhaustive_cap: Largest δ for the exhaustive method

    Returns:
        Records sorted by δ, then method
    """
    cells = [(delta, method) for delta in deltas for method in bench_cells(kinds, flag_matrix)]
    records = []
    for delta, method in tqdm(cells, desc="bench", unit="cell", disable=not is_verbose()):
        status, report = _run_cell(delta, method, exhaustive_cap, timeout)
        if report is None:
            records.append(BenchRecord(
                method.label, delta, method.prune_horizon, method.prune_lexicographic, 0.0, status=status
            ))
            continue
        records.append(BenchRecord(
            method=report.method,
            delta=delta,
            prune_horizon=method.prune_horizon,
            prune_lexicographic=method.prune_lexicographic,
            elapsed=report.elapsed,
            sequences_evaluated=report.sequences_evaluated,
            sequences_skipped=report.sequences_skipped,
            nodes_pruned=report.nodes_pruned,
            steps_evaluated=report.steps_evaluated,
        ))
    return sorted(records, key=lambda r: (r.delta, r.method))


def write_bench_csv(records: Sequence[BenchRecord], out: TextIO) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(BENCH_HEADER)
    for r in records:
        writer.writerow([
            r.method, r.delta, int(r.prune_horizon), int(r.prune_lexicographic),
            f"{r.elapsed * 1000:.3f}" if r.ok else "",
            r.sequences_evaluated, r.sequences_skipped, r.nodes_pruned, r.steps_evaluated, r.status,
        ])
