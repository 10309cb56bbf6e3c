"""
Result tables and the convergence series.

One table row per (δ, urn method) with the matching with-replacement value
at horizon 3δ/2. CSV columns:

    delta,whites,reds,model,method,exact,decimal,runtime_ms,sequences_evaluated,nodes_pruned

Urn rows and one iid row per δ share this schema, so both published
tables come out of a single file.
"""

import csv
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby
from typing import Optional, Sequence, TextIO

from ..common.verbose import vprint
from ..walk.core import Ratio, WalkConfig
from ..walk.enumeration import EXHAUSTIVE_CAP_DEFAULT, EnumerationKind, EnumerationMethod, InfeasibleError, run_method
from ..walk.iid import IidWalkConfig, expected_max_iid_limit, expected_max_iid_ratio
from ..walk.oracle import expected_max_dp
from ..walk.workers import enumerate_partitioned
from .formatting import DEFAULT_PRECISION, format_decimal, format_exact

TABLE_HEADER = [
    "delta", "whites", "reds", "model", "method", "exact", "decimal",
    "runtime_ms", "sequences_evaluated", "nodes_pruned",
]
FIGURE_HEADER = ["delta", "urn", "iid", "limit"]

STATUS_OK = "ok"
STATUS_INFEASIBLE = "infeasible"
STATUS_TIMEOUT = "timeout"


@dataclass(frozen=True)
class SeriesRow:
    """Both models' expectations at one δ, the urn side computed by `method`."""
    delta: int
    whites: int
    reds: int
    method: str
    urn_ratio: Optional[Ratio]
    iid_ratio: Ratio
    runtime: float
    iid_runtime: float
    sequences_evaluated: int = 0
    nodes_pruned: int = 0
    status: str = STATUS_OK
    precision: int = DEFAULT_PRECISION

    @property
    def urn_exact(self) -> Optional[Fraction]:
        return self.urn_ratio.value if self.urn_ratio is not None else None

    @property
    def iid_exact(self) -> Fraction:
        return self.iid_ratio.value

    @property
    def urn_decimal(self) -> Optional[str]:
        return format_decimal(self.urn_exact, self.precision) if self.urn_ratio is not None else None

    @property
    def iid_decimal(self) -> str:
        return format_decimal(self.iid_exact, self.precision)

    @property
    def ok(self) -> bool:
        return self.status == STATUS_OK


@dataclass(frozen=True)
class FigureSeries:
    """Aligned E[max μ] and E[max ν] series with the limiting line."""
    deltas: list[int]
    urn: list[Fraction]
    iid: list[Fraction]
    limit: Fraction

    def urn_points(self, places: int = DEFAULT_PRECISION) -> list[tuple[int, str]]:
        return [(d, format_decimal(v, places)) for d, v in zip(self.deltas, self.urn)]

    def iid_points(self, places: int = DEFAULT_PRECISION) -> list[tuple[int, str]]:
        return [(d, format_decimal(v, places)) for d, v in zip(self.deltas, self.iid)]


def even_deltas(delta_max: int) -> list[int]:
    """Even δ from 2 to delta_max.

    Raises:
        ValueError: If delta_max is odd or below 2
    """
    if delta_max < 2 or delta_max % 2:
        raise ValueError(f"delta-max must be even and at least 2, got {delta_max}")
    return list(range(2, delta_max + 1, 2))


def build_table(
    delta_max: int,
    methods: Sequence[EnumerationMethod] = (EnumerationMethod(EnumerationKind.DP),),
    exhaustive_cap: int = EXHAUSTIVE_CAP_DEFAULT,
    workers: int = 1,
    precision: int = DEFAULT_PRECISION,
) -> list[SeriesRow]:
    """
    One row per even δ in [2, delta_max] and per urn method.

    A method that refuses a δ (exhaustive past its cap) still gets a row,
    marked infeasible, so nothing is silently dropped. `workers` > 1 runs
    the iterative method partitioned.
    """
    rows = []
    for delta in even_deltas(delta_max):
        cfg = WalkConfig(delta)
        began = time.perf_counter()
        iid_ratio = expected_max_iid_ratio(IidWalkConfig.matching(cfg))
        iid_runtime = time.perf_counter() - began

        for method in methods:
            try:
                if method.kind is EnumerationKind.COMBINATIONS_ITERATIVE and workers > 1:
                    report = enumerate_partitioned(
                        cfg, workers, method.prune_horizon, method.prune_lexicographic
                    )
                else:
                    report = run_method(cfg, method, exhaustive_cap)
            except InfeasibleError as e:
                vprint(f"  delta={delta} {method.label}: {e}")
                rows.append(SeriesRow(
                    delta, cfg.whites, cfg.reds, method.label, None, iid_ratio, 0.0, iid_runtime,
                    status=STATUS_INFEASIBLE, precision=precision,
                ))
                continue
            rows.append(SeriesRow(
                delta, cfg.whites, cfg.reds, report.method, report.ratio, iid_ratio,
                report.elapsed, iid_runtime, report.sequences_evaluated, report.nodes_pruned,
                precision=precision,
            ))
    return sorted(rows, key=lambda r: (r.delta, r.method))


def build_figure_series(delta_max: int) -> FigureSeries:
    """Urn and with-replacement expectations for every even δ up to delta_max, via the DP oracles."""
    deltas = even_deltas(delta_max)
    urn = [expected_max_dp(WalkConfig(d)) for d in deltas]
    iid = [expected_max_iid_ratio(IidWalkConfig.matching(WalkConfig(d))).value for d in deltas]
    return FigureSeries(deltas, urn, iid, expected_max_iid_limit(Fraction(1, 3)))


def write_table_csv(rows: Sequence[SeriesRow], out: TextIO) -> None:
    """Write urn rows then one iid row per δ, ordered by δ, then model, then method."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    ordered = sorted(rows, key=lambda r: (r.delta, r.method))
    for _, group in groupby(ordered, key=lambda r: r.delta):
        group = list(group)
        for row in group:
            if row.ok:
                writer.writerow([
                    row.delta, row.whites, row.reds, "urn", row.method,
                    format_exact(row.urn_exact), row.urn_decimal,
                    f"{row.runtime * 1000:.3f}", row.sequences_evaluated, row.nodes_pruned,
                ])
            else:
                writer.writerow([row.delta, row.whites, row.reds, "urn", row.method, row.status, "", "", "", ""])
        first = group[0]
        writer.writerow([
            first.delta, first.whites, first.reds, "iid", "dp",
            format_exact(first.iid_exact), first.iid_decimal,
            f"{first.iid_runtime * 1000:.3f}", 0, 0,
        ])


def write_figure_csv(series: FigureSeries, out: TextIO, places: int = DEFAULT_PRECISION) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FIGURE_HEADER)
    for delta, urn, iid in zip(series.deltas, series.urn, series.iid):
        writer.writerow([
            delta, format_decimal(urn, places), format_decimal(iid, places), format_decimal(series.limit, places),
        ])
