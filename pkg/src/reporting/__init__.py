"""
Reporting feature: result tables, the convergence series and benchmarks.

This package handles:
- Regenerating both result tables as one CSV
- The urn / with-replacement series with the limiting line
- Timing the enumeration methods against each other
"""

from .bench import BenchRecord, run_benchmark, write_bench_csv
from .tables import SeriesRow, build_figure_series, build_table, write_figure_csv, write_table_csv

__all__ = [
    'BenchRecord', 'run_benchmark', 'write_bench_csv',
    'SeriesRow', 'build_figure_series', 'build_table', 'write_figure_csv', 'write_table_csv',
]
