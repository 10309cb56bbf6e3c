"""
Partitioned enumeration on a worker pool.

This module provides an asyncio service that:
- Cuts the lexicographic rank space of an urn into contiguous ranges
- Runs one iterative enumeration per range on a process pool
- Merges the partial sums into a single exact report

The merged value never depends on the number of workers or on the order in
which ranges finish; only the elapsed time does.
"""

import asyncio
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import replace
from enum import Enum
from typing import Optional, Sequence

from ..common.verbose import vprint
from .core import WalkConfig, sequence_count
from .enumeration import (
    EnumerationKind,
    EnumerationMethod,
    EnumerationReport,
    enumerate_range,
    merge_partials,
    split_ranges,
)


class PoolState(Enum):
    """States for the enumeration pool."""
    CLOSED = "Closed"
    READY = "Ready"
    RUNNING = "Running"


class EnumerationPool:
    """
    Runs iterative enumeration over rank ranges concurrently.

    Example usage:
        pool = EnumerationPool(workers=4)
        pool.open()
        report = await pool.enumerate(WalkConfig(16), prune_horizon=True)
        pool.close()

    Args:
        workers: Number of ranges (and pool processes) per enumeration
        executor: Optional executor to run ranges on; the pool owns and
                  shuts down a ProcessPoolExecutor when none is given
    """

    def __init__(self, workers: int = 1, executor: Optional[Executor] = None):
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.workers = workers
        self._executor = executor
        self._owns_executor = executor is None
        self._state = PoolState.CLOSED

    @property
    def state(self) -> PoolState:
        return self._state

    def open(self) -> None:
        if self._state != PoolState.CLOSED:
            raise RuntimeError(f"Cannot open pool in state {self._state.value}")
        if self._owns_executor:
            self._executor = ProcessPoolExecutor(max_workers=self.workers)
        self._state = PoolState.READY
        vprint(f"Enumeration pool ready with {self.workers} worker(s)")

    def close(self) -> None:
        if self._state == PoolState.CLOSED:
            return
        if self._owns_executor and self._executor is not None:
            self._executor.shutdown(wait=True, cancel_futures=True)
            self._executor = None
        self._state = PoolState.CLOSED

    def __enter__(self) -> "EnumerationPool":
        self.open()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
        return False

    async def enumerate(
        self,
        cfg: WalkConfig,
        prune_horizon: bool = False,
        prune_lex: bool = False,
        ranges: Optional[Sequence[tuple[int, int]]] = None,
    ) -> EnumerationReport:
        """
        Enumerate `cfg` over `ranges` (default: one near-equal range per worker).

        Raises:
            RuntimeError: If the pool is not open
            ValueError: If `ranges` is not an exact cover of the rank space
        """
        if self._state != PoolState.READY:
            raise RuntimeError(f"Cannot enumerate: pool is {self._state.value}")
        if ranges is None:
            ranges = split_ranges(sequence_count(cfg), self.workers)

        self._state = PoolState.RUNNING
        began = time.perf_counter()
        try:
            loop = asyncio.get_running_loop()
            futures = [
                loop.run_in_executor(self._executor, enumerate_range, cfg, lo, hi, prune_horizon, prune_lex)
                for lo, hi in ranges
            ]
            partials = await asyncio.gather(*futures)
        finally:
            self._state = PoolState.READY

        label = EnumerationMethod(EnumerationKind.COMBINATIONS_ITERATIVE, prune_horizon, prune_lex).label
        report = merge_partials(cfg, partials, label)
        report = replace(report, elapsed=time.perf_counter() - began)
        vprint(f"  {label} delta={cfg.delta}: {len(ranges)} range(s) on {self.workers} worker(s) in {report.elapsed:.3f}s")
        return report


def enumerate_partitioned(
    cfg: WalkConfig,
    workers: int,
    prune_horizon: bool = False,
    prune_lex: bool = False,
    executor: Optional[Executor] = None,
) -> EnumerationReport:
    """Synchronous entry point: open a pool, enumerate once, close it."""
    async def run() -> EnumerationReport:
        with EnumerationPool(workers, executor) as pool:
            return await pool.enumerate(cfg, prune_horizon, prune_lex)

    return asyncio.run(run())
