"""Unit tests for the partitioned enumeration pool."""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import pytest

from src.walk.core import WalkConfig
from src.walk.oracle import expected_max_dp
from src.walk.workers import EnumerationPool, PoolState, enumerate_partitioned


class TestPoolLifecycle:
    """Test pool state transitions."""

    def test_initial_state(self):
        """Test a new pool starts closed."""
        pool = EnumerationPool(workers=2)
        assert pool.state == PoolState.CLOSED

    def test_invalid_workers(self):
        """Test zero workers are refused."""
        with pytest.raises(ValueError):
            EnumerationPool(workers=0)

    def test_open_twice(self):
        """Test opening an open pool fails and close resets it."""
        with ThreadPoolExecutor(max_workers=1) as executor:
            pool = EnumerationPool(1, executor)
            pool.open()
            with pytest.raises(RuntimeError, match="Cannot open"):
                pool.open()
            pool.close()
            assert pool.state == PoolState.CLOSED

    @pytest.mark.asyncio
    async def test_enumerate_requires_open_pool(self):
        """Test enumerating on a closed pool fails."""
        pool = EnumerationPool(1)
        with pytest.raises(RuntimeError, match="Cannot enumerate"):
            await pool.enumerate(WalkConfig(4))


class TestPartitionedEnumeration:
    """Test enumeration split across workers."""

    @pytest.mark.asyncio
    @pytest.mark.parametrize("workers", [1, 3, 7])
    async def test_value_independent_of_workers(self, workers):
        """Test the worker count leaves the value unchanged."""
        cfg = WalkConfig(12)
        with ThreadPoolExecutor(max_workers=workers) as executor:
            with EnumerationPool(workers, executor) as pool:
                report = await pool.enumerate(cfg, prune_horizon=True, prune_lex=True)
                assert pool.state == PoolState.READY
        assert report.expected_max == expected_max_dp(cfg)
        assert report.method == "combos-iter+horizon+lex"

    @pytest.mark.asyncio
    async def test_explicit_ranges(self):
        """Test caller-supplied rank ranges."""
        with ThreadPoolExecutor(max_workers=2) as executor:
            with EnumerationPool(2, executor) as pool:
                report = await pool.enumerate(WalkConfig(4), ranges=[(0, 4), (4, 15)])
        assert report.expected_max == Fraction(7, 15)

    @pytest.mark.asyncio
    async def test_bad_cover(self):
        """Test a gap in the ranges fails and leaves the pool usable."""
        with ThreadPoolExecutor(max_workers=2) as executor:
            with EnumerationPool(2, executor) as pool:
                with pytest.raises(ValueError):
                    await pool.enumerate(WalkConfig(4), ranges=[(0, 4), (5, 15)])
                assert pool.state == PoolState.READY

    def test_process_pool(self):
        """Test the process-pool entry point."""
        report = enumerate_partitioned(WalkConfig(8), workers=2, prune_lex=True)
        assert report.expected_max == expected_max_dp(WalkConfig(8))
