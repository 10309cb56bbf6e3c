"""
Monte Carlo estimates of E[max] for both walk models.

Trials are vectorised with NumPy across a batch. The generator is PCG64
with explicit seeding; trials are split across workers, each with its own
stream spawned from SeedSequence(seed), so a report is reproducible for a
fixed (seed, trials, workers, config).
"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import sqrt
from typing import Callable

import numpy as np

from ..common.verbose import vprint
from .core import WalkConfig
from .iid import IidWalkConfig

GENERATOR_NAME = "PCG64"
DEFAULT_BATCH = 100_000


@dataclass(frozen=True)
class SampleReport:
    """Sample mean and standard error of the running maximum."""
    model: str
    trials: int
    mean_max: float
    std_error: float
    seed: int
    workers: int
    generator: str = GENERATOR_NAME

    def within(self, exact: Fraction, radius: float = 3.0) -> bool:
        """True when the exact value is within `radius` standard errors of the mean."""
        return abs(self.mean_max - float(exact)) <= radius * self.std_error

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


@dataclass(frozen=True)
class _Moments:
    trials: int
    total: int
    total_sq: int


def _report(model: str, moments: list[_Moments], seed: int, workers: int) -> SampleReport:
    n = sum(m.trials for m in moments)
    s = sum(m.total for m in moments)
    sq = sum(m.total_sq for m in moments)
    mean = Fraction(s, n)
    if n > 1:
        variance = (sq - s * mean) / (n - 1)
        std_error = sqrt(variance / n)
    else:
        std_error = 0.0
    return SampleReport(model, n, float(mean), std_error, seed, workers)


def _split_trials(trials: int, workers: int) -> list[int]:
    base, extra = divmod(trials, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def _run_workers(
    kernel: Callable[[np.random.Generator, int], np.ndarray],
    trials: int,
    seed: int,
    workers: int,
    batch: int,
) -> list[_Moments]:
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if workers < 1:
        raise ValueError(f"workers must be at least 1, got {workers}")
    if batch < 1:
        raise ValueError(f"batch must be at least 1, got {batch}")
    streams = np.random.SeedSequence(seed).spawn(workers)

    def work(index: int) -> _Moments:
        rng = np.random.Generator(np.random.PCG64(streams[index]))
        todo = _split_trials(trials, workers)[index]
        total = total_sq = done = 0
        while done < todo:
            size = min(batch, todo - done)
            maxima = kernel(rng, size).astype(np.int64)
            total += int(maxima.sum())
            total_sq += int((maxima * maxima).sum())
            done += size
        return _Moments(todo, total, total_sq)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(work, range(workers)))


def _urn_kernel(cfg: WalkConfig) -> Callable[[np.random.Generator, int], np.ndarray]:
    n, k = cfg.n, cfg.reds

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        reds_left = np.full(size, k, dtype=np.int64)
        position = np.zeros(size, dtype=np.int64)
        best = np.zeros(size, dtype=np.int64)
        for t in range(n):
            # red with probability reds_left / marbles_left
            red = rng.random(size) * (n - t) < reds_left
            reds_left -= red
            position += np.where(red, 1, -1)
            np.maximum(best, position, out=best)
        if n and not np.all(position == cfg.final_position):
            raise RuntimeError(f"urn walk did not terminate at {cfg.final_position}")
        return best

    return kernel


def _iid_kernel(cfg: IidWalkConfig) -> Callable[[np.random.Generator, int], np.ndarray]:
    p = float(cfg.p)

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        position = np.zeros(size, dtype=np.int64)
        best = np.zeros(size, dtype=np.int64)
        for _ in range(cfg.steps):
            position += np.where(rng.random(size) < p, 1, -1)
            np.maximum(best, position, out=best)
        return best

    return kernel


def sample_urn_walk(
    cfg: WalkConfig, trials: int, seed: int, workers: int = 1, batch: int = DEFAULT_BATCH
) -> SampleReport:
    """
    Draw `trials` urn walks marble by marble without replacement.

    Raises:
        ValueError: If trials, workers or batch is below 1
        RuntimeError: If a simulated walk does not end at -δ/2
    """
    moments = _run_workers(_urn_kernel(cfg), trials, seed, workers, batch)
    report = _report("urn", moments, seed, workers)
    vprint(f"  urn delta={cfg.delta}: mean {report.mean_max:.6f} ± {report.std_error:.6f} over {trials:,} trials")
    return report


def sample_iid_walk(
    cfg: IidWalkConfig, trials: int, seed: int, workers: int = 1, batch: int = DEFAULT_BATCH
) -> SampleReport:
    """Draw `trials` independent ±1 walks of `cfg.steps` steps."""
    moments = _run_workers(_iid_kernel(cfg), trials, seed, workers, batch)
    report = _report("iid", moments, seed, workers)
    vprint(f"  iid steps={cfg.steps}: mean {report.mean_max:.6f} ± {report.std_error:.6f} over {trials:,} trials")
    return report
