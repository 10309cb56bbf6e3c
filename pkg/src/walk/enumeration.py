"""
Exact E[max_t μ_t] by enumeration.

Three ways to walk the sample space:

- exhaustive: every one of the n! orderings of distinguishable marbles
- combinations, recursive: one representative colour sequence per group of
  δ!·(δ/2)! marble orderings, chosen by a recursive k-out-of-n selection
- combinations, iterative: the same selection driven by a successor
  function, so that any contiguous lexicographic rank range can be
  processed on its own and partial sums merged afterwards

Both combination methods take two optional prunings. Horizon pruning stops
walking a sequence once the running maximum can no longer grow.
Lexicographic pruning skips whole blocks of sequences whose maximum is
forced to be 0. Neither changes the exact result.
"""

import time
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from ..common.verbose import vprint
from .combinations import family_stop_rank, minimal_completion, rank, successor, unrank
from .core import ExactValue, Ratio, WalkConfig, permutation_group_size, sequence_count
from .oracle import expected_max_ratio_dp

# Largest δ the exhaustive method accepts unless told otherwise.
EXHAUSTIVE_CAP_DEFAULT = 8


class InfeasibleError(RuntimeError):
    """A method refused a workload it cannot finish in reasonable time."""


class EnumerationKind(Enum):
    """Enumeration methods, valued by their command-line names."""
    EXHAUSTIVE = "exhaustive"
    COMBINATIONS_RECURSIVE = "combos"
    COMBINATIONS_ITERATIVE = "combos-iter"
    DP = "dp"


@dataclass(frozen=True)
class EnumerationMethod:
    """
    A method plus its pruning flags.

    Pruning flags only apply to the combination methods; the exhaustive
    method and the DP oracle ignore them.
    """
    kind: EnumerationKind
    prune_horizon: bool = False
    prune_lexicographic: bool = False

    @classmethod
    def parse(cls, name: str, prune_horizon: bool = False, prune_lexicographic: bool = False) -> "EnumerationMethod":
        try:
            kind = EnumerationKind(name)
        except ValueError:
            choices = ", ".join(k.value for k in EnumerationKind)
            raise ValueError(f"unknown method {name!r} (choose from {choices})") from None
        return cls(kind, prune_horizon, prune_lexicographic)

    @property
    def uses_pruning(self) -> bool:
        return self.kind in (EnumerationKind.COMBINATIONS_RECURSIVE, EnumerationKind.COMBINATIONS_ITERATIVE)

    @property
    def label(self) -> str:
        """Method name with active pruning flags, e.g. 'combos+horizon+lex'."""
        label = self.kind.value
        if self.uses_pruning:
            if self.prune_horizon:
                label += "+horizon"
            if self.prune_lexicographic:
                label += "+lex"
        return label


@dataclass(frozen=True)
class EnumerationReport:
    """Expected maximum plus instrumentation for one run."""
    method: str
    delta: int
    ratio: Ratio
    sequences_total: int
    sequences_evaluated: int
    sequences_skipped: int = 0
    nodes_pruned: int = 0
    steps_evaluated: int = 0
    horizon_cutoffs: int = 0
    elapsed: float = 0.0

    @property
    def expected_max(self) -> ExactValue:
        return self.ratio.value

    @property
    def max_sum(self) -> int:
        return self.ratio.numerator


@dataclass(frozen=True)
class PartialSum:
    """Sum of maxima over the lexicographic rank range [start, stop)."""
    start: int
    stop: int
    max_sum: int = 0
    sequences_evaluated: int = 0
    sequences_skipped: int = 0
    lex_skips: int = 0
    steps_evaluated: int = 0
    horizon_cutoffs: int = 0
    elapsed: float = 0.0


@dataclass(frozen=True)
class PartialTrace:
    """State of a walk in progress, as seen by horizon pruning."""
    position: int
    reds_remaining: int
    running_max: int


@dataclass(frozen=True)
class SkipRange:
    """A contiguous block [start, stop) of lexicographic ranks, all with maximum 0."""
    start: int
    stop: int
    level: int = field(default=0, compare=False)

    @property
    def size(self) -> int:
        return self.stop - self.start


def prune_horizon(cfg: WalkConfig, partial: PartialTrace) -> bool:
    """
    True when the rest of the walk cannot raise the running maximum.

    Even if every remaining red came next the walk would top out at
    position + reds_remaining, so stopping here never changes the maximum.
    """
    return partial.position + partial.reds_remaining <= partial.running_max


def _zero_level(combination: Sequence[int], k: int) -> Optional[int]:
    """
    First level j at which the prefix forces maximum 0, or None.

    The maximum is 0 iff the i-th red sits at position >= 2i+1 for every i.
    Once the prefix before j satisfies that and c_j >= k + j, every later
    red is far enough right as well.
    """
    for j, c in enumerate(combination):
        if c >= k + j:
            return j
        if 2 * j + 1 - c > 0:
            return None
    return None


def prune_lexicographic(cfg: WalkConfig, combination_prefix: Sequence[int]) -> Optional[SkipRange]:
    """
    Rank range that can be skipped because every sequence in it has maximum 0.

    Args:
        cfg: The urn
        combination_prefix: Leading red positions (sorted) of a combination,
                            or a complete combination

    Returns:
        The block from the smallest combination starting with the prefix to
        the end of the family that shares the prefix up to the level where
        maximum 0 became certain; None when the prefix leaves room for a
        positive maximum.
    """
    n, k = cfg.n, cfg.reds
    start_combination = minimal_completion(combination_prefix, n, k)
    if start_combination is None:
        raise ValueError(f"{tuple(combination_prefix)} is not a prefix of any {k}-of-{n} combination")
    level = _zero_level(combination_prefix, k)
    if level is None:
        return None
    return SkipRange(
        rank(start_combination, n),
        family_stop_rank(combination_prefix[:level], n, k),
        level,
    )


def _walk_reds(reds: Sequence[int], n: int, k: int, horizon: bool) -> tuple[int, int]:
    """
    Maximum and number of draws walked for one red-position combination.

    Walks draw by draw in effect, but jumps over each run of whites: after
    the j-th red (0-based) at draw c the position is 2j + 1 - c. With
    `horizon` set, stops at the first draw where prune_horizon holds.
    """
    best = 0
    if not horizon:
        for j, c in enumerate(reds):
            mu = 2 * j + 1 - c
            if mu > best:
                best = mu
        return best, n

    t = mu = 0
    left = k
    for c in reds:
        # whites that can still be drawn before prune_horizon holds
        slack = mu + left - best
        whites = c - t
        if whites >= slack:
            return best, t + slack
        mu += 1 - whites
        left -= 1
        t = c + 1
        if mu > best:
            best = mu
    return best, min(n, t + max(mu + left - best, 0))


class _Selector:
    """Recursive k-out-of-n selection, one level per red marble."""

    def __init__(self, cfg: WalkConfig, prune_horizon: bool, prune_lex: bool):
        self.n = cfg.n
        self.k = cfg.reds
        self.horizon = prune_horizon
        self.lex = prune_lex
        self.selection = [0] * self.k
        self.max_sum = 0
        self.evaluated = 0
        self.skipped = 0
        self.lex_skips = 0
        self.steps = 0
        self.cutoffs = 0

    def run(self) -> None:
        if self.k == 0:
            self._simulate()
        else:
            self._select(0, 0, 0)

    def _select(self, level: int, loopstart: int, prefix_best: int) -> None:
        n, k = self.n, self.k
        for i in range(loopstart, n - k + level + 1):
            if self.lex and prefix_best == 0 and i >= k + level:
                # every remaining choice at this level has maximum 0
                self.skipped += comb(n - i, k - level)
                self.lex_skips += 1
                return
            self.selection[level] = i
            if level == k - 1:
                self._simulate()
            else:
                mu = 2 * level + 1 - i
                self._select(level + 1, i + 1, mu if mu > prefix_best else prefix_best)

    def _simulate(self) -> None:
        best, steps = _walk_reds(self.selection, self.n, self.k, self.horizon)
        self.max_sum += best
        self.evaluated += 1
        self.steps += steps
        if steps < self.n:
            self.cutoffs += 1


def enumerate_exhaustive(cfg: WalkConfig, cap: int = EXHAUSTIVE_CAP_DEFAULT) -> EnumerationReport:
    """
    Average the maximum over all n! orderings of distinguishable marbles.

    Each distinct colour sequence is walked once and memoised; the n!
    orderings are then streamed through that table, reading all n draws of
    every ordering. `steps_evaluated` counts those n!·n draws.

    The reported ratio is over C(n, reds) like the combination methods:
    every colour sequence is shared by exactly δ!·(δ/2)! orderings.

    Raises:
        InfeasibleError: If δ is above `cap`
    """
    if cfg.delta > cap:
        raise InfeasibleError(
            f"exhaustive enumeration at delta={cfg.delta} needs {cfg.n}! = {factorial(cfg.n):,} "
            f"permutations (factorial blow-up); cap is delta={cap}"
        )
    start = time.perf_counter()
    n, k = cfg.n, cfg.reds
    maxima: dict[tuple[bool, ...], int] = {}
    for reds in combinations(range(n), k):
        colors = [False] * n
        for c in reds:
            colors[c] = True
        maxima[tuple(colors)] = _walk_reds(reds, n, k, False)[0]

    marbles = (True,) * k + (False,) * cfg.whites
    ordering_sum = sum(map(maxima.__getitem__, permutations(marbles)))
    total = factorial(n)
    max_sum, rest = divmod(ordering_sum, permutation_group_size(cfg))
    if rest:
        raise RuntimeError(f"sum over orderings {ordering_sum} is not a multiple of the group size")
    report = EnumerationReport(
        method=EnumerationKind.EXHAUSTIVE.value,
        delta=cfg.delta,
        ratio=Ratio(max_sum, sequence_count(cfg)),
        sequences_total=total,
        sequences_evaluated=total,
        steps_evaluated=total * n,
        elapsed=time.perf_counter() - start,
    )
    vprint(
        f"  exhaustive delta={cfg.delta}: {total:,} permutations over {len(maxima):,} walked sequences "
        f"in {report.elapsed:.3f}s"
    )
    return report


def enumerate_combinations_recursive(
    cfg: WalkConfig, prune_horizon: bool = False, prune_lex: bool = False
) -> EnumerationReport:
    """Visit every red-position combination once, in lexicographic order, recursively."""
    start = time.perf_counter()
    selector = _Selector(cfg, prune_horizon, prune_lex)
    selector.run()
    total = sequence_count(cfg)
    report = EnumerationReport(
        method=EnumerationMethod(EnumerationKind.COMBINATIONS_RECURSIVE, prune_horizon, prune_lex).label,
        delta=cfg.delta,
        ratio=Ratio(selector.max_sum, total),
        sequences_total=total,
        sequences_evaluated=selector.evaluated,
        sequences_skipped=selector.skipped,
        nodes_pruned=selector.lex_skips + selector.cutoffs,
        steps_evaluated=selector.steps,
        horizon_cutoffs=selector.cutoffs,
        elapsed=time.perf_counter() - start,
    )
    vprint(
        f"  {report.method} delta={cfg.delta}: {report.sequences_evaluated:,} evaluated, "
        f"{report.sequences_skipped:,} skipped in {report.elapsed:.3f}s"
    )
    return report


def enumerate_range(
    cfg: WalkConfig, start: int, stop: int, prune_horizon: bool = False, prune_lex: bool = False
) -> PartialSum:
    """
    Sum the maxima of the combinations with lexicographic rank in [start, stop).

    Raises:
        ValueError: If the range is not inside [0, C(n, reds))
    """
    n, k = cfg.n, cfg.reds
    total = comb(n, k)
    if not 0 <= start <= stop <= total:
        raise ValueError(f"rank range [{start}, {stop}) is not inside [0, {total})")
    began = time.perf_counter()
    max_sum = evaluated = skipped = lex_skips = steps = cutoffs = 0

    r = start
    current = list(unrank(start, n, k)) if start < stop else []
    while r < stop:
        if prune_lex:
            level = _zero_level(current, k)
            if level is not None:
                block_stop = family_stop_rank(current[:level], n, k)
                skipped += min(block_stop, stop) - r
                lex_skips += 1
                r = block_stop
                if r < stop:
                    current = list(unrank(r, n, k))
                continue
        best, walked = _walk_reds(current, n, k, prune_horizon)
        max_sum += best
        evaluated += 1
        steps += walked
        if walked < n:
            cutoffs += 1
        r += 1
        if r < stop:
            successor(current, n)

    return PartialSum(
        start=start,
        stop=stop,
        max_sum=max_sum,
        sequences_evaluated=evaluated,
        sequences_skipped=skipped,
        lex_skips=lex_skips,
        steps_evaluated=steps,
        horizon_cutoffs=cutoffs,
        elapsed=time.perf_counter() - began,
    )


def merge_partials(cfg: WalkConfig, partials: Iterable[PartialSum], method: str) -> EnumerationReport:
    """
    Combine partial sums whose ranges exactly cover [0, C(n, reds)).

    Merge order does not matter; the result is identical for any cover.

    Raises:
        ValueError: If the ranges overlap, leave a gap, or miss either end
    """
    total = sequence_count(cfg)
    ordered = sorted(partials, key=lambda p: (p.start, p.stop))
    expected_start = 0
    for part in ordered:
        if part.start != expected_start:
            raise ValueError(
                f"rank ranges must cover [0, {total}) without gaps or overlaps; "
                f"expected a range starting at {expected_start}, got [{part.start}, {part.stop})"
            )
        expected_start = part.stop
    if expected_start != total:
        raise ValueError(f"rank ranges must cover [0, {total}); cover ends at {expected_start}")

    lex_skips = sum(p.lex_skips for p in ordered)
    cutoffs = sum(p.horizon_cutoffs for p in ordered)
    return EnumerationReport(
        method=method,
        delta=cfg.delta,
        ratio=Ratio(sum(p.max_sum for p in ordered), total),
        sequences_total=total,
        sequences_evaluated=sum(p.sequences_evaluated for p in ordered),
        sequences_skipped=sum(p.sequences_skipped for p in ordered),
        nodes_pruned=lex_skips + cutoffs,
        steps_evaluated=sum(p.steps_evaluated for p in ordered),
        horizon_cutoffs=cutoffs,
        elapsed=sum(p.elapsed for p in ordered),
    )


def split_ranges(total: int, parts: int) -> list[tuple[int, int]]:
    """Cut [0, total) into `parts` contiguous ranges of near-equal size."""
    if parts < 1:
        raise ValueError(f"parts must be at least 1, got {parts}")
    bounds = [total * i // parts for i in range(parts + 1)]
    return [(bounds[i], bounds[i + 1]) for i in range(parts)]


def enumerate_combinations_iterative(
    cfg: WalkConfig,
    prune_horizon: bool = False,
    prune_lex: bool = False,
    ranges: Optional[Sequence[tuple[int, int]]] = None,
) -> EnumerationReport:
    """
    Visit every combination once with the successor function.

    Args:
        cfg: The urn
        prune_horizon: Stop each walk once its maximum is settled
        prune_lex: Skip blocks of combinations whose maximum is forced to 0
        ranges: Optional cover of [0, C(n, reds)) by contiguous rank ranges,
                processed one after another and merged

    Raises:
        ValueError: If `ranges` is not an exact cover
    """
    began = time.perf_counter()
    if ranges is None:
        ranges = [(0, sequence_count(cfg))]
    partials = [enumerate_range(cfg, lo, hi, prune_horizon, prune_lex) for lo, hi in ranges]
    label = EnumerationMethod(EnumerationKind.COMBINATIONS_ITERATIVE, prune_horizon, prune_lex).label
    report = merge_partials(cfg, partials, label)
    report = replace(report, elapsed=time.perf_counter() - began)
    vprint(
        f"  {report.method} delta={cfg.delta}: {report.sequences_evaluated:,} evaluated, "
        f"{report.sequences_skipped:,} skipped over {len(partials)} range(s) in {report.elapsed:.3f}s"
    )
    return report


def enumerate_dp(cfg: WalkConfig) -> EnumerationReport:
    """Run the DP oracle and wrap its result like an enumeration; steps_evaluated counts DP states."""
    began = time.perf_counter()
    ratio, states = expected_max_ratio_dp(cfg)
    return EnumerationReport(
        method=EnumerationKind.DP.value,
        delta=cfg.delta,
        ratio=ratio,
        sequences_total=ratio.denominator,
        sequences_evaluated=0,
        steps_evaluated=states,
        elapsed=time.perf_counter() - began,
    )


def run_method(
    cfg: WalkConfig, method: EnumerationMethod, exhaustive_cap: int = EXHAUSTIVE_CAP_DEFAULT
) -> EnumerationReport:
    """Dispatch to the engine named by `method`."""
    if method.kind is EnumerationKind.EXHAUSTIVE:
        return enumerate_exhaustive(cfg, cap=exhaustive_cap)
    if method.kind is EnumerationKind.COMBINATIONS_RECURSIVE:
        return enumerate_combinations_recursive(cfg, method.prune_horizon, method.prune_lexicographic)
    if method.kind is EnumerationKind.COMBINATIONS_ITERATIVE:
        return enumerate_combinations_iterative(cfg, method.prune_horizon, method.prune_lexicographic)
    return enumerate_dp(cfg)


def expected_max(cfg: WalkConfig, method: EnumerationMethod, exhaustive_cap: int = EXHAUSTIVE_CAP_DEFAULT) -> Fraction:
    return run_method(cfg, method, exhaustive_cap).expected_max
