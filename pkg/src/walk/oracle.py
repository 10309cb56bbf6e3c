"""
Dynamic-programming oracle for the urn walk.

Counts lattice paths by (reds drawn, running maximum) one draw at a time.
Every colour sequence is equally likely, so the expectation is the count
weighted sum of maxima over C(n, reds). Runs in O(n·reds²) and reaches
urn sizes far beyond any enumeration.
"""

from collections import defaultdict
from fractions import Fraction

from .core import ExactValue, Ratio, WalkConfig, sequence_count


def _count_paths(cfg: WalkConfig) -> tuple[dict[int, int], int]:
    k, n = cfg.reds, cfg.n
    # layer t: (reds drawn, running max) -> number of prefixes of length t
    layer: dict[tuple[int, int], int] = {(0, 0): 1}
    states = 1
    for t in range(n):
        nxt: dict[tuple[int, int], int] = defaultdict(int)
        for (r, best), count in layer.items():
            w = t - r
            if r < k:
                mu = r + 1 - w
                nxt[(r + 1, mu if mu > best else best)] += count
            if w < cfg.whites:
                nxt[(r, best)] += count
        layer = nxt
        states += len(layer)

    distribution: dict[int, int] = defaultdict(int)
    for (_, best), count in layer.items():
        distribution[best] += count
    return dict(sorted(distribution.items())), states


def max_distribution_dp(cfg: WalkConfig) -> dict[int, int]:
    """
    Number of colour sequences for each value of the running maximum.

    Returns:
        Mapping max value -> number of sequences; the counts sum to C(n, reds)
    """
    return _count_paths(cfg)[0]


def expected_max_ratio_dp(cfg: WalkConfig) -> tuple[Ratio, int]:
    """Sum of maxima over C(n, reds), and the number of DP states visited."""
    distribution, states = _count_paths(cfg)
    return Ratio(sum(m * c for m, c in distribution.items()), sequence_count(cfg)), states


def expected_max_dp(cfg: WalkConfig) -> ExactValue:
    """E[max_t μ_t] for the urn walk, exact."""
    ratio, _ = expected_max_ratio_dp(cfg)
    return Fraction(ratio.numerator, ratio.denominator)
