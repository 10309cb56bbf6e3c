"""
The with-replacement comparison walk ν_t.

Each step goes up with fixed probability p and down with q = 1 - p. With
p = 1/3 and a horizon of 3δ/2 steps this is the urn walk with every drawn
marble put back.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .core import ExactValue, Ratio, WalkConfig

ONE_THIRD = Fraction(1, 3)


@dataclass(frozen=True)
class IidWalkConfig:
    """
    Args:
        steps: Number of independent ±1 steps
        p: Up probability, exact
    """
    steps: int
    p: Fraction = ONE_THIRD

    def __post_init__(self):
        object.__setattr__(self, "p", Fraction(self.p))
        if not isinstance(self.steps, int) or self.steps < 0:
            raise ValueError(f"steps must be a non-negative integer, got {self.steps!r}")
        if not 0 <= self.p <= 1:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")

    @classmethod
    def matching(cls, cfg: WalkConfig) -> "IidWalkConfig":
        """Walk with the urn's starting p over the urn's horizon n."""
        return cls(cfg.n, cfg.p if cfg.n else ONE_THIRD)

    @property
    def q(self) -> Fraction:
        return 1 - self.p


def expected_max_iid_ratio(cfg: IidWalkConfig) -> Ratio:
    """
    Weighted sum of maxima over den(p)^steps equally weighted step choices.

    Runs the recursion W_{t+1} = max(0, W_t + X_{t+1}) from W_0 = 0. Reading
    the steps in reverse order turns the running maximum of the walk into
    this reflected walk, so W_steps has the law of max_t ν_t while the state
    is a single level instead of a (height, running max) pair.
    """
    den = cfg.p.denominator
    up = cfg.p.numerator
    down = den - up
    # weights[w]: integer weight of paths whose reflected level is w
    weights = [1]
    for _ in range(cfg.steps):
        nxt = [0] * (len(weights) + 1)
        for w, weight in enumerate(weights):
            if not weight:
                continue
            nxt[w + 1] += up * weight
            nxt[w - 1 if w else 0] += down * weight
        weights = nxt
    return Ratio(sum(w * weight for w, weight in enumerate(weights)), den ** cfg.steps)


def expected_max_iid(cfg: IidWalkConfig) -> ExactValue:
    """E[max_t ν_t] over exactly `cfg.steps` steps, exact."""
    return expected_max_iid_ratio(cfg).value


def expected_max_iid_limit(p: Union[Fraction, int, str]) -> ExactValue:
    """
    E[max_t ν_t] over an unbounded horizon.

    The maximum is geometric, P(max >= k) = (p/q)^k, which sums to p/(q - p).
    Equals exactly 1 at p = 1/3.

    Raises:
        ValueError: If p is not in (0, 1/2); the walk then has no finite expected maximum
    """
    p = Fraction(p)
    if not 0 < p < Fraction(1, 2):
        raise ValueError(f"p must lie in (0, 1/2) for a finite expected maximum, got {p}")
    q = 1 - p
    return p / (q - p)
