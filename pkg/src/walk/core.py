"""
Urn walk model.

An urn holds δ white marbles and δ/2 red marbles. Marbles are drawn one at
a time without replacement; a red marble moves the walk up by one and a
white marble moves it down by one. The walk starts at 0 and, after all
n = 3δ/2 marbles are drawn, always ends at -δ/2.

This module holds the value types shared by every engine and the prefix
maximum evaluation they all agree on.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Union

# Exact expectations are plain fractions, always in lowest terms.
ExactValue = Fraction


class Color(Enum):
    """Marble colours."""
    RED = "R"
    WHITE = "W"


@dataclass(frozen=True)
class WalkConfig:
    """
    Urn parameters.

    Args:
        delta: Number of white marbles (δ). Must be even unless `reds` is given.
        reds: Optional override for the number of red marbles. Defaults to δ/2,
              which gives the red probability p = 1/3 at the start of the walk.
    """
    delta: int
    reds: Optional[int] = field(default=None)

    def __post_init__(self):
        if not isinstance(self.delta, int) or self.delta < 0:
            raise ValueError(f"delta must be a non-negative integer, got {self.delta!r}")
        if self.reds is None:
            if self.delta % 2:
                raise ValueError(
                    f"delta must be even so that delta/2 red marbles is integral, got {self.delta}"
                )
            object.__setattr__(self, "reds", self.delta // 2)
        elif not isinstance(self.reds, int) or self.reds < 0:
            raise ValueError(f"reds must be a non-negative integer, got {self.reds!r}")

    @property
    def whites(self) -> int:
        return self.delta

    @property
    def n(self) -> int:
        """Total number of marbles in the urn."""
        return self.delta + self.reds

    @property
    def p(self) -> Fraction:
        """Probability of drawing red at the start of the walk."""
        if self.n == 0:
            return Fraction(0)
        return Fraction(self.reds, self.n)

    @property
    def q(self) -> Fraction:
        """Probability of drawing white at the start of the walk."""
        return 1 - self.p

    @property
    def final_position(self) -> int:
        return self.reds - self.whites

    @property
    def is_default_ratio(self) -> bool:
        return 2 * self.reds == self.delta


@dataclass(frozen=True)
class StepSequence:
    """
    One ordering of marble colours, packed one bit per draw.

    Bit t is set when draw t is red.
    """
    bits: int
    length: int

    def __post_init__(self):
        if self.length < 0:
            raise ValueError(f"length must be non-negative, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError(f"bits {self.bits:#x} do not fit in {self.length} draws")

    @classmethod
    def from_colors(cls, colors: Iterable[Union[Color, str]]) -> "StepSequence":
        bits = 0
        length = 0
        for t, color in enumerate(colors):
            color = Color(color.upper()) if isinstance(color, str) else color
            if color is Color.RED:
                bits |= 1 << t
            length = t + 1
        return cls(bits, length)

    @classmethod
    def parse(cls, text: str) -> "StepSequence":
        """Parse 'RWW', 'R,W,W' or 'r w w'."""
        letters = [c for c in text if c not in ", \t"]
        try:
            return cls.from_colors(letters)
        except ValueError:
            raise ValueError(f"sequence must contain only R and W, got {text!r}") from None

    @classmethod
    def from_red_positions(cls, positions: Iterable[int], length: int) -> "StepSequence":
        bits = 0
        for pos in positions:
            if not 0 <= pos < length:
                raise ValueError(f"red position {pos} outside 0..{length - 1}")
            bits |= 1 << pos
        return cls(bits, length)

    @property
    def colors(self) -> tuple[Color, ...]:
        return tuple(Color.RED if self.bits >> t & 1 else Color.WHITE for t in range(self.length))

    @property
    def red_count(self) -> int:
        return self.bits.bit_count()

    @property
    def white_count(self) -> int:
        return self.length - self.red_count

    @property
    def red_positions(self) -> tuple[int, ...]:
        return tuple(t for t in range(self.length) if self.bits >> t & 1)

    def __str__(self) -> str:
        return "".join(c.value for c in self.colors)


@dataclass(frozen=True)
class WalkTrace:
    """Positions μ_0..μ_n of one walk and its running maximum."""
    positions: tuple[int, ...]
    max_position: int

    @property
    def final_position(self) -> int:
        return self.positions[-1]

    @property
    def min_position(self) -> int:
        return min(self.positions)


@dataclass(frozen=True)
class Ratio:
    """
    An unreduced ratio such as 46/84.

    Engines count a sum over an equally weighted space; the ratio keeps the
    size of that space visible. `value` is the reduced exact expectation.
    """
    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError(f"denominator must be positive, got {self.denominator}")

    @property
    def value(self) -> ExactValue:
        return Fraction(self.numerator, self.denominator)

    def __str__(self) -> str:
        if self.numerator == 0:
            return "0"
        return f"{self.numerator}/{self.denominator}"


def max_prefix(seq: StepSequence, cfg: Optional[WalkConfig] = None) -> WalkTrace:
    """
    Walk a colour sequence and return its trace and running maximum.

    Args:
        seq: The draw order
        cfg: Urn the sequence must have been drawn from. Without it the
             sequence must hold twice as many whites as reds.

    Raises:
        ValueError: If the red/white counts do not match the urn
    """
    reds, whites = seq.red_count, seq.white_count
    if cfg is not None:
        if (reds, whites) != (cfg.reds, cfg.whites):
            raise ValueError(
                f"sequence has {reds} red / {whites} white marbles, "
                f"urn holds {cfg.reds} red / {cfg.whites} white"
            )
    elif 2 * reds != whites:
        raise ValueError(
            f"sequence has {reds} red / {whites} white marbles; expected exactly half as many reds as whites"
        )

    mu = 0
    best = 0
    positions = [0]
    bits = seq.bits
    for t in range(seq.length):
        if bits >> t & 1:
            mu += 1
            if mu > best:
                best = mu
        else:
            mu -= 1
        positions.append(mu)
    return WalkTrace(tuple(positions), best)


def sequence_count(cfg: WalkConfig) -> int:
    """Number of distinct colour sequences, C(n, reds); each is equally likely."""
    return comb(cfg.n, cfg.reds)


def permutation_group_size(cfg: WalkConfig) -> int:
    """Number of marble permutations sharing one colour sequence: δ!·(δ/2)!."""
    return factorial(cfg.whites) * factorial(cfg.reds)
