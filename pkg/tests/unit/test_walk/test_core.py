"""Unit tests for the urn model and prefix-maximum evaluation."""

from fractions import Fraction
from math import factorial

import pytest

from src.walk.core import (
    Color,
    Ratio,
    StepSequence,
    WalkConfig,
    max_prefix,
    permutation_group_size,
    sequence_count,
)


class TestWalkConfig:
    """Test urn parameters and their validation."""

    def test_default_ratio(self):
        """Test that δ/2 reds give p = 1/3 and end the walk at -δ/2."""
        cfg = WalkConfig(4)
        assert cfg.whites == 4
        assert cfg.reds == 2
        assert cfg.n == 6
        assert cfg.p == Fraction(1, 3)
        assert cfg.q == Fraction(2, 3)
        assert cfg.final_position == -2
        assert cfg.is_default_ratio

    def test_odd_delta_rejected(self):
        """Test that an odd δ has no integral red count."""
        with pytest.raises(ValueError, match="even"):
            WalkConfig(3)

    def test_negative_delta_rejected(self):
        """Test that a negative δ is refused."""
        with pytest.raises(ValueError):
            WalkConfig(-2)

    def test_reds_override_allows_odd_delta(self):
        """Test that an explicit red count lifts the even-δ rule."""
        cfg = WalkConfig(5, reds=3)
        assert cfg.n == 8
        assert cfg.p == Fraction(3, 8)
        assert not cfg.is_default_ratio

    def test_empty_urn(self):
        """Test the δ = 0 urn."""
        cfg = WalkConfig(0)
        assert cfg.n == 0
        assert cfg.p == 0


class TestStepSequence:
    """Test building colour sequences."""

    def test_parse(self):
        """Test parsing a plain R/W string."""
        seq = StepSequence.parse("RWW")
        assert seq.bits == 1
        assert seq.length == 3
        assert seq.colors == (Color.RED, Color.WHITE, Color.WHITE)
        assert str(seq) == "RWW"

    def test_parse_separators_and_case(self):
        """Test that commas, spaces and lower case are accepted."""
        assert StepSequence.parse("r, w w") == StepSequence.parse("RWW")

    def test_parse_rejects_other_letters(self):
        """Test that letters other than R and W are refused."""
        with pytest.raises(ValueError, match="only R and W"):
            StepSequence.parse("RXW")

    def test_red_positions(self):
        """Test building a sequence from red draw indices."""
        seq = StepSequence.from_red_positions([1, 4], 6)
        assert str(seq) == "WRWWRW"
        assert seq.red_positions == (1, 4)
        assert seq.red_count == 2
        assert seq.white_count == 4

    def test_red_position_out_of_range(self):
        """Test that a red past the last draw is refused."""
        with pytest.raises(ValueError):
            StepSequence.from_red_positions([6], 6)


class TestMaxPrefix:
    """Test walking a sequence."""

    def test_red_first(self):
        """Test that a leading red reaches 1."""
        trace = max_prefix(StepSequence.parse("RWW"))
        assert trace.positions == (0, 1, 0, -1)
        assert trace.max_position == 1
        assert trace.final_position == -1

    def test_red_later_never_rises(self):
        """Test that a red after a white never lifts the walk above 0."""
        assert max_prefix(StepSequence.parse("WRW")).max_position == 0
        assert max_prefix(StepSequence.parse("WWR")).max_position == 0

    def test_two_reds_up_front(self):
        """Test the highest walk at δ = 4."""
        trace = max_prefix(StepSequence.parse("RRWWWW"))
        assert trace.max_position == 2
        assert trace.min_position == -2

    def test_count_mismatch(self):
        """Test that a sequence without the 1:2 ratio is refused."""
        with pytest.raises(ValueError, match="half as many reds"):
            max_prefix(StepSequence.parse("RRW"))

    def test_checked_against_urn(self):
        """Test that an explicit urn is used for the count check."""
        with pytest.raises(ValueError, match="urn holds"):
            max_prefix(StepSequence.parse("RWW"), WalkConfig(4))
        assert max_prefix(StepSequence.parse("RRWWWWW"), WalkConfig(5, reds=2)).max_position == 2

    def test_ends_at_minus_half_delta(self):
        """Test that a full draw ends at -δ/2."""
        cfg = WalkConfig(6)
        seq = StepSequence.from_red_positions([2, 5, 8], cfg.n)
        assert max_prefix(seq, cfg).final_position == cfg.final_position


def test_group_sizes_cover_all_permutations():
    """Test that C(n, δ/2) groups of δ!·(δ/2)! orderings make up n!."""
    for delta in (2, 4, 6, 8):
        cfg = WalkConfig(delta)
        assert sequence_count(cfg) * permutation_group_size(cfg) == factorial(cfg.n)


def test_ratio_keeps_unreduced_form():
    """Test that 46/84 is shown as is but valued in lowest terms."""
    ratio = Ratio(46, 84)
    assert str(ratio) == "46/84"
    assert ratio.value == Fraction(23, 42)


def test_ratio_zero_renders_plainly():
    """Test that a zero ratio prints as 0."""
    assert str(Ratio(0, 1)) == "0"


def test_ratio_rejects_bad_denominator():
    """Test that a zero denominator is refused."""
    with pytest.raises(ValueError):
        Ratio(1, 0)
