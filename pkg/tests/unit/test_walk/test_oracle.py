"""Unit tests for the DP oracle against the published urn decimals."""

import csv
from fractions import Fraction
from pathlib import Path

import pytest

from src.walk.core import WalkConfig, sequence_count
from src.walk.oracle import expected_max_dp, expected_max_ratio_dp, max_distribution_dp

REFERENCE = Path(__file__).parents[3] / "samples" / "reference_values.csv"

# half a unit in the sixth place
TOLERANCE = 5e-7
# 7/15 is published truncated as 0.466666
LOOSE = {4: 1e-6}


def reference_rows(column: str) -> list[tuple[int, str]]:
    with open(REFERENCE, encoding="utf-8") as f:
        return [(int(row["delta"]), row[column]) for row in csv.DictReader(f) if row[column]]


def test_distribution_at_delta_4():
    """Test the count of sequences per maximum at δ = 4."""
    assert max_distribution_dp(WalkConfig(4)) == {0: 9, 1: 5, 2: 1}


def test_distribution_sums_to_sequence_count():
    """Test the distribution accounts for every sequence."""
    for delta in range(0, 40, 2):
        cfg = WalkConfig(delta)
        assert sum(max_distribution_dp(cfg).values()) == sequence_count(cfg)


def test_ratio_denominator_is_sequence_count():
    """Test the DP ratio keeps C(n, δ/2) as denominator."""
    ratio, states = expected_max_ratio_dp(WalkConfig(6))
    assert str(ratio) == "46/84"
    assert states > 0


@pytest.mark.parametrize("delta,decimal", reference_rows("urn"))
def test_published_urn_values(delta, decimal):
    """Test the DP against every published urn decimal."""
    tolerance = LOOSE.get(delta, TOLERANCE)
    assert abs(float(expected_max_dp(WalkConfig(delta))) - float(decimal)) <= tolerance


def test_truncated_entry_is_the_only_loose_one():
    """Test the tight tolerance rejects 0.466666 for 7/15."""
    assert abs(float(Fraction(7, 15)) - 0.466666) > TOLERANCE
    assert abs(float(expected_max_dp(WalkConfig(4))) - 0.466667) <= TOLERANCE


def test_small_exact_values():
    """Test δ = 2, 4 and 6 exactly."""
    assert expected_max_dp(WalkConfig(2)) == Fraction(1, 3)
    assert expected_max_dp(WalkConfig(4)) == Fraction(7, 15)
    assert expected_max_dp(WalkConfig(6)) == Fraction(46, 84)


def test_increasing_and_below_one():
    values = [expected_max_dp(WalkConfig(d)) for d in range(2, 62, 2)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert all(v < 1 for v in values)
