"""Unit tests for the with-replacement walk."""

import csv
from fractions import Fraction
from itertools import product
from pathlib import Path

import pytest

from src.walk.core import WalkConfig
from src.walk.iid import IidWalkConfig, expected_max_iid, expected_max_iid_limit, expected_max_iid_ratio
from src.walk.oracle import expected_max_dp

REFERENCE = Path(__file__).parents[3] / "samples" / "reference_values.csv"

TOLERANCE = 5e-7
# published with five digits only
LOOSE = {14: 1e-5}


def brute_force(steps: int, p: Fraction) -> Fraction:
    total = Fraction(0)
    for ups in product((True, False), repeat=steps):
        position = best = 0
        weight = Fraction(1)
        for up in ups:
            position += 1 if up else -1
            best = max(best, position)
            weight *= p if up else 1 - p
        total += weight * best
    return total


def test_published_fractions():
    """Test the exact values for 3, 6 and 9 steps."""
    assert str(expected_max_iid_ratio(IidWalkConfig(3))) == "15/27"
    assert expected_max_iid(IidWalkConfig(6)) == Fraction(524, 729)
    assert expected_max_iid(IidWalkConfig(9)) == Fraction(16017, 19683)


def test_matching_horizon():
    """Test the iid walk matching an urn takes n steps at p = 1/3."""
    cfg = IidWalkConfig.matching(WalkConfig(4))
    assert cfg.steps == 6
    assert cfg.p == Fraction(1, 3)


@pytest.mark.parametrize("steps", range(0, 9))
@pytest.mark.parametrize("p", [Fraction(1, 3), Fraction(2, 5), Fraction(1, 2), Fraction(3, 4)])
def test_matches_path_enumeration(steps, p):
    """Test the DP against every weighted path."""
    assert expected_max_iid(IidWalkConfig(steps, p)) == brute_force(steps, p)


def test_degenerate_p():
    """Test walks that never or always rise."""
    assert expected_max_iid(IidWalkConfig(5, 0)) == 0
    assert expected_max_iid(IidWalkConfig(5, 1)) == 5


def test_p_accepts_strings():
    assert IidWalkConfig(3, "1/3").p == Fraction(1, 3)


def test_invalid_config():
    """Test negative steps and p outside [0, 1]."""
    with pytest.raises(ValueError):
        IidWalkConfig(-1)
    with pytest.raises(ValueError):
        IidWalkConfig(3, Fraction(3, 2))


def test_published_iid_values():
    """Test the DP against every published iid decimal."""
    with open(REFERENCE, encoding="utf-8") as f:
        rows = [row for row in csv.DictReader(f) if row["iid"]]
    assert rows
    for row in rows:
        delta = int(row["delta"])
        value = expected_max_iid(IidWalkConfig.matching(WalkConfig(delta)))
        assert abs(float(value) - float(row["iid"])) <= LOOSE.get(delta, TOLERANCE), delta


class TestLimit:
    """Test the unbounded-horizon expected maximum."""

    def test_one_third_is_exactly_one(self):
        """Test p = 1/3 gives exactly 1."""
        assert expected_max_iid_limit(Fraction(1, 3)) == 1
        assert expected_max_iid_limit("1/3") == 1

    def test_other_p(self):
        """Test p = 1/4 gives 1/2."""
        assert expected_max_iid_limit(Fraction(1, 4)) == Fraction(1, 2)

    def test_small_p(self):
        """Test p = 1/100 gives p/(q - p) = 1/98."""
        assert expected_max_iid_limit(Fraction(1, 100)) == Fraction(1, 98)
        assert expected_max_iid_limit("1/100") == Fraction(1, 98)

    @pytest.mark.parametrize("p", [0, Fraction(1, 2), Fraction(2, 3)])
    def test_no_finite_limit(self, p):
        """Test p outside (0, 1/2) is refused."""
        with pytest.raises(ValueError, match="finite"):
            expected_max_iid_limit(p)

    def test_finite_horizon_approaches_limit(self):
        """Test finite horizons rise towards 1 from below."""
        values = [expected_max_iid(IidWalkConfig(steps)) for steps in range(0, 200, 3)]
        assert all(a <= b for a, b in zip(values, values[1:]))
        assert all(v < 1 for v in values)
        assert 1 - values[-1] < Fraction(1, 100)

    def test_long_horizon(self):
        assert 1 - expected_max_iid(IidWalkConfig(600)) < Fraction(1, 10**6)


def test_urn_walk_below_iid_walk():
    """Test drawing without replacement lowers the expected maximum."""
    for delta in range(2, 62, 2):
        cfg = WalkConfig(delta)
        assert expected_max_dp(cfg) < expected_max_iid(IidWalkConfig.matching(cfg))


def test_gap_to_iid_walk_shrinks():
    """Test the gap between the two walks narrows as δ grows."""
    gaps = []
    for delta in range(8, 62, 2):
        cfg = WalkConfig(delta)
        gaps.append(expected_max_iid(IidWalkConfig.matching(cfg)) - expected_max_dp(cfg))
    assert all(a > b for a, b in zip(gaps, gaps[1:]))
