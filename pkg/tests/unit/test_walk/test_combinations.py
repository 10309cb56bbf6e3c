"""Unit tests for lexicographic combination ranking."""

from itertools import combinations
from math import comb

import pytest

from src.walk.combinations import family_stop_rank, minimal_completion, rank, successor, unrank


def test_rank_follows_lexicographic_order():
    """Test that ranks count combinations in itertools order."""
    for r, combo in enumerate(combinations(range(7), 3)):
        assert rank(combo, 7) == r
        assert unrank(r, 7, 3) == combo


def test_successor_visits_every_combination():
    """Test that successor walks the whole rank space once."""
    current = [0, 1, 2]
    seen = [tuple(current)]
    while successor(current, 6):
        seen.append(tuple(current))
    assert seen == list(combinations(range(6), 3))
    # the last combination is left untouched
    assert current == [3, 4, 5]


def test_successor_of_empty_combination():
    """Test that the single empty combination has no successor."""
    assert successor([], 4) is False


def test_unrank_out_of_range():
    """Test that a rank past C(n, k) is refused."""
    with pytest.raises(ValueError, match="outside"):
        unrank(comb(6, 2), 6, 2)


def test_rank_rejects_unsorted():
    """Test that an unsorted combination is refused."""
    with pytest.raises(ValueError):
        rank((3, 1), 6)


def test_family_stop_rank():
    """Test the end of the block sharing a prefix."""
    # combinations of 2 out of 6 that start with 1 occupy ranks 5..8
    assert family_stop_rank((1,), 6, 2) == 9
    assert family_stop_rank((), 6, 2) == 15
    assert family_stop_rank((1, 3), 6, 2) == 7


def test_minimal_completion():
    """Test the first combination that starts with a prefix."""
    assert minimal_completion((1,), 6, 2) == (1, 2)
    assert minimal_completion((), 6, 2) == (0, 1)
    assert minimal_completion((5,), 6, 2) is None
