"""
Red-position combinations in lexicographic order.

A colour sequence is identified by the sorted tuple of its red positions,
a k-subset of {0..n-1}. Ranks follow the combinatorial number system so a
rank range can be turned into its first combination in O(n) and walked
with `successor` from there.
"""

from math import comb
from typing import Optional, Sequence


def rank(combination: Sequence[int], n: int) -> int:
    """Return the lexicographic rank of a sorted k-subset of {0..n-1}."""
    k = len(combination)
    r = 0
    prev = -1
    for j, c in enumerate(combination):
        if not prev < c < n:
            raise ValueError(f"combination {tuple(combination)} is not a sorted subset of 0..{n - 1}")
        remaining = k - j - 1
        # Every subset whose j-th element lies strictly between prev and c precedes this one.
        for v in range(prev + 1, c):
            r += comb(n - v - 1, remaining)
        prev = c
    return r


def unrank(r: int, n: int, k: int) -> tuple[int, ...]:
    """Return the sorted k-subset of {0..n-1} with lexicographic rank r."""
    total = comb(n, k)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} outside [0, {total})")
    result = []
    v = 0
    for j in range(k):
        remaining = k - j - 1
        while True:
            block = comb(n - v - 1, remaining)
            if r < block:
                break
            r -= block
            v += 1
        result.append(v)
        v += 1
    return tuple(result)


def successor(combination: list[int], n: int) -> bool:
    """
    Advance `combination` in place to its lexicographic successor.

    Returns False (leaving the list untouched) when it is already the last one.
    """
    k = len(combination)
    i = k - 1
    while i >= 0 and combination[i] == n - k + i:
        i -= 1
    if i < 0:
        return False
    combination[i] += 1
    for j in range(i + 1, k):
        combination[j] = combination[j - 1] + 1
    return True


def family_stop_rank(prefix: Sequence[int], n: int, k: int) -> int:
    """
    Rank one past the last combination that starts with `prefix`.

    All combinations sharing a prefix form one contiguous lexicographic block.
    """
    j = len(prefix)
    last = tuple(prefix) + tuple(range(n - (k - j), n))
    return rank(last, n) + 1


def minimal_completion(prefix: Sequence[int], n: int, k: int) -> Optional[tuple[int, ...]]:
    """Smallest combination starting with `prefix`, or None if it cannot be completed."""
    start = prefix[-1] + 1 if prefix else 0
    missing = k - len(prefix)
    if missing < 0 or start + missing > n:
        return None
    return tuple(prefix) + tuple(range(start, start + missing))
