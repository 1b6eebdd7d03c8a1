"""Moment oracles for free semicircular and free circular families.

These are the N -> infinity limits of the normalized generator families.
All free cumulants beyond order 2 vanish for (semi)circular variables, so
joint moments are plain counts of non-crossing pairings whose pairs join
equal labels (and, in the circular case, a 1 with a *).
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .pairings import enumerate_nc_pairings

Label = tuple[int, int]


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def semicircular_moment(labels: Sequence[Label]) -> int:
    """tau(s_{l1} s_{l2} ... s_{lk}) for a free semicircular family.

    Counts non-crossing pairings joining equal labels; 0 for odd length.
    """
    k = len(labels)
    return sum(
        1
        for p in enumerate_nc_pairings(k)
        if all(labels[a - 1] == labels[b - 1] for a, b in p.pairs)
    )


def circular_moment(letters: Sequence[tuple[Label, str]]) -> int:
    """phi(c^eps1 ... c^epsk) for a free circular family.

    Pairs must join equal labels and opposite star flags; 0 when the counts
    of 1 and * differ.
    """
    k = len(letters)
    eps = [e for _, e in letters]
    if eps.count("1") != eps.count("*"):
        return 0
    return sum(
        1
        for p in enumerate_nc_pairings(k)
        if all(
            letters[a - 1][0] == letters[b - 1][0] and {eps[a - 1], eps[b - 1]} == {"1", "*"}
            for a, b in p.pairs
        )
    )


def semicircle_moment_single(k: int) -> int:
    """k-th moment of the standard semicircle law: Catalan(k/2) for even k."""
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k % 2:
        return 0
    return catalan(k // 2)
