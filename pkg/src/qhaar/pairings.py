"""Non-crossing pair partitions, colored variants, and their Gram matrices.

Pairings of {1..k} are kept in a canonical order (lexicographic on the sorted
pair list) so that matrix indexing is reproducible across runs.  The Gram
entry between two pairings is N**loops, where loops counts the closed loops
obtained by gluing one diagram to the reflection of the other; for pair
partitions this equals the number of connected components of the union
multigraph, which is what we compute.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InvalidDimensionError

Pair = tuple[int, int]


@dataclass(frozen=True)
class NCPairPartition:
    """A non-crossing perfect matching of {1..k}, k even."""

    k: int
    pairs: tuple[Pair, ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.pairs:
            if not (1 <= a < b <= self.k):
                raise ValueError(f"bad pair ({a},{b}) for k={self.k}")
            seen.add(a)
            seen.add(b)
        if len(seen) != self.k or len(self.pairs) != self.k // 2 or self.k % 2:
            raise ValueError("pairs do not form a perfect matching")
        for a, b in self.pairs:
            for c, d in self.pairs:
                if a < c < b < d:
                    raise ValueError(f"crossing pairs ({a},{b}) and ({c},{d})")

    def partners(self) -> list[int]:
        """0-based partner array: partners()[i] is the point matched to i."""
        m = [0] * self.k
        for a, b in self.pairs:
            m[a - 1] = b - 1
            m[b - 1] = a - 1
        return m


@dataclass(frozen=True)
class ColoredNCPairPartition:
    """A non-crossing matching joining each '1' position to a '*' position."""

    base: NCPairPartition
    pattern: tuple[str, ...]

    def __post_init__(self):
        if len(self.pattern) != self.base.k:
            raise ValueError("pattern length must equal k")
        for a, b in self.base.pairs:
            if {self.pattern[a - 1], self.pattern[b - 1]} != {"1", "*"}:
                raise ValueError(f"pair ({a},{b}) does not join a 1 to a *")


def _matchings(points: tuple[int, ...]):
    """All non-crossing matchings of an increasing point tuple (recursive)."""
    if not points:
        yield ()
        return
    first = points[0]
    for idx in range(1, len(points), 2):
        inner, outer = points[1:idx], points[idx + 1:]
        for m1 in _matchings(inner):
            for m2 in _matchings(outer):
                yield ((first, points[idx]),) + m1 + m2


@lru_cache(maxsize=None)
def enumerate_nc_pairings(k: int) -> tuple[NCPairPartition, ...]:
    """All non-crossing pairings of {1..k} in canonical order.

    Odd k gives the empty tuple (not an error), so odd moments vanish
    downstream without special casing.
    """
    if k < 0:
        raise ValueError(f"need k >= 0, got {k}")
    if k % 2:
        return ()
    raw = [tuple(sorted(m)) for m in _matchings(tuple(range(1, k + 1)))]
    raw.sort()
    return tuple(NCPairPartition(k=k, pairs=p) for p in raw)


def enumerate_colored_nc_pairings(pattern: Sequence[str]) -> tuple[ColoredNCPairPartition, ...]:
    """Non-crossing matchings of a {1,*} pattern that respect the coloring."""
    pattern = tuple(pattern)
    if any(c not in ("1", "*") for c in pattern):
        raise ValueError(f"pattern symbols must be '1' or '*': {pattern}")
    if pattern.count("1") != pattern.count("*"):
        return ()
    out = []
    for p in enumerate_nc_pairings(len(pattern)):
        if all({pattern[a - 1], pattern[b - 1]} == {"1", "*"} for a, b in p.pairs):
            out.append(ColoredNCPairPartition(base=p, pattern=pattern))
    return tuple(out)


def loop_count(p: NCPairPartition, q: NCPairPartition) -> int:
    """Number of loops when the diagram of p is glued to the reflection of q."""
    if p.k != q.k:
        raise ValueError(f"mismatched sizes {p.k} != {q.k}")
    return loops_from_partners(p.partners(), q.partners(), p.k)


def loops_from_partners(mp: list[int], mq: list[int], k: int) -> int:
    """Loop count from two 0-based partner arrays.

    The union of two perfect matchings decomposes into even cycles; walking
    mq∘mp visits each union-cycle twice, so components = (#orbit cycles)/2.
    """
    seen = 0
    cycles = 0
    for s in range(k):
        if not (seen >> s) & 1:
            cycles += 1
            x = s
            while True:
                seen |= 1 << x
                x = mq[mp[x]]
                if x == s:
                    break
    return cycles // 2


@dataclass(frozen=True)
class GramMatrix:
    """Exact integer Gram matrix N**loops over the canonical pairing list."""

    k: int
    N: int
    entries: tuple[tuple[int, ...], ...]
    pattern: Optional[tuple[str, ...]] = None


@lru_cache(maxsize=None)
def loop_matrix(k: int, pattern: Optional[tuple[str, ...]] = None) -> tuple[tuple[int, ...], ...]:
    """Pairwise loop counts over the (colored) canonical pairing list."""
    if pattern is None:
        plist = [p.partners() for p in enumerate_nc_pairings(k)]
    else:
        plist = [c.base.partners() for c in enumerate_colored_nc_pairings(pattern)]
    n = len(plist)
    rows = []
    for a in range(n):
        row = [0] * n
        for b in range(a, n):
            row[b] = loops_from_partners(plist[a], plist[b], k)
        rows.append(row)
    for a in range(n):
        for b in range(a):
            rows[a][b] = rows[b][a]
    return tuple(tuple(r) for r in rows)


def gram_matrix(k: int, N: int, pattern: Optional[Sequence[str]] = None) -> GramMatrix:
    if N < 2:
        raise InvalidDimensionError(f"need N >= 2, got {N}")
    if k % 2 and pattern is None:
        raise ValueError(f"need even k, got {k}")
    pat = tuple(pattern) if pattern is not None else None
    loops = loop_matrix(k if pat is None else len(pat), pat)
    entries = tuple(tuple(N ** l for l in row) for row in loops)
    return GramMatrix(k=k, N=N, entries=entries, pattern=pat)
