"""Exact Weingarten tables and Haar-state moments for O_N^+ and U_N^+.

A moment of a generator word of even length k is the double sum over
(colored) non-crossing pairings (p, q) of

    delta_p(row indices) * delta_q(column indices) * Wg(p, q),

where Wg is the exact rational inverse of the Gram matrix N**loops.  Tables
are built by fraction-free elimination and cached; words longer than
TABLE_KMAX are evaluated through a modular bilinear solve instead of a full
table.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from . import exactla, pairings
from .errors import InvalidDimensionError, InvalidIndexError, ResourceLimitError

log = logging.getLogger(__name__)

# Largest k for which a full table is built (Gram size 132 at k=12).
TABLE_KMAX = 12
# Hard default admission limit; callers may raise it explicitly.
DEFAULT_KMAX = 12

Letter = tuple[int, int, str]  # (row, column, '1' or '*')


@dataclass(frozen=True)
class GeneratorWord:
    """A product of generators u_ij (orthogonal) or v_ij^eps (unitary)."""

    letters: tuple[Letter, ...]
    model: str = "o+"

    def __post_init__(self):
        if self.model not in ("o+", "u+"):
            raise ValueError(f"unknown model {self.model!r}")
        for i, j, eps in self.letters:
            if i < 1 or j < 1:
                raise InvalidIndexError(f"indices must be >= 1: ({i},{j})")
            if eps not in ("1", "*"):
                raise ValueError(f"bad star flag {eps!r}")
            if self.model == "o+" and eps != "1":
                raise ValueError("orthogonal generators are self-adjoint")


@dataclass(frozen=True)
class WeingartenTable:
    """Gram matrix and its exact inverse num/den over the canonical pairings."""

    k: int
    N: int
    pattern: Optional[tuple[str, ...]]
    gram: pairings.GramMatrix
    wg_num: tuple[tuple[int, ...], ...]
    wg_den: int

    def wg(self, a: int, b: int) -> Fraction:
        return Fraction(self.wg_num[a][b], self.wg_den)

    @property
    def size(self) -> int:
        return len(self.wg_num)


_cache: dict[tuple, WeingartenTable] = {}
_cache_lock = threading.Lock()
_rowsum_cache: dict[tuple, tuple[int, ...]] = {}


def weingarten_table(k: int, N: int, pattern: Optional[Sequence[str]] = None,
                     kmax: int = DEFAULT_KMAX) -> WeingartenTable:
    """Build (or fetch) the exact Weingarten table for (k, N, pattern)."""
    if N < 2:
        raise InvalidDimensionError(f"need N >= 2, got {N}")
    if k % 2:
        raise ValueError(f"need even k, got {k}")
    if k > kmax:
        raise ResourceLimitError(f"k={k} exceeds kmax={kmax}", required_k=k)
    if k > TABLE_KMAX:
        log.warning("building full Weingarten table at k=%d (size %d); this is costly",
                    k, len(pairings.enumerate_nc_pairings(k)))
    pat = tuple(pattern) if pattern is not None else None
    key = (k, N, pat)
    with _cache_lock:
        hit = _cache.get(key)
    if hit is not None:
        return hit
    gram = pairings.gram_matrix(k, N, pat)
    num, den = exactla.fraction_free_inverse(gram.entries)
    if den == 0:
        raise InvalidDimensionError(f"singular Gram matrix at k={k}, N={N}")
    table = WeingartenTable(k=k, N=N, pattern=pat, gram=gram,
                            wg_num=tuple(tuple(r) for r in num), wg_den=den)
    with _cache_lock:
        _cache.setdefault(key, table)  # write-once per key
    return table


def _row_labels(word: Sequence[Letter]) -> tuple:
    return tuple(l[0] for l in word)


def _col_labels(word: Sequence[Letter]) -> tuple:
    return tuple(l[1] for l in word)


def _compatible(partition_pairs, labels) -> bool:
    return all(labels[a - 1] == labels[b - 1] for a, b in partition_pairs)


def _wg_rowsums(table: WeingartenTable) -> tuple[int, ...]:
    """Column sums of wg_num; shortcut for words with all-equal row labels."""
    key = (table.k, table.N, table.pattern)
    hit = _rowsum_cache.get(key)
    if hit is None:
        n = table.size
        hit = tuple(sum(table.wg_num[p][q] for p in range(n)) for q in range(n))
        _rowsum_cache[key] = hit
    return hit


def haar_moment(word, N: int, kmax: int = DEFAULT_KMAX) -> Fraction:
    """Exact Haar-state moment of a generator word at dimension N.

    Accepts a GeneratorWord or a bare letter sequence (then model 'o+' if all
    star flags are '1', otherwise 'u+').  Odd-length words are 0.
    """
    if isinstance(word, GeneratorWord):
        letters, model = word.letters, word.model
    else:
        letters = tuple(word)
        model = "o+" if all(eps == "1" for _, _, eps in letters) else "u+"
    if N < 2:
        raise InvalidDimensionError(f"need N >= 2, got {N}")
    for i, j, _ in letters:
        if i > N or j > N:
            raise InvalidIndexError(f"index ({i},{j}) exceeds N={N}")
    k = len(letters)
    if k == 0:
        return Fraction(1)
    if k % 2:
        return Fraction(0)

    pattern: Optional[tuple[str, ...]] = None
    if model == "u+":
        pattern = tuple(eps for _, _, eps in letters)
        if pattern.count("1") != pattern.count("*"):
            return Fraction(0)
        plist = [c.base for c in pairings.enumerate_colored_nc_pairings(pattern)]
    else:
        plist = list(pairings.enumerate_nc_pairings(k))
    if not plist:
        return Fraction(0)

    rows, cols = _row_labels(letters), _col_labels(letters)
    R = [a for a, p in enumerate(plist) if _compatible(p.pairs, rows)]
    C = [a for a, p in enumerate(plist) if _compatible(p.pairs, cols)]
    if not R or not C:
        return Fraction(0)

    if k <= min(kmax, TABLE_KMAX):
        table = weingarten_table(k, N, pattern, kmax=kmax)
        if len(R) == table.size:
            sums = _wg_rowsums(table)
            total = sum(sums[q] for q in C)
        elif len(C) == table.size:
            sums = _wg_rowsums(table)
            total = sum(sums[p] for p in R)
        else:
            num = table.wg_num
            total = sum(num[p][q] for p in R for q in C)
        return Fraction(total, table.wg_den)

    if k > kmax:
        raise ResourceLimitError(f"word length {k} exceeds kmax={kmax}", required_k=k)
    # Large-k route: single exact bilinear solve, no full inverse.
    log.warning("haar_moment at k=%d via modular solve (%d pairings)", k, len(plist))
    loops = pairings.loop_matrix(k, pattern)
    loop_arr = np.array(loops, dtype=np.int64)
    return exactla.bilinear_solve(loop_arr, N, R, C)


def unitarity_contraction(word, N: int, position: int, kmax: int = DEFAULT_KMAX) -> Fraction:
    """Sum over j of the moment with column j placed at two adjacent letters.

    The letters at `position` and `position+1` must carry equal row indices;
    their column entries are replaced by each j = 1..N and the moments are
    summed.  By unitarity this equals the moment of the word with the two
    letters removed.
    """
    if isinstance(word, GeneratorWord):
        letters, model = word.letters, word.model
    else:
        letters, model = tuple(word), None
    if not (0 <= position < len(letters) - 1):
        raise ValueError(f"bad position {position} for word of length {len(letters)}")
    (a1, _, e1), (a2, _, e2) = letters[position], letters[position + 1]
    if a1 != a2:
        raise ValueError("adjacent letters must share a row index")
    total = Fraction(0)
    for j in range(1, N + 1):
        mod = letters[:position] + ((a1, j, e1), (a2, j, e2)) + letters[position + 2:]
        w = GeneratorWord(mod, model) if model else mod
        total += haar_moment(w, N, kmax=kmax)
    return total
