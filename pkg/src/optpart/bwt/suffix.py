"""Suffix array, inverse suffix array, BWT and MTF over page collections."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .pages import PageCollection
from .rangesearch import MergeSortTree

SENTINEL = -1


def suffix_array(s: Sequence[int]) -> list[int]:
    """Prefix-doubling suffix sort, ``O(n log^2 n)``."""
    n = len(s)
    if n == 0:
        return []
    sa = sorted(range(n), key=lambda i: s[i])
    rank = [0] * n
    for idx in range(1, n):
        rank[sa[idx]] = rank[sa[idx - 1]] + (s[sa[idx]] != s[sa[idx - 1]])
    k = 1
    while rank[sa[-1]] < n - 1:
        key = [(rank[i], rank[i + k] if i + k < n else -1) for i in range(n)]
        sa.sort(key=key.__getitem__)
        new = [0] * n
        for idx in range(1, n):
            new[sa[idx]] = new[sa[idx - 1]] + (key[sa[idx]] != key[sa[idx - 1]])
        rank = new
        k *= 2
    return sa


def naive_suffix_array(s: Sequence[int]) -> list[int]:
    s = list(s)
    return sorted(range(len(s)), key=lambda i: s[i:])


def bwt(s: Sequence[int]) -> list[int]:
    """BWT of ``s + [SENTINEL]`` with the sentinel's own character dropped.

    One output character per input position, in suffix order of the
    following suffix; ``s`` must not contain ``SENTINEL``.
    """
    ext = list(s) + [SENTINEL]
    sa = suffix_array(ext)
    return [ext[j - 1] for j in sa if j > 0]


def mtf_encode(seq: Sequence[int], sigma: int) -> list[int]:
    """Move-to-front over ``[0, sigma)`` starting from increasing order.

    Symbols ``>= sigma`` (page separators) encode as ``sigma`` and leave the
    list untouched.
    """
    lst = list(range(sigma))
    out = []
    for c in seq:
        if c >= sigma:
            out.append(sigma)
            continue
        k = lst.index(c)
        out.append(k)
        if k:
            del lst[k]
            lst.insert(0, c)
    return out


def mtf_histogram(seq: Sequence[int], sigma: int) -> list[int]:
    hist = [0] * (sigma + 1)
    for code in mtf_encode(seq, sigma):
        hist[code] += 1
    return hist


@dataclass
class SuffixStructures:
    """Suffix structures of ``T = S[0]#_0 ... S[m-1]#_{m-1}`` plus a sentinel.

    ``row[p]`` is the BWT row holding the character ``T[p]`` (the row of the
    suffix starting at ``p + 1``); ``points[c]`` indexes the pairs
    ``(p, row[p])`` for ``T[p] = c`` by a range-search tree.
    """

    text: tuple[int, ...]
    sigma: int
    sa: list[int]
    isa: list[int]
    bwt: list[int]
    row: list[int]
    points: list[MergeSortTree]

    @property
    def n(self) -> int:
        return len(self.text)

    def origin(self, r: int) -> int:
        """Text position whose character sits in BWT row ``r`` (-1 for the sentinel's)."""
        return self.sa[r] - 1

    def prev_active(self, c: int, a: int, b: int, h: int) -> int | None:
        """Last BWT row ``< h`` holding ``c`` from a text position in ``[a, b]``."""
        hit = self.points[c].rangemax(a, b, h - 1)
        return None if hit is None else hit[1]

    def next_active(self, c: int, a: int, b: int, h: int) -> int | None:
        """First BWT row ``> h`` holding ``c`` from a text position in ``[a, b]``."""
        hit = self.points[c].rangemin(a, b, h + 1)
        return None if hit is None else hit[1]

    def rbwt(self, a: int, b: int) -> list[int]:
        """BWT characters originating in ``T[a..b]``, in row order (linear scan)."""
        return [self.bwt[r] for r in range(len(self.bwt)) if a <= self.sa[r] - 1 <= b]


def build_suffix_structures(pc: PageCollection) -> SuffixStructures:
    text = pc.concatenated
    ext = list(text) + [SENTINEL]
    sa = suffix_array(ext)
    isa = [0] * len(ext)
    for r, j in enumerate(sa):
        isa[j] = r
    bw = [ext[j - 1] for j in sa]  # sa[r] == 0 wraps to the sentinel
    row = [isa[p + 1] for p in range(len(text))]
    pts: list[list[tuple[int, int]]] = [[] for _ in range(pc.sigma)]
    for p, c in enumerate(text):
        if c < pc.sigma:
            pts[c].append((p, row[p]))
    return SuffixStructures(text, pc.sigma, sa, isa, bw, row, [MergeSortTree(p) for p in pts])


def group_histogram(pc: PageCollection, i: int, j: int) -> list[int]:
    """From scratch: MTF histogram of the standalone BWT of pages ``i..j``."""
    return mtf_histogram(bwt(pc.group(i, j)), pc.sigma)

