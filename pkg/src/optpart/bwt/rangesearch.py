"""Static 2-D range search: max/min ``y`` inside an ``x`` slab.

A merge-sort tree over the points sorted by ``x``: each node of the
segment tree stores its points sorted by ``y``. A query splits the ``x``
range into ``O(log p)`` nodes and binary-searches each, ``O(log^2 p)``.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Sequence

Point = tuple[int, int]


class MergeSortTree:
    def __init__(self, points: Sequence[Point]):
        pts = sorted(points)
        xs = [x for x, _ in pts]
        if len(set(xs)) != len(xs) or len({y for _, y in pts}) != len(pts):
            raise ValueError("points must have distinct x and distinct y coordinates")
        self.xs = xs
        self.size = size = len(pts)
        # node i covers leaves; stored as parallel (ys, xs-by-y) lists
        self.ys: list[list[int]] = [[] for _ in range(2 * size)]
        self.px: list[list[int]] = [[] for _ in range(2 * size)]
        for i, (x, y) in enumerate(pts):
            self.ys[size + i] = [y]
            self.px[size + i] = [x]
        for i in range(size - 1, 0, -1):
            merged = sorted(zip(self.ys[2 * i] + self.ys[2 * i + 1],
                                self.px[2 * i] + self.px[2 * i + 1]))
            self.ys[i] = [y for y, _ in merged]
            self.px[i] = [x for _, x in merged]

    def __len__(self):
        return self.size

    def _nodes(self, lo: int, hi: int):
        """Tree nodes covering the points with ``lo <= x <= hi``."""
        a = bisect_left(self.xs, lo) + self.size
        b = bisect_right(self.xs, hi) + self.size
        while a < b:
            if a & 1:
                yield a
                a += 1
            if b & 1:
                b -= 1
                yield b
            a >>= 1
            b >>= 1

    def rangemax(self, lo: int, hi: int, h: int) -> Point | None:
        """Point with ``lo <= x <= hi``, ``y <= h`` and the largest ``y``."""
        best: Point | None = None
        for node in self._nodes(lo, hi):
            ys = self.ys[node]
            k = bisect_right(ys, h) - 1
            if k >= 0 and (best is None or ys[k] > best[1]):
                best = (self.px[node][k], ys[k])
        return best

    def rangemin(self, lo: int, hi: int, h: int) -> Point | None:
        """Point with ``lo <= x <= hi``, ``y >= h`` and the smallest ``y``."""
        best: Point | None = None
        for node in self._nodes(lo, hi):
            ys = self.ys[node]
            k = bisect_left(ys, h)
            if k < len(ys) and (best is None or ys[k] < best[1]):
                best = (self.px[node][k], ys[k])
        return best


def brute_rangemax(points: Sequence[Point], lo: int, hi: int, h: int) -> Point | None:
    cand = [(x, y) for x, y in points if lo <= x <= hi and y <= h]
    return max(cand, key=lambda p: p[1]) if cand else None


def brute_rangemin(points: Sequence[Point], lo: int, hi: int, h: int) -> Point | None:
    cand = [(x, y) for x, y in points if lo <= x <= hi and y >= h]
    return min(cand, key=lambda p: p[1]) if cand else None
