"""Page-aligned partitioning for a BWT + MTF compressor.

Nodes are page boundaries ``0..m``; the edge ``(i, j)`` costs the coded
size of ``MTF(BWT(S[i] ... S[j-1]))``. The approximate solver reuses the
bucket scheme of :mod:`optpart.partition`, with windows kept as
:class:`BwtWindowState` objects indexed by their right page. Only the
states at current window ends survive between nodes.
"""

from __future__ import annotations

import math

from ..costs import CostModel
from ..partition import (
    TIE_TOL,
    EdgeBudget,
    Partition,
    PartitionStats,
    _ShortestPath,
    _smallest_power_at_least,
)
from .pages import PageCollection
from .suffix import SuffixStructures, build_suffix_structures, group_histogram
from .window import BwtWindowState, bwt_app, bwt_len, bwt_rem, histogram_cost


def page_group_cost(pc: PageCollection, i: int, j: int, coder: str = "entropy",
                    model: CostModel | None = None) -> float:
    """From scratch: cost of pages ``i..j`` compressed as one group."""
    if not 0 <= i <= j < pc.m:
        raise ValueError("page index out of range")
    return histogram_cost(group_histogram(pc, i, j), coder, model or CostModel(),
                          pc.sigma + 1).total_bits


def exact_page_partition(pc: PageCollection, coder: str = "entropy",
                         model: CostModel | None = None) -> Partition:
    """Optimal page-aligned partition; every group is re-encoded from scratch."""
    model = model or CostModel()
    m = pc.m
    sp = _ShortestPath(m, prefer_later=True)
    for i in range(m):
        for j in range(i, m):
            sp.relax(i, j + 1, page_group_cost(pc, i, j, coder, model))
    cuts, costs = sp.path(m)
    return Partition(cuts, costs, math.fsum(costs))


def page_aligned_partition(pc: PageCollection, epsilon: float, coder: str = "entropy",
                           model: CostModel | None = None,
                           ss: SuffixStructures | None = None) -> Partition:
    """``(1+epsilon)``-approximate page-aligned partition (cuts are page counts)."""
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    model = model or CostModel()
    ss = ss or build_suffix_structures(pc)
    m = pc.m
    counters = {"apps": 0, "rems": 0, "clamps": 0}

    def cost(ws):
        return bwt_len(ws, coder, model).total_bits

    def app(ws):
        bwt_app(ws)
        counters["apps"] += 1

    full = BwtWindowState(pc, ss, 0)
    for _ in range(m):
        app(full)
    base = 1.0 + epsilon
    top = _smallest_power_at_least(base, cost(full) + 1.0)
    # the running maximum starts at a single-page cost, so lower buckets stay empty
    cmin = min(page_group_cost(pc, p, p, coder, model) for p in range(m))
    first = min(top, _smallest_power_at_least(base, cmin))
    bounds = [base ** t for t in range(first, top + 1)]
    ends = [-1] * len(bounds)

    sp = _ShortestPath(m, prefer_later=False)
    states: dict[int, BwtWindowState] = {}
    per_node = 0
    for l in range(m):
        if l:
            for r in list(states):
                if r < l:
                    del states[r]
                else:
                    bwt_rem(states[r])
                    counters["rems"] += 1
            bwt_rem(full)
            counters["rems"] += 1
        upper = m - 1
        for idx in range(len(bounds) - 1, -1, -1):
            r = max(ends[idx], l - 1)
            running = cost(states[r]) if r >= l else 0.0
            while r < upper:
                nxt = states.get(r + 1)
                if nxt is None:
                    nxt = states[r].copy() if r >= l else BwtWindowState(pc, ss, l)
                    app(nxt)
                    states[r + 1] = nxt
                c = cost(nxt)
                if c < running:
                    if c < running - TIE_TOL * max(1.0, running):
                        counters["clamps"] += 1
                    c = running
                if c > bounds[idx]:
                    break
                r += 1
                running = c
            ends[idx] = upper = r
        keep = {r for r in ends if r >= l}
        for r in list(states):
            if r not in keep:
                del states[r]

        edges = []
        for r in sorted(keep):
            edges.append((r + 1, cost(states[r])))
        if not edges or edges[-1][0] != m:
            edges.append((m, cost(full)))
        per_node = max(per_node, len(edges))
        for j, c in edges:
            sp.relax(l, j, c)

    cuts, costs = sp.path(m)
    stats = PartitionStats(
        budget=EdgeBudget(epsilon, top, first, sp.relaxed),
        edges_relaxed=sp.relaxed,
        apps=counters["apps"],
        rems=counters["rems"],
        clamps=counters["clamps"],
        max_edges_per_node=per_node,
    )
    return Partition(cuts, costs, math.fsum(costs), stats)
