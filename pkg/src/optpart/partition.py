"""Exact and (1+eps)-approximate optimal partitioning.

A partition of ``T`` is a path from node 0 to node ``n`` in the DAG whose
edge ``(i, j)`` costs the estimated compressed size of ``T[i..j-1]``. The
approximate solver only relaxes, from each node, the longest edge whose cost
fits under each threshold ``(1+eps)^t`` plus the edge to the end node; these
edges are generated on the fly by a :class:`~optpart.windows.WindowSet`
sweeping left to right.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .costs import CostModel, SegmentCost, segment_cost
from .text import Text
from .windows import WindowSet, default_variant

TIE_TOL = 1e-9


@dataclass(frozen=True)
class EdgeBudget:
    epsilon: float
    bucket_count: int
    first_bucket: int
    generated_edges: int = 0

    @property
    def windows(self) -> int:
        return self.bucket_count - self.first_bucket + 1


@dataclass(frozen=True)
class PartitionStats:
    budget: EdgeBudget
    edges_relaxed: int
    apps: int
    rems: int
    clamps: int
    max_edges_per_node: int


@dataclass(frozen=True)
class Partition:
    """Segment end positions (exclusive, last one is ``n``) and their costs."""

    cuts: tuple[int, ...]
    segment_costs: tuple[float, ...]
    total_bits: float
    stats: PartitionStats | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.cuts:
            raise ValueError("malformed partition")
        if any(b <= a for a, b in zip((0,) + self.cuts, self.cuts)):
            raise ValueError("malformed partition")
        if len(self.segment_costs) != len(self.cuts):
            raise ValueError("malformed partition")

    @property
    def n(self) -> int:
        return self.cuts[-1]

    def segments(self) -> list[tuple[int, int]]:
        """Half-open ``(start, end)`` pairs."""
        return list(zip((0,) + self.cuts[:-1], self.cuts))

    @classmethod
    def from_cuts(cls, t: Text, model: CostModel, cuts) -> "Partition":
        cuts = tuple(cuts)
        costs = tuple(segment_cost(t, a, b - 1, model).total_bits
                      for a, b in zip((0,) + cuts[:-1], cuts))
        return cls(cuts, costs, math.fsum(costs))


class _ShortestPath:
    """Left-to-right relaxation over a DAG on nodes ``0..n``.

    Ties within ``TIE_TOL`` go to fewer segments; remaining ties are settled
    by ``prefer_later``.
    """

    def __init__(self, n: int, prefer_later: bool):
        self.dist = [math.inf] * (n + 1)
        self.pred = [-1] * (n + 1)
        self.cost = [0.0] * (n + 1)
        self.nseg = [0] * (n + 1)
        self.dist[0] = 0.0
        self.prefer_later = prefer_later
        self.relaxed = 0

    def relax(self, i: int, j: int, c: float):
        self.relaxed += 1
        nd = self.dist[i] + c
        old = self.dist[j]
        if nd < old - TIE_TOL:
            take = True
        elif nd <= old + TIE_TOL:
            ns, cur = self.nseg[i] + 1, self.nseg[j]
            take = ns < cur or (ns == cur and self.prefer_later and i > self.pred[j])
        else:
            take = False
        if take:
            self.dist[j] = nd
            self.pred[j] = i
            self.cost[j] = c
            self.nseg[j] = self.nseg[i] + 1

    def path(self, end: int) -> tuple[tuple[int, ...], tuple[float, ...]]:
        cuts, costs = [], []
        j = end
        while j > 0:
            cuts.append(j)
            costs.append(self.cost[j])
            j = self.pred[j]
            if j < 0:
                raise RuntimeError("end node unreachable")
        return tuple(reversed(cuts)), tuple(reversed(costs))


# -- exact oracle ---------------------------------------------------------

def exact_dp_partition(t: Text, model: CostModel, naive: bool = False) -> Partition:
    """Minimum-cost partition by dynamic programming over all ``O(n^2)`` edges.

    Each row sweeps one incremental window, so the run is quadratic;
    ``naive=True`` recomputes every segment from scratch instead (cubic,
    meant for cross-checking small inputs).
    """
    n = t.n
    if n < 1:
        raise ValueError("empty text")
    cap = model.block_cap or n
    sp = _ShortestPath(n, prefer_later=True)
    variant = "korder" if model.korder else "simple"
    for j in range(n):
        stop = min(n, j + cap)
        if naive:
            for e in range(j, stop):
                sp.relax(j, e + 1, segment_cost(t, j, e, model).total_bits)
            continue
        ws = WindowSet(t, 1, variant, model, start=j, korder_counters="simple")
        for e in range(j, stop):
            ws.app(0)
            sp.relax(j, e + 1, ws.total(0))
    cuts, costs = sp.path(n)
    return Partition(cuts, costs, math.fsum(costs))


# -- approximation ----------------------------------------------------------

def _smallest_power_at_least(base: float, x: float, floor: int = 1) -> int:
    """Smallest integer ``t >= floor`` with ``base**t >= x``."""
    if x <= base ** floor:
        return floor
    t = max(floor, int(math.log(x) / math.log(base)))
    while base ** t < x:
        t += 1
    while t > floor and base ** (t - 1) >= x:
        t -= 1
    return t


def cost_ceiling(t: Text, model: CostModel) -> float:
    """An upper bound ``U`` on every admissible segment cost, plus one.

    Costs grow under extension, so the whole text (or, with a block cap, the
    costliest full-length block) dominates every segment.
    """
    n = t.n
    cap = model.block_cap
    if cap is None or cap >= n:
        return segment_cost(t, 0, n - 1, model).total_bits + 1.0
    ws = WindowSet(t, 1, default_variant(model), model)
    for _ in range(cap):
        ws.app(0)
    best = ws.total(0)
    for _ in range(n - cap):
        ws.rem()
        ws.app(0)
        best = max(best, ws.total(0))
    return best + 1.0


def edge_budget(t: Text, model: CostModel, epsilon: float) -> EdgeBudget:
    if not epsilon > 0:
        raise ValueError("epsilon must be positive")
    base = 1.0 + epsilon
    top = _smallest_power_at_least(base, cost_ceiling(t, model))
    # every edge costs at least a single-symbol segment, so lower buckets stay empty
    cmin = segment_cost(t, 0, 0, model).total_bits
    first = min(top, _smallest_power_at_least(base, cmin))
    return EdgeBudget(epsilon, top, first)


class _Buckets:
    """The window set of one sweep plus the per-bucket thresholds."""

    def __init__(self, t: Text, model: CostModel, budget: EdgeBudget, start: int = 0):
        base = 1.0 + budget.epsilon
        self.bounds = [base ** b for b in range(budget.first_bucket, budget.bucket_count + 1)]
        self.ws = WindowSet(t, len(self.bounds), default_variant(model), model, start=start)
        self.n = t.n
        self.cap = model.block_cap or t.n
        self.apps = 0
        self.clamps = 0

    def advance(self):
        """Extend each window to the longest edge under its threshold."""
        ws = self.ws
        l = ws.l
        upper = min(self.n - 1, l + self.cap - 1)
        for idx in range(len(self.bounds) - 1, -1, -1):
            bound = self.bounds[idx]
            end = ws.end(idx)
            running = ws.total(idx) if end >= l else 0.0
            while end < upper:
                c = ws.peek(idx)
                if c < running:
                    if c < running - TIE_TOL * max(1.0, running):
                        self.clamps += 1
                    c = running
                if c > bound:
                    break
                ws.app(idx)
                self.apps += 1
                end += 1
                running = c
            upper = end

    def edges(self) -> list[tuple[int, float]]:
        """Distinct ``(target, cost)`` edges from the current node."""
        ws = self.ws
        l = ws.l
        out = []
        last = -1
        for idx in range(len(self.bounds)):
            end = ws.end(idx)
            if end >= l and end != last:
                out.append((end + 1, ws.total(idx)))
                last = end
        return out


def approx_partition(t: Text, model: CostModel, epsilon: float) -> Partition:
    """A partition costing at most ``(1+epsilon)`` times the optimum.

    Single left-to-right pass: at node ``l`` every window ``w_t`` ends at the
    largest ``r`` with ``cost(T[l..r]) <= (1+eps)^t``; one edge per distinct
    window end is relaxed, the widest window always reaching the text end
    (or the block cap).
    """
    n = t.n
    if n < 1:
        raise ValueError("empty text")
    budget = edge_budget(t, model, epsilon)
    bk = _Buckets(t, model, budget)
    sp = _ShortestPath(n, prefer_later=False)
    rems = 0
    per_node = 0
    cap = model.block_cap or n
    for l in range(n):
        if l:
            bk.ws.rem()
            rems += 1
        bk.advance()
        edges = bk.edges()
        if n - l <= cap and (not edges or edges[-1][0] != n):
            # only reachable when the cost family is not monotone
            edges.append((n, segment_cost(t, l, n - 1, model).total_bits))
        per_node = max(per_node, len(edges))
        for j, c in edges:
            sp.relax(l, j, c)
    cuts, costs = sp.path(n)
    stats = PartitionStats(
        budget=EdgeBudget(epsilon, budget.bucket_count, budget.first_bucket, sp.relaxed),
        edges_relaxed=sp.relaxed,
        apps=bk.apps,
        rems=rems,
        clamps=bk.clamps,
        max_edges_per_node=per_node,
    )
    return Partition(cuts, costs, math.fsum(costs), stats)


def maximal_edges_at(t: Text, model: CostModel, epsilon: float, l: int) -> list[tuple[int, float]]:
    """The eps-maximal edges leaving node ``l``, from a fresh window sweep."""
    if not 0 <= l < t.n:
        raise ValueError("node outside text")
    budget = edge_budget(t, model, epsilon)
    bk = _Buckets(t, model, budget, start=l)
    bk.advance()
    edges = bk.edges()
    cap = model.block_cap or t.n
    if t.n - l <= cap and (not edges or edges[-1][0] != t.n):
        edges.append((t.n, segment_cost(t, l, t.n - 1, model).total_bits))
    return edges


def verify_partition(t: Text, model: CostModel, p: Partition, rel_tol: float = 1e-6) -> SegmentCost:
    """Recompute ``p`` from scratch; raise if it is malformed or mispriced."""
    if not p.cuts or p.cuts[-1] != t.n or any(b <= a for a, b in zip((0,) + p.cuts, p.cuts)):
        raise ValueError("malformed partition")
    ent = mod = tot = 0.0
    for (a, b), claimed in zip(p.segments(), p.segment_costs):
        sc = segment_cost(t, a, b - 1, model)
        if abs(sc.total_bits - claimed) > rel_tol * max(1.0, sc.total_bits):
            raise ValueError(f"segment [{a},{b}) priced {claimed}, recomputed {sc.total_bits}")
        ent += sc.entropy_bits
        mod += sc.model_bits
        tot += sc.total_bits
    if abs(tot - p.total_bits) > rel_tol * max(1.0, tot):
        raise ValueError("partition total does not match its segments")
    return SegmentCost(ent, mod, tot)
