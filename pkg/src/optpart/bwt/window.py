"""MTF-code histograms of page windows, maintained under page append/remove.

The window ``S[l..r]`` spans text interval ``[a, b]``. Its BWT is the
subsequence of the global BWT made of rows whose character comes from
``[a, b]`` (the *active* rows), so inserting a text position amounts to
switching one BWT row on. Only that row, the next active row of the same
symbol, and the first active row of each other symbol after it can change
their MTF code, and all of them are located with prev/next range queries.
"""

from __future__ import annotations

from ..costs import CostModel, SegmentCost, compose, h0_bits, model_bits
from ..huffman import coded_bits
from .pages import PageCollection
from .suffix import SuffixStructures


class BwtWindowState:
    def __init__(self, pc: PageCollection, ss: SuffixStructures, l_page: int = 0):
        self.pc = pc
        self.ss = ss
        self.bounds = pc.page_bounds
        if not 0 <= l_page <= pc.m:
            raise ValueError("page index out of range")
        self.l_page = l_page
        self.r_page = l_page - 1
        start = self.bounds[l_page][0] if l_page < pc.m else ss.n
        self.a = start
        self.b = start - 1
        self.F = [0] * (pc.sigma + 1)
        self.recoded = 0
        self.max_recoded = 0
        self.max_cells = 0

    def copy(self) -> "BwtWindowState":
        other = object.__new__(BwtWindowState)
        other.__dict__.update(self.__dict__)
        other.F = list(self.F)
        return other

    @property
    def empty(self) -> bool:
        return self.r_page < self.l_page

    @property
    def size(self) -> int:
        return self.b - self.a + 1

    def histogram(self) -> dict[int, int]:
        return {e: f for e, f in enumerate(self.F) if f}


def insertion_delta(ss: SuffixStructures, p: int, a: int, b: int) -> list[tuple[int, int]]:
    """``(code, +-1)`` updates to the histogram when text position ``p`` joins
    the active interval ``[a, b]`` (which must not contain ``p``).
    """
    sigma = ss.sigma
    c = ss.text[p]
    if c >= sigma:
        return [(sigma, 1)]
    h = ss.row[p]
    prev = [ss.prev_active(e, a, b, h) for e in range(sigma)]
    nxt = [ss.next_active(e, a, b, h) for e in range(sigma)]
    hn = nxt[c]

    # MTF list just before row h: seen symbols by recency, then unseen ascending
    seen = sorted((e for e in range(sigma) if prev[e] is not None), key=lambda e: -prev[e])
    lam = seen + [e for e in range(sigma) if prev[e] is None]
    where = {e: i for i, e in enumerate(lam)}
    out = [(where[c], 1)]

    # first active row of each symbol after h, up to and including c's next one
    events = sorted((nxt[e], e) for e in range(sigma)
                    if nxt[e] is not None and (hn is None or nxt[e] <= hn))
    accessed: set[int] = set()
    c_at = where[c]
    for _, e in events:
        pos = where[e]
        unaccessed_before = sum(1 for d in lam[:pos] if d not in accessed)
        old = len(accessed) + unaccessed_before
        if e == c:
            new = len(accessed)
        else:
            new = old + 1 - (c_at < pos)
        if new != old:
            out.append((old, -1))
            out.append((new, 1))
        accessed.add(e)
    return out


def _apply(ws: BwtWindowState, delta, sign: int):
    net: dict[int, int] = {}
    for code, d in delta:
        ws.F[code] += sign * d
        net[code] = net.get(code, 0) + d
    # occurrences other than the inserted one whose code moved
    moved = (len(delta) - 1) // 2
    ws.recoded += moved
    ws.max_recoded = max(ws.max_recoded, moved)
    ws.max_cells = max(ws.max_cells, sum(1 for v in net.values() if v))


def bwt_app(ws: BwtWindowState):
    """Append page ``r_page + 1`` to the window."""
    nxt = ws.r_page + 1
    if nxt >= ws.pc.m:
        raise ValueError("page index out of range")
    lo, hi = ws.bounds[nxt]
    for p in range(lo, hi):
        _apply(ws, insertion_delta(ws.ss, p, ws.a, ws.b), 1)
        ws.b = p
    ws.r_page = nxt


def bwt_rem(ws: BwtWindowState):
    """Drop the leftmost page of the window."""
    if ws.empty:
        raise ValueError("page index out of range")
    lo, hi = ws.bounds[ws.l_page]
    for p in range(lo, hi):
        _apply(ws, insertion_delta(ws.ss, p, p + 1, ws.b), -1)
        ws.a = p + 1
    ws.l_page += 1


def bwt_unapp(ws: BwtWindowState):
    """Drop the rightmost page of the window."""
    if ws.empty:
        raise ValueError("page index out of range")
    lo, hi = ws.bounds[ws.r_page]
    for p in range(hi - 1, lo - 1, -1):
        _apply(ws, insertion_delta(ws.ss, p, ws.a, p - 1), -1)
        ws.b = p - 1
    ws.r_page -= 1


def histogram_cost(hist, coder: str, model: CostModel, alphabet: int) -> SegmentCost:
    """Cost of coding an MTF-code histogram (``alphabet`` = number of codes)."""
    counts = {e: f for e, f in (hist.items() if isinstance(hist, dict) else enumerate(hist)) if f}
    n = sum(counts.values())
    if n == 0:
        raise ValueError("empty window")
    if coder == "entropy":
        return compose(h0_bits(counts, n), model_bits(n, len(counts), model), model)
    if coder == "huffman":
        payload, table = coded_bits(counts, alphabet)
        return SegmentCost(float(payload), float(table), payload + table + model.header_bits)
    raise ValueError(f"unknown coder {coder!r}")


def bwt_len(ws: BwtWindowState, coder: str = "entropy", model: CostModel | None = None) -> SegmentCost:
    return histogram_cost(ws.F, coder, model or CostModel(), ws.pc.sigma + 1)
