"""Sliding windows sharing a left end, with O(1) incremental cost updates.

A :class:`WindowSet` keeps windows ``T[l..r_0], ..., T[l..r_{m-1}]`` with
``r_0 <= ... <= r_{m-1}`` and supports

* ``rem()`` -- advance the shared left end ``l``;
* ``app(i)`` -- advance the right end of window ``i``;
* ``len(i)`` -- estimated compressed size of window ``i``.

Zero-order costs use the identity ``n*H0 = n log n - sum_c n_c log n_c``
(or its log-factorial twin for adaptive coders), so each window only needs
the accumulator ``E_i = sum_c tab[n_c]``. The k-order estimator runs two
zero-order estimators over the (k+1)-gram and k-gram texts in lockstep and
takes the difference.
"""

from __future__ import annotations

from functools import lru_cache

from .costs import CostModel, SegmentCost, compose, model_bits
from .text import NONE, Text, build_last_occurrence, log_tables, prefix_ranks, remap_qgrams

VARIANTS = ("simple", "compact", "adaptive", "korder")


class _Counters:
    """Per-window accumulators over an integer sequence (zero-order)."""

    def __init__(self, seq, sigma: int, m: int, adaptive: bool, start: int):
        self.seq = seq
        self.sigma = sigma
        self.m = m
        self.l = start
        self.r = [start - 1] * m
        self.E = [0.0] * m
        self.distinct = [0] * m
        tabs = log_tables(len(seq) + 1)
        self.tab = tabs.logfact if adaptive else tabs.xlogx
        self.size_tab = self.tab
        self.updates = 0

    def entropy(self, i: int) -> float:
        size = self.r[i] - self.l + 1
        if size <= 1:
            return 0.0
        v = self.size_tab[size] - self.E[i]
        return v if v > 0.0 else 0.0

    def _drag_empty(self):
        lo = self.l - 1
        r = self.r
        for i in range(self.m):
            if r[i] < lo:
                r[i] = lo


class SimpleCounters(_Counters):
    """One count array per window: ``O(sigma)`` space each."""

    def __init__(self, seq, sigma, m, adaptive, start=0):
        super().__init__(seq, sigma, m, adaptive, start)
        self.A = [[0] * sigma for _ in range(m)]

    def count(self, i: int, c: int) -> int:
        return self.A[i][c]

    def peek(self, i: int) -> tuple[float, int]:
        pos = self.r[i] + 1
        a = self.A[i][self.seq[pos]] + 1
        size = pos - self.l + 1
        tab = self.tab
        e = self.size_tab[size] - (self.E[i] + tab[a] - tab[a - 1])
        return (e if e > 0.0 and size > 1 else 0.0), self.distinct[i] + (a == 1)

    def app(self, i: int):
        pos = self.r[i] + 1
        c = self.seq[pos]
        row = self.A[i]
        a = row[c] + 1
        row[c] = a
        self.E[i] += self.tab[a] - self.tab[a - 1]
        if a == 1:
            self.distinct[i] += 1
        self.r[i] = pos
        self.updates += 1

    def rem(self):
        l = self.l
        if l < len(self.seq):
            c = self.seq[l]
            tab = self.tab
            for i in range(self.m):
                if self.r[i] < l:
                    continue
                row = self.A[i]
                a = row[c]
                row[c] = a - 1
                self.E[i] -= tab[a] - tab[a - 1]
                if a == 1:
                    self.distinct[i] -= 1
                self.updates += 1
        self.l = l + 1
        self._drag_empty()


class _Prepared:
    """Text-wide arrays shared by every compact estimator over one sequence."""

    def __init__(self, seq, sigma):
        t = Text(tuple(seq), sigma) if not isinstance(seq, Text) else seq
        self.R = prefix_ranks(t)
        self.prev_occ = build_last_occurrence(t)


@lru_cache(maxsize=64)
def _prepared(seq: tuple, sigma: int) -> _Prepared:
    return _Prepared(seq, sigma)


class CompactCounters(_Counters):
    """``O(n)``-space counters: counts are recovered from prefix ranks.

    ``B[c]`` counts ``c`` in ``seq[0..l-1]`` and ``R[j]`` counts ``seq[j]`` in
    ``seq[0..j]``, so a window whose last ``c`` sits at ``t`` holds
    ``R[t] - B[c]`` copies. Last occurrences are linked per symbol in
    position order (lists ``L_c``), one node per position.
    """

    def __init__(self, seq, sigma, m, adaptive, start=0):
        super().__init__(seq, sigma, m, adaptive, start)
        prep = _prepared(tuple(seq), sigma)
        self.R = prep.R
        self.prev_occ = prep.prev_occ
        self.B = [0] * sigma
        for c in seq[:start]:
            self.B[c] += 1
        self.head = [NONE] * sigma
        self.nxt = {}
        self.prv = {}

    # -- linked lists -------------------------------------------------
    def _insert_after(self, c: int, p: int, pos: int):
        if p == NONE:
            h = self.head[c]
            self.nxt[pos] = h
            self.prv[pos] = NONE
            if h != NONE:
                self.prv[h] = pos
            self.head[c] = pos
        else:
            q = self.nxt[p]
            self.nxt[pos] = q
            self.prv[pos] = p
            self.nxt[p] = pos
            if q != NONE:
                self.prv[q] = pos

    def _unlink(self, c: int, pos: int):
        p = self.prv.pop(pos)
        q = self.nxt.pop(pos)
        if p == NONE:
            self.head[c] = q
        else:
            self.nxt[p] = q
        if q != NONE:
            self.prv[q] = p

    def list_of(self, c: int) -> list[int]:
        out = []
        p = self.head[c]
        while p != NONE:
            out.append(p)
            p = self.nxt[p]
        return out

    def count(self, i: int, c: int) -> int:
        r = self.r[i]
        best = 0
        p = self.head[c]
        while p != NONE and p <= r:
            best = self.R[p] - self.B[c]
            p = self.nxt[p]
        return best

    # -- operations ---------------------------------------------------
    def peek(self, i: int) -> tuple[float, int]:
        pos = self.r[i] + 1
        c = self.seq[pos]
        a = self.R[pos] - self.B[c]
        size = pos - self.l + 1
        tab = self.tab
        e = self.size_tab[size] - (self.E[i] + tab[a] - tab[a - 1])
        return (e if e > 0.0 and size > 1 else 0.0), self.distinct[i] + (a == 1)

    def app(self, i: int):
        r = self.r
        pos = r[i] + 1
        if i + 1 < self.m and pos > r[i + 1]:
            raise ValueError("windows must stay ordered: advance larger windows first")
        c = self.seq[pos]
        a = self.R[pos] - self.B[c]
        self.E[i] += self.tab[a] - self.tab[a - 1]
        if a == 1:
            self.distinct[i] += 1
        p = self.prev_occ[pos]
        inside = p >= self.l
        if pos not in self.nxt:
            self._insert_after(c, p if inside else NONE, pos)
        # p stays listed only while a smaller window still ends at or after it
        if inside and not (i > 0 and r[i - 1] >= p):
            self._unlink(c, p)
        r[i] = pos
        self.updates += 1

    def rem(self):
        l = self.l
        if l < len(self.seq):
            c = self.seq[l]
            b = self.B[c]
            tab = self.tab
            R = self.R
            nxt = self.nxt
            node = self.head[c]
            last = NONE
            for i in range(self.m):
                ri = self.r[i]
                if ri < l:
                    continue
                while node != NONE and node <= ri:
                    last = node
                    node = nxt[node]
                a = R[last] - b
                self.E[i] -= tab[a] - tab[a - 1]
                if a == 1:
                    self.distinct[i] -= 1
                self.updates += 1
            if self.head[c] == l:
                self._unlink(c, l)
            self.B[c] = b + 1
        self.l = l + 1
        self._drag_empty()


@lru_cache(maxsize=64)
def _gram_text(t: Text, q: int) -> Text:
    if q == 0:
        return Text((0,) * (t.n + 1), 1)
    if q > t.n:
        return Text((), 0)
    return remap_qgrams(t, q)


class WindowSet:
    """``m`` windows over ``t`` sharing the left end ``l``.

    ``variant`` selects the machinery: ``simple`` (per-window count arrays),
    ``compact`` / ``adaptive`` (linear-space counters for the H0 / H0A
    families) or ``korder`` (two synchronized compact estimators over the
    (k+1)-gram and k-gram texts). ``korder_counters`` picks the estimator used
    inside the k-order variant.
    """

    def __init__(self, t: Text, m: int, variant: str | None, model: CostModel,
                 start: int = 0, korder_counters: str = "compact"):
        if m < 1:
            raise ValueError("need at least one window")
        if variant is None:
            variant = default_variant(model)
        if variant not in VARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if (variant == "korder") != model.korder:
            raise ValueError(f"variant {variant!r} does not match family {model.family!r}")
        if variant == "adaptive" and not model.adaptive:
            raise ValueError("adaptive variant needs an adaptive family")
        if not 0 <= start <= t.n:
            raise ValueError("start outside text")
        self.t = t
        self.m = m
        self.variant = variant
        self.model = model
        self.k = model.k if model.korder else 0
        self._l = start
        self._r = [start - 1] * m
        self.n = t.n
        if variant == "korder":
            cls = CompactCounters if korder_counters == "compact" else SimpleCounters
            hi = _gram_text(t, self.k + 1)
            lo = _gram_text(t, self.k)
            self.subs = (
                cls(hi.symbols, hi.sigma, m, model.adaptive, start),
                cls(lo.symbols, lo.sigma, m, model.adaptive, start),
            )
        else:
            cls = SimpleCounters if variant == "simple" else CompactCounters
            self.subs = (cls(t.symbols, t.sigma, m, model.adaptive, start),)

    # -- state ---------------------------------------------------------
    @property
    def l(self) -> int:
        return self._l

    @property
    def ends(self) -> list[int]:
        return list(self._r)

    def end(self, i: int) -> int:
        return self._r[i]

    def size(self, i: int) -> int:
        return self._r[i] - self._l + 1

    @property
    def updates(self) -> int:
        return sum(s.updates for s in self.subs)

    # -- operations ------------------------------------------------------
    def app(self, i: int):
        pos = self._r[i] + 1
        if pos >= self.n:
            raise ValueError("window at text end")
        if i + 1 < self.m and pos > self._r[i + 1]:
            raise ValueError("windows must stay ordered: advance larger windows first")
        if self.k:
            if pos - self.k >= self._l:
                self.subs[0].app(i)
                self.subs[1].app(i)
        else:
            for s in self.subs:
                s.app(i)
        self._r[i] = pos

    def rem(self):
        l = self._l
        if all(r < l for r in self._r):
            raise ValueError("nothing to remove")
        for s in self.subs:
            s.rem()
        self._l = l + 1
        lo = l
        r = self._r
        for i in range(self.m):
            if r[i] < lo:
                r[i] = lo

    def _parts(self, i: int) -> tuple[float, int]:
        if self.k:
            hi, lo = self.subs
            if hi.r[i] < hi.l:
                return 0.0, 0
            e = hi.entropy(i) - lo.entropy(i)
            return (e if e > 0.0 else 0.0), hi.distinct[i]
        s = self.subs[0]
        return s.entropy(i), s.distinct[i]

    def len(self, i: int) -> SegmentCost:
        size = self._r[i] - self._l + 1
        if size <= 0:
            raise ValueError("empty window")
        e, d = self._parts(i)
        return compose(e, model_bits(size, d, self.model), self.model)

    def total(self, i: int) -> float:
        """``len(i).total_bits`` without building the record."""
        size = self._r[i] - self._l + 1
        if size <= 0:
            raise ValueError("empty window")
        e, d = self._parts(i)
        cm = self.model
        return cm.lam * e + model_bits(size, d, cm) + cm.header_bits

    def peek(self, i: int) -> float:
        """Total bits window ``i`` would cost after one more ``app(i)``."""
        pos = self._r[i] + 1
        if pos >= self.n:
            raise ValueError("window at text end")
        size = pos - self._l + 1
        if self.k:
            hi, lo = self.subs
            if pos - self.k >= self._l:
                eh, d = hi.peek(i)
                el, _ = lo.peek(i)
                e = eh - el
                if e < 0.0:
                    e = 0.0
            else:
                e, d = 0.0, 0
        else:
            e, d = self.subs[0].peek(i)
        cm = self.model
        return cm.lam * e + model_bits(size, d, cm) + cm.header_bits


def default_variant(model: CostModel) -> str:
    if model.korder:
        return "korder"
    return "adaptive" if model.adaptive else "compact"


def new_window_set(t: Text, m: int, variant: str | None, model: CostModel) -> WindowSet:
    return WindowSet(t, m, variant, model)
