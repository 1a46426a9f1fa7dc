"""A text on which context-restricted (booster) partitions of the BWT lose.

The text concatenates ``sigma/alpha`` order-2 De Bruijn sequences, each over
its own block of ``alpha`` symbols. On its BWT every partition a booster can
produce costs about ``sigma*alpha*log(sigma)`` bits, whereas cutting the BWT
into equal blocks of ``alpha**3`` symbols costs about
``3*sigma*alpha*log(alpha) + (sigma/alpha**2)*log(sigma)``.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from .bwt.suffix import suffix_array
from .costs import h0_bits


@dataclass(frozen=True)
class GapInstance:
    sigma: int
    alpha: int
    text: tuple[int, ...]

    @property
    def blocks(self) -> int:
        return self.sigma // self.alpha

    def block(self, i: int) -> tuple[int, ...]:
        a2 = self.alpha * self.alpha
        return self.text[i * a2:(i + 1) * a2]


def de_bruijn_pairs(symbols) -> list:
    """Cyclic sequence holding every ordered pair over ``symbols`` exactly once.

    Hierholzer's algorithm on the complete digraph with self-loops; the
    returned vertex sequence has length ``len(symbols)**2``.
    """
    symbols = list(symbols)
    if not symbols:
        return []
    unused = {v: list(reversed(symbols)) for v in symbols}
    stack = [symbols[0]]
    cycle = []
    while stack:
        v = stack[-1]
        if unused[v]:
            stack.append(unused[v].pop())
        else:
            cycle.append(stack.pop())
    cycle.reverse()
    return cycle[:-1]


def generate_gap_instance(sigma: int, alpha: int) -> GapInstance:
    if alpha < 2:
        raise ValueError("alpha must be at least 2")
    if sigma < alpha or sigma % alpha:
        raise ValueError("alpha must divide sigma")
    text: list[int] = []
    for i in range(sigma // alpha):
        text.extend(de_bruijn_pairs(range(i * alpha, (i + 1) * alpha)))
    return GapInstance(sigma, alpha, tuple(text))


def choose_alpha(sigma: int) -> int:
    """``max(2, round(sqrt(log sigma) / log log sigma))``, then raised until ``alpha**2 | sigma``."""
    if sigma < 4:
        raise ValueError("sigma too small for a gap instance")
    lg = math.log2(sigma)
    alpha = 2 if lg <= 1 else max(2, round(math.sqrt(lg) / math.log2(lg)))
    while sigma % (alpha * alpha):
        alpha += 1
        if alpha * alpha > sigma:
            raise ValueError(f"no alpha with alpha^2 dividing {sigma}")
    return alpha


def cyclic_bwt(text) -> tuple[list[int], list[int]]:
    """Last column of the sorted rotation matrix, and the first symbol of each row."""
    n = len(text)
    doubled = list(text) * 2
    order = [i for i in suffix_array(doubled) if i < n]
    last = [text[i - 1] for i in order]
    first = [text[i] for i in order]
    return last, first


def _segment_bits(seg, sigma: int) -> float:
    # model cost floored at log(sigma) bits per segment
    return h0_bits(Counter(seg), len(seg)) + math.log2(sigma)


@dataclass(frozen=True)
class BoosterCosts:
    whole: float
    per_context: float
    per_symbol: float

    @property
    def best(self) -> float:
        return min(self.whole, self.per_context, self.per_symbol)


def booster_partition_costs(g: GapInstance) -> BoosterCosts:
    last, first = cyclic_bwt(g.text)
    groups: dict[int, list[int]] = {}
    for c, f in zip(last, first):
        groups.setdefault(f, []).append(c)
    return BoosterCosts(
        whole=_segment_bits(last, g.sigma),
        per_context=math.fsum(_segment_bits(seg, g.sigma) for seg in groups.values()),
        per_symbol=len(last) * math.log2(g.sigma),
    )


def alternative_partition_cost(g: GapInstance) -> float:
    a3 = g.alpha ** 3
    if g.sigma % (g.alpha * g.alpha):
        raise ValueError("alpha^2 must divide sigma")
    last, _ = cyclic_bwt(g.text)
    total = []
    for start in range(0, len(last), a3):
        block = last[start:start + a3]
        assert len(set(block)) < a3, "block alphabet not smaller than alpha^3"
        total.append(_segment_bits(block, g.sigma))
    return math.fsum(total)


def gap_ratio(sigma: int) -> float:
    g = generate_gap_instance(sigma, choose_alpha(sigma))
    return booster_partition_costs(g).best / alternative_partition_cost(g)


def max_lcp_at_most_one(text) -> bool:
    """No 2-gram repeats (cyclically), i.e. distinct rotations share at most one symbol."""
    n = len(text)
    pairs = [(text[i], text[(i + 1) % n]) for i in range(n)]
    return len(set(pairs)) == n
