"""From-scratch entropy and compressed-size estimates of text segments.

Everything here recomputes a segment's cost directly from its definition.
The incremental window structures are checked against these functions.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping, Union

from .text import Text, log_tables

FAMILIES = ("h0", "h0a", "hk", "hka")
ModelCost = Union[str, Callable[[int, int], float]]


@dataclass(frozen=True)
class CostModel:
    """Which estimator prices a segment, and the constants around it.

    ``model_cost`` is ``"huffman"``, ``"arithmetic"`` or a callable
    ``f(n, sigma_seg) -> bits``. It is ignored by the adaptive families.
    """

    family: str = "h0"
    k: int = 0
    lam: float = 1.0
    header_bits: float = 32.0
    model_cost: ModelCost = "huffman"
    block_cap: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.lam <= 0:
            raise ValueError("lambda must be positive")
        if self.header_bits < 0:
            raise ValueError("header_bits must be nonnegative")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        if self.family in ("h0", "h0a") and self.k != 0:
            raise ValueError("zero-order families require k = 0")
        if self.block_cap is not None and self.block_cap < 1:
            raise ValueError("block_cap must be positive")
        if not callable(self.model_cost) and self.model_cost not in ("huffman", "arithmetic"):
            raise ValueError(f"unknown model cost {self.model_cost!r}")

    @property
    def adaptive(self) -> bool:
        return self.family in ("h0a", "hka")

    @property
    def korder(self) -> bool:
        return self.family in ("hk", "hka")

    @property
    def label(self) -> str:
        name = self.family.upper()
        if self.korder:
            name += f"(k={self.k})"
        if not self.adaptive:
            mc = self.model_cost if isinstance(self.model_cost, str) else "custom"
            name += f"/{mc}"
        return name


@dataclass(frozen=True)
class SegmentCost:
    entropy_bits: float
    model_bits: float
    total_bits: float


def _check_counts(counts: Iterable[int], n: int) -> list[int]:
    vals = [c for c in counts if c]
    if sum(vals) != n or any(c < 0 for c in vals):
        raise ValueError("inconsistent counts")
    return vals


def _values(counts: Mapping[int, int] | Iterable[int]) -> Iterable[int]:
    return counts.values() if isinstance(counts, Mapping) else counts


def h0_bits(counts, n: int) -> float:
    """``n * H0`` for a segment with the given symbol counts."""
    vals = _check_counts(_values(counts), n)
    if n <= 1:
        return 0.0
    tab = log_tables(n).xlogx
    return max(0.0, tab[n] - sum(tab[c] for c in vals))


def h0_adaptive_bits(counts, n: int) -> float:
    """``log2(n!) - sum log2(n_c!)``, the adaptive zero-order entropy times n."""
    vals = _check_counts(_values(counts), n)
    if n <= 1:
        return 0.0
    tab = log_tables(n).logfact
    return max(0.0, tab[n] - sum(tab[c] for c in vals))


def hk_bits(t: Text | tuple, i: int, j: int, k: int, adaptive: bool = False) -> float:
    """``|s| * Hk(s)`` for ``s = t[i..j]`` (inclusive), straight from the definition.

    Successor strings are collected per length-k context, counting only
    contexts whose successor lies inside the segment.
    """
    symbols = t.symbols if isinstance(t, Text) else t
    if j - i + 1 <= k:
        raise ValueError("segment too short for order k")
    return _hk_direct(symbols, i, j, k, adaptive)


def _hk_direct(symbols, i: int, j: int, k: int, adaptive: bool) -> float:
    entropy = h0_adaptive_bits if adaptive else h0_bits
    if k == 0:
        seg = symbols[i:j + 1]
        return entropy(Counter(seg), len(seg))
    succ: dict[tuple, Counter] = {}
    for p in range(i, j - k + 1):
        ctx = tuple(symbols[p:p + k])
        succ.setdefault(ctx, Counter())[symbols[p + k]] += 1
    return sum(entropy(cnt, sum(cnt.values())) for cnt in succ.values())


def model_bits(n: int, sigma_seg: int, model: CostModel) -> float:
    """Bits spent on the coder's model for a segment of length ``n``.

    ``sigma_seg`` is the number of distinct symbols in the segment, or of
    distinct (k+1)-grams for the k-order families.
    """
    if model.adaptive:
        return 0.0
    mc = model.model_cost
    if callable(mc):
        return float(mc(n, sigma_seg))
    if mc == "huffman":
        return log_tables(sigma_seg).xlogx[sigma_seg] + n
    # arithmetic
    if n <= 0:
        return 0.0
    ln = math.log2(n)
    return sigma_seg * ln + ln / n


def compose(entropy: float, model: float, cm: CostModel) -> SegmentCost:
    return SegmentCost(entropy, model, cm.lam * entropy + model + cm.header_bits)


def segment_cost(t: Text, i: int, j: int, model: CostModel) -> SegmentCost:
    """Estimated compressed size of ``t[i..j]`` (inclusive bounds)."""
    if not 0 <= i <= j < t.n:
        raise ValueError("segment out of range or empty")
    length = j - i + 1
    if model.block_cap is not None and length > model.block_cap:
        raise ValueError("segment exceeds block cap")
    s = t.symbols
    if model.korder:
        k = model.k
        if length <= k:
            entropy, distinct = 0.0, 0
        else:
            entropy = _hk_direct(s, i, j, k, model.adaptive)
            distinct = len({tuple(s[p:p + k + 1]) for p in range(i, j - k + 1)})
    else:
        counts = Counter(s[i:j + 1])
        entropy = (h0_adaptive_bits if model.adaptive else h0_bits)(counts, length)
        distinct = len(counts)
    return compose(entropy, model_bits(length, distinct, model), model)


def whole_cost(t: Text, model: CostModel) -> float:
    return segment_cost(t, 0, t.n - 1, model).total_bits
