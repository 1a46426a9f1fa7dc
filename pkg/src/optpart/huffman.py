"""Canonical Huffman code lengths and exact coded sizes."""

from __future__ import annotations

import heapq
import math
from collections import Counter
from typing import Mapping, Sequence


def code_lengths(counts: Mapping[int, int]) -> dict[int, int]:
    """Huffman codeword length per symbol with a nonzero count.

    A single-symbol alphabet gets a 1-bit code.
    """
    items = sorted((c, s) for s, c in counts.items() if c > 0)
    if not items:
        return {}
    if len(items) == 1:
        return {items[0][1]: 1}
    # (weight, tiebreak, symbols-in-subtree); ties resolved by insertion order
    heap = [(w, i, [s]) for i, (w, s) in enumerate(items)]
    heapq.heapify(heap)
    depth = {s: 0 for _, s in items}
    tick = len(heap)
    while len(heap) > 1:
        w1, _, a = heapq.heappop(heap)
        w2, _, b = heapq.heappop(heap)
        for s in a:
            depth[s] += 1
        for s in b:
            depth[s] += 1
        heapq.heappush(heap, (w1 + w2, tick, a + b))
        tick += 1
    return depth


def canonical_codes(lengths: Mapping[int, int]) -> dict[int, str]:
    """Canonical codewords (as bit strings) for the given lengths."""
    code = 0
    prev = 0
    out = {}
    for s, ln in sorted(lengths.items(), key=lambda kv: (kv[1], kv[0])):
        code <<= ln - prev
        out[s] = format(code, f"0{ln}b")
        code += 1
        prev = ln
    return out


def table_bits(lengths: Mapping[int, int], alphabet_size: int) -> int:
    """Size of a canonical code table: per used symbol, its id and its length."""
    if not lengths:
        return 0
    id_bits = max(1, math.ceil(math.log2(max(alphabet_size, 2))))
    len_bits = max(1, math.ceil(math.log2(max(lengths.values()) + 1)))
    return len(lengths) * (id_bits + len_bits)


def payload_bits(counts: Mapping[int, int], lengths: Mapping[int, int] | None = None) -> int:
    if lengths is None:
        lengths = code_lengths(counts)
    return sum(c * lengths[s] for s, c in counts.items() if c > 0)


def coded_bits(counts: Mapping[int, int], alphabet_size: int) -> tuple[int, int]:
    """``(payload, table)`` bits of coding a histogram with canonical Huffman."""
    lengths = code_lengths(counts)
    return payload_bits(counts, lengths), table_bits(lengths, alphabet_size)


def encode(symbols: Sequence[int], alphabet_size: int) -> tuple[str, dict[int, str]]:
    """Actually encode ``symbols``; returns the bit string and the code."""
    codes = canonical_codes(code_lengths(Counter(symbols)))
    return "".join(codes[s] for s in symbols), codes
