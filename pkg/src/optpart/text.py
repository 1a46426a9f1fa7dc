"""Text representation, alphabet densification and shared numeric tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

NONE = -1


@dataclass(frozen=True)
class Text:
    """Immutable symbol sequence over the dense alphabet ``[0, sigma)``.

    ``byte_map[i]`` is the original token (a byte value or a word) of id ``i``.
    """

    symbols: tuple[int, ...]
    sigma: int
    byte_map: tuple[Hashable, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.symbols and (min(self.symbols) < 0 or max(self.symbols) >= self.sigma):
            raise ValueError("symbol id outside [0, sigma)")
        if self.sigma > max(len(self.symbols), 0) and self.symbols:
            raise ValueError("sigma exceeds text length")
        if self.byte_map is not None and len(set(self.byte_map)) != len(self.byte_map):
            raise ValueError("byte_map is not injective")

    @property
    def n(self) -> int:
        return len(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __getitem__(self, item):
        return self.symbols[item]

    def decode(self, i: int = 0, j: int | None = None) -> list:
        """Original tokens of ``symbols[i:j]`` (requires a byte map)."""
        if self.byte_map is None:
            raise ValueError("text has no byte map")
        return [self.byte_map[s] for s in self.symbols[i:j]]


def densify(tokens: Sequence[Hashable]) -> Text:
    """Assign dense ids to ``tokens`` in first-occurrence order."""
    ids: dict[Hashable, int] = {}
    out = []
    for tok in tokens:
        sid = ids.get(tok)
        if sid is None:
            sid = ids[tok] = len(ids)
        out.append(sid)
    return Text(tuple(out), len(ids), tuple(ids))


def from_symbols(symbols: Sequence[int]) -> Text:
    """Wrap an integer sequence, densifying it if needed."""
    if not symbols:
        raise ValueError("empty text")
    return densify(list(symbols))


def load_text(raw: bytes, mode: str = "byte") -> Text:
    """Build a :class:`Text` from raw bytes.

    ``mode="word"`` splits on whitespace, so each distinct word is a symbol.
    """
    if mode == "byte":
        tokens: Sequence[Hashable] = raw
    elif mode == "word":
        tokens = raw.split()
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if len(tokens) == 0:
        raise ValueError("empty text")
    return densify(tokens)


def remap_qgrams(t: Text, q: int) -> Text:
    """Text of length ``n - q + 1`` whose i-th symbol identifies ``t[i:i+q]``."""
    if q < 1:
        raise ValueError("q must be positive")
    if q > t.n:
        raise ValueError("q-gram longer than text")
    if q == 1:
        return t
    s = t.symbols
    ids: dict[tuple[int, ...], int] = {}
    out = []
    for i in range(t.n - q + 1):
        gram = s[i:i + q]
        gid = ids.get(gram)
        if gid is None:
            gid = ids[gram] = len(ids)
        out.append(gid)
    return Text(tuple(out), len(ids))


def build_last_occurrence(t: Text) -> list[int]:
    """``prev_occ[j]``: the largest ``p < j`` with ``t[p] == t[j]``, else ``NONE``."""
    last = [NONE] * t.sigma
    prev_occ = []
    for j, c in enumerate(t.symbols):
        prev_occ.append(last[c])
        last[c] = j
    return prev_occ


def prefix_ranks(t: Text) -> list[int]:
    """``R[j]``: number of occurrences of ``t[j]`` in ``t[0..j]``."""
    seen = [0] * t.sigma
    out = []
    for c in t.symbols:
        seen[c] += 1
        out.append(seen[c])
    return out


class LogTables:
    """Tables of ``x*log2(x)`` and ``log2(x!)`` for ``0 <= x <= size``.

    Plain lists, since they are indexed one scalar at a time in hot loops.
    """

    def __init__(self, size: int):
        x = np.arange(size + 1, dtype=np.float64)
        with np.errstate(divide="ignore", invalid="ignore"):
            xl = np.where(x > 0, x * np.log2(np.maximum(x, 1.0)), 0.0)
        self.xlogx: list[float] = xl.tolist()
        self.logfact: list[float] = [math.lgamma(v + 1) / math.log(2) for v in range(size + 1)]
        self.size = size


_TABLES = LogTables(1024)


def log_tables(size: int) -> LogTables:
    """Shared tables covering at least ``[0, size]``."""
    global _TABLES
    if size > _TABLES.size:
        _TABLES = LogTables(max(size, 2 * _TABLES.size))
    return _TABLES
