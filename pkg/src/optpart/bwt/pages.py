"""Page collections and the ``OPGC`` container format.

A collection of pages ``S[0..m-1]`` is laid out as
``S[0] #_0 S[1] #_1 ... S[m-1] #_{m-1}`` where the separators are distinct
and larger than every page symbol.

Container layout (little-endian)::

    b"OPGC" | u64 page count | (u64 length, bytes) * count
"""

from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

MAGIC = b"OPGC"
_U64 = struct.Struct("<Q")


@dataclass(frozen=True)
class PageCollection:
    pages: tuple[tuple[int, ...], ...]
    sigma: int
    byte_map: tuple | None = None

    def __post_init__(self):
        if not self.pages:
            raise ValueError("empty page collection")
        for page in self.pages:
            if any(not 0 <= c < self.sigma for c in page):
                raise ValueError("page symbol outside [0, sigma)")

    @property
    def m(self) -> int:
        return len(self.pages)

    def separator(self, i: int) -> int:
        return self.sigma + i

    def is_separator(self, c: int) -> bool:
        return c >= self.sigma

    @property
    def concatenated(self) -> tuple[int, ...]:
        out: list[int] = []
        for i, page in enumerate(self.pages):
            out.extend(page)
            out.append(self.sigma + i)
        return tuple(out)

    @property
    def page_bounds(self) -> list[tuple[int, int]]:
        """Half-open text interval of each page, separator included."""
        out = []
        pos = 0
        for page in self.pages:
            out.append((pos, pos + len(page) + 1))
            pos += len(page) + 1
        return out

    def group(self, i: int, j: int) -> tuple[int, ...]:
        """Concatenation of pages ``i..j`` (inclusive) with their separators."""
        out: list[int] = []
        for p in range(i, j + 1):
            out.extend(self.pages[p])
            out.append(self.sigma + p)
        return tuple(out)


def from_symbol_pages(pages: Sequence[Sequence[int]], sigma: int | None = None) -> PageCollection:
    pages = tuple(tuple(p) for p in pages)
    if sigma is None:
        sigma = max((max(p) for p in pages if p), default=-1) + 1
    return PageCollection(pages, max(sigma, 1))


def from_byte_pages(pages: Iterable[bytes]) -> PageCollection:
    """Densify bytes in increasing byte order, so the symbol order is the byte order."""
    pages = [bytes(p) for p in pages]
    alphabet = sorted(set().union(*[set(p) for p in pages]))
    ids = {b: i for i, b in enumerate(alphabet)}
    return PageCollection(tuple(tuple(ids[b] for b in p) for p in pages),
                          max(len(alphabet), 1), tuple(alphabet))


def write_opgc(path: str | os.PathLike, pages: Iterable[bytes]):
    pages = list(pages)
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(_U64.pack(len(pages)))
        for p in pages:
            fh.write(_U64.pack(len(p)))
            fh.write(p)


def read_opgc(path: str | os.PathLike) -> list[bytes]:
    data = Path(path).read_bytes()
    if data[:4] != MAGIC:
        raise ValueError("not an OPGC container")
    off = 4
    try:
        (count,) = _U64.unpack_from(data, off)
        off += 8
        pages = []
        for _ in range(count):
            (size,) = _U64.unpack_from(data, off)
            off += 8
            if off + size > len(data):
                raise ValueError("truncated OPGC page")
            pages.append(data[off:off + size])
            off += size
    except struct.error as exc:
        raise ValueError("truncated OPGC container") from exc
    if off != len(data):
        raise ValueError("trailing bytes after OPGC pages")
    return pages


def read_pages(path: str | os.PathLike) -> list[bytes]:
    """Pages from a directory (one file per page, sorted by name) or a container."""
    p = Path(path)
    if p.is_dir():
        return [f.read_bytes() for f in sorted(p.iterdir()) if f.is_file()]
    return read_opgc(p)
