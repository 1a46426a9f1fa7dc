"""Partition reports: JSON and TSV serialization, and real Huffman validation."""

from __future__ import annotations

import hashlib
import io
import json
from collections import Counter
from dataclasses import asdict, dataclass, field, fields, replace

from .huffman import coded_bits
from .partition import Partition
from .text import Text

SCHEMA = 1


def digest(raw: bytes) -> str:
    return "sha256:" + hashlib.sha256(raw).hexdigest()


def huffman_validate(t: Text, p: Partition) -> list[int]:
    """Actual canonical-Huffman bits (payload plus code table) of every segment."""
    out = []
    for a, b in p.segments():
        payload, table = coded_bits(Counter(t.symbols[a:b]), t.sigma)
        out.append(payload + table)
    return out


@dataclass
class PartitionReport:
    digest: str
    n: int
    sigma: int
    estimator: str
    epsilon: float | None
    cuts: list[int]
    segment_bits: list[float]
    total_bits: float
    huffman_bits: list[int] | None = None
    wall_time: float = 0.0
    edges_relaxed: int | None = None
    command: str = "partition"
    source: str = ""
    schema: int = SCHEMA
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        self.cuts = [int(c) for c in self.cuts]
        if not self.cuts or any(b <= a for a, b in zip([0] + self.cuts, self.cuts)) or self.cuts[-1] != self.n:
            raise ValueError("cuts must be strictly increasing and end at n")

    def stable(self) -> "PartitionReport":
        """Copy with the wall time zeroed, for determinism comparisons."""
        return replace(self, wall_time=0.0)

    # -- json --
    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PartitionReport":
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})

    @classmethod
    def from_json(cls, text: str) -> "PartitionReport":
        return cls.from_dict(json.loads(text))

    # -- tsv --
    _SCALARS = ("schema", "command", "source", "digest", "n", "sigma", "estimator",
                "epsilon", "total_bits", "wall_time", "edges_relaxed")

    def to_tsv(self) -> str:
        """``#key<TAB>value`` header lines, then one row per segment."""
        buf = io.StringIO()
        for key in self._SCALARS:
            buf.write(f"#{key}\t{json.dumps(getattr(self, key))}\n")
        if self.extra:
            buf.write(f"#extra\t{json.dumps(self.extra, sort_keys=True)}\n")
        buf.write("start\tend\tbits\thuffman_bits\n")
        hb = self.huffman_bits or [None] * len(self.cuts)
        for (a, b), bits, h in zip(zip([0] + self.cuts[:-1], self.cuts), self.segment_bits, hb):
            buf.write(f"{a}\t{b}\t{bits!r}\t{'' if h is None else h}\n")
        return buf.getvalue()

    @classmethod
    def from_tsv(cls, text: str) -> "PartitionReport":
        d: dict = {}
        cuts, bits, hbits = [], [], []
        rows = text.splitlines()
        for line in rows:
            if line.startswith("#"):
                key, value = line[1:].split("\t", 1)
                d[key] = json.loads(value)
            elif line.startswith("start\t") or not line:
                continue
            else:
                _, b, x, h = line.split("\t")
                cuts.append(int(b))
                bits.append(float(x))
                hbits.append(int(h) if h else None)
        d["cuts"] = cuts
        d["segment_bits"] = bits
        d["huffman_bits"] = None if all(h is None for h in hbits) else hbits
        return cls.from_dict(d)


def render(report: PartitionReport, fmt: str) -> str:
    if fmt == "json":
        return report.to_json()
    if fmt == "tsv":
        return report.to_tsv()
    raise ValueError(f"unknown format {fmt!r}")
