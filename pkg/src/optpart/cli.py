"""``optpart`` command line.

Exit codes: 0 success, 2 unreadable or oversized input, 64 bad usage.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .costs import CostModel
from .partition import approx_partition, exact_dp_partition, verify_partition
from .report import PartitionReport, digest, huffman_validate, render
from .text import load_text

EXIT_INPUT = 2
EXIT_USAGE = 64
DEFAULT_MAX_BYTES = 64 * 1024 * 1024

log = logging.getLogger("optpart")


class InputError(Exception):
    pass


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    inputs: list[str] = field(default_factory=list)
    family: str = "h0"
    k: int = 0
    epsilon: float = 0.1
    model_cost: str = "huffman"
    lam: float = 1.0
    header_bits: float = 32.0
    block_cap: int | None = None
    mode: str = "byte"
    fmt: str = "tsv"
    huffman: bool = False
    max_bytes: int = DEFAULT_MAX_BYTES
    seed: int = 0

    def __post_init__(self):
        if self.command in ("partition", "partition-pages", "analyze") and not self.epsilon > 0:
            raise UsageError("epsilon must be positive")

    def cost_model(self) -> CostModel:
        try:
            return CostModel(self.family, self.k, self.lam, self.header_bits,
                             self.model_cost, self.block_cap)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc


def read_input(path: str, max_bytes: int) -> bytes:
    try:
        size = os.path.getsize(path)
        if size > max_bytes:
            raise InputError(f"{path}: {size} bytes exceeds the {max_bytes}-byte cap")
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc


def run_text(cfg: RunConfig, path: str) -> PartitionReport:
    """One text file through the approximate or exact partitioner."""
    raw = read_input(path, cfg.max_bytes)
    try:
        t = load_text(raw, cfg.mode)
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    model = cfg.cost_model()
    start = time.perf_counter()
    if cfg.command == "exact":
        p = exact_dp_partition(t, model)
        eps = None
    else:
        p = approx_partition(t, model, cfg.epsilon)
        eps = cfg.epsilon
    elapsed = time.perf_counter() - start
    verify_partition(t, model, p)
    log.info("%s: n=%d sigma=%d segments=%d bits=%.1f in %.3fs",
             path, t.n, t.sigma, len(p.cuts), p.total_bits, elapsed)
    extra = {}
    if p.stats is not None:
        extra = {"clamps": p.stats.clamps, "bucket_count": p.stats.budget.bucket_count,
                 "max_edges_per_node": p.stats.max_edges_per_node}
    return PartitionReport(
        digest=digest(raw), n=t.n, sigma=t.sigma, estimator=model.label, epsilon=eps,
        cuts=list(p.cuts), segment_bits=list(p.segment_costs), total_bits=p.total_bits,
        huffman_bits=huffman_validate(t, p) if cfg.huffman else None,
        wall_time=elapsed, edges_relaxed=p.stats.edges_relaxed if p.stats else None,
        command=cfg.command, source=os.path.basename(path), extra=extra,
    )


def run_pages(cfg: RunConfig, path: str, coder: str, exact: bool) -> PartitionReport:
    from .bwt import exact_page_partition, from_byte_pages, page_aligned_partition, read_pages

    try:
        pages = read_pages(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc
    total = sum(len(p) for p in pages)
    if total > cfg.max_bytes:
        raise InputError(f"{path}: {total} bytes exceeds the {cfg.max_bytes}-byte cap")
    if not pages:
        raise InputError(f"{path}: no pages")
    h = hashlib.sha256()
    for p in pages:
        h.update(len(p).to_bytes(8, "little"))
        h.update(p)
    pc = from_byte_pages(pages)
    model = cfg.cost_model()
    start = time.perf_counter()
    if exact:
        p = exact_page_partition(pc, coder, model)
    else:
        p = page_aligned_partition(pc, cfg.epsilon, coder, model)
    elapsed = time.perf_counter() - start
    return PartitionReport(
        digest="sha256:" + h.hexdigest(), n=pc.m, sigma=pc.sigma, estimator=f"BWT-MTF/{coder}",
        epsilon=None if exact else cfg.epsilon, cuts=list(p.cuts),
        segment_bits=list(p.segment_costs), total_bits=p.total_bits, wall_time=elapsed,
        edges_relaxed=p.stats.edges_relaxed if p.stats else None,
        command="partition-pages", source=os.path.basename(os.path.normpath(path)),
        extra={"page_bytes": [len(x) for x in pages]},
    )


def gap_rows(sigmas) -> list[dict]:
    from .adversarial import (alternative_partition_cost, booster_partition_costs,
                              choose_alpha, generate_gap_instance)

    rows = []
    for s in sigmas:
        try:
            g = generate_gap_instance(s, choose_alpha(s))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        b = booster_partition_costs(g)
        alt = alternative_partition_cost(g)
        rows.append({"sigma": s, "alpha": g.alpha, "n": len(g.text), "whole": b.whole,
                     "per_context": b.per_context, "per_symbol": b.per_symbol,
                     "alternative": alt, "ratio": b.best / alt})
    return rows


def analyze_rows(cfg: RunConfig, raw: bytes, epsilons, exact_limit: int):
    t = load_text(raw, cfg.mode)
    model = cfg.cost_model()
    exact = exact_dp_partition(t, model).total_bits if t.n <= exact_limit else None
    rows = []
    for eps in epsilons:
        start = time.perf_counter()
        p = approx_partition(t, model, eps)
        rows.append({"epsilon": eps, "segments": len(p.cuts), "total_bits": p.total_bits,
                     "ratio": None if exact is None else p.total_bits / exact,
                     "edges_relaxed": p.stats.edges_relaxed, "clamps": p.stats.clamps,
                     "wall_time": time.perf_counter() - start})
    return t, exact, rows


def rows_to_tsv(rows: list[dict], meta: dict) -> str:
    lines = [f"#{k}\t{json.dumps(v)}" for k, v in meta.items()]
    keys = list(rows[0]) if rows else []
    lines.append("\t".join(keys))
    for r in rows:
        lines.append("\t".join("" if r[k] is None else repr(r[k]) if isinstance(r[k], float) else str(r[k])
                               for k in keys))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="optpart", description="Near-optimal text partitioning for compression.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, epsilon=True):
        p.add_argument("--estimator", choices=["h0", "h0a", "hk", "hka"], default="h0")
        p.add_argument("-k", type=int, default=None, help="context order for hk/hka (default 1)")
        if epsilon:
            p.add_argument("--epsilon", type=float, default=0.1)
        p.add_argument("--model", choices=["huffman", "arithmetic"], default="huffman")
        p.add_argument("--lambda", dest="lam", type=float, default=1.0)
        p.add_argument("--header-bits", type=float, default=32.0)
        p.add_argument("--block-cap", type=int, default=None)
        p.add_argument("--mode", choices=["byte", "word"], default="byte")
        out = p.add_mutually_exclusive_group()
        out.add_argument("--format", choices=["json", "tsv"], default="tsv")
        out.add_argument("--json", dest="format", action="store_const", const="json")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.add_argument("--figures", metavar="DIR", help="also write PNG figures into DIR")
        p.add_argument("--max-bytes", type=int, default=DEFAULT_MAX_BYTES)

    for name, eps in (("partition", True), ("exact", False)):
        p = sub.add_parser(name, help=("approximate" if eps else "exact") + " partition of text files")
        p.add_argument("inputs", nargs="+")
        common(p, eps)
        p.add_argument("--huffman", action="store_true", help="add real Huffman bits per segment")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("partition-pages", help="page-aligned partition for a BWT+MTF coder")
    p.add_argument("input", help="directory of page files or an OPGC container")
    common(p)
    p.add_argument("--coder", choices=["entropy", "huffman"], default="entropy")
    p.add_argument("--exact", action="store_true", help="run the exact page DP instead")

    p = sub.add_parser("gap-demo", help="booster versus block partition on the adversarial text")
    p.add_argument("--sigma", type=int, action="append")
    p.add_argument("--format", choices=["json", "tsv"], default="tsv")
    p.add_argument("--json", dest="format", action="store_const", const="json")
    p.add_argument("--out")
    p.add_argument("--figures", metavar="DIR")

    p = sub.add_parser("analyze", help="approximation quality and work across epsilons")
    p.add_argument("input", nargs="?", help="text file (omit with --random)")
    common(p, epsilon=False)
    p.add_argument("--epsilons", default="0.05,0.1,0.25,0.5,1.0")
    p.add_argument("--exact-limit", type=int, default=2000,
                   help="skip the exact DP above this length")
    p.add_argument("--random", type=int, metavar="N", help="analyze a random text of length N")
    p.add_argument("--sigma", type=int, default=4, help="alphabet of --random")
    p.add_argument("--seed", type=int, default=0)
    return ap


def _config(args) -> RunConfig:
    family = getattr(args, "estimator", "h0")
    k = getattr(args, "k", None)
    if k is None:
        k = 1 if family in ("hk", "hka") else 0
    inputs = getattr(args, "inputs", None) or [x for x in [getattr(args, "input", None)] if x]
    return RunConfig(
        command=args.command, inputs=inputs, family=family, k=k,
        epsilon=getattr(args, "epsilon", 0.1) or 0.0, model_cost=getattr(args, "model", "huffman"),
        lam=getattr(args, "lam", 1.0), header_bits=getattr(args, "header_bits", 32.0),
        block_cap=getattr(args, "block_cap", None), mode=getattr(args, "mode", "byte"),
        fmt=args.format, huffman=getattr(args, "huffman", False),
        max_bytes=getattr(args, "max_bytes", DEFAULT_MAX_BYTES), seed=getattr(args, "seed", 0),
    )


def _emit(text: str, out: str | None):
    if out:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise InputError(f"{out}: {exc.strerror or exc}") from exc
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _figure_path(directory: str, source: str, kind: str) -> str:
    return os.path.join(directory, f"{Path(source).stem or 'input'}.{kind}.png")


def _run(args) -> int:
    cfg = _config(args)
    cfg.cost_model()  # validate before touching inputs

    if cfg.command in ("partition", "exact"):
        if args.jobs < 1:
            raise UsageError("--jobs must be positive")
        if args.jobs > 1 and len(cfg.inputs) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                reports = list(pool.map(run_text, [cfg] * len(cfg.inputs), cfg.inputs))
        else:
            reports = [run_text(cfg, path) for path in cfg.inputs]
        if cfg.fmt == "json":
            body = reports[0].to_json() if len(reports) == 1 else \
                json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True)
        else:
            body = "\n".join(r.to_tsv() for r in reports)
        _emit(body, args.out)
        if args.figures:
            from .figures import plot_partition

            for path, rep in zip(cfg.inputs, reports):
                t = load_text(read_input(path, cfg.max_bytes), cfg.mode)
                plot_partition(t.symbols, rep, _figure_path(args.figures, path, cfg.command))
        return 0

    if cfg.command == "partition-pages":
        rep = run_pages(cfg, cfg.inputs[0], args.coder, args.exact)
        _emit(render(rep, cfg.fmt), args.out)
        if args.figures:
            from .figures import plot_partition

            sizes = rep.extra["page_bytes"]
            plot_partition(sizes, rep, _figure_path(args.figures, rep.source, "pages"))
        return 0

    if cfg.command == "gap-demo":
        sigmas = args.sigma or [64, 256, 1024, 4096]
        rows = gap_rows(sigmas)
        meta = {"schema": 1, "command": "gap-demo"}
        body = json.dumps({**meta, "rows": rows}, indent=2) if cfg.fmt == "json" else rows_to_tsv(rows, meta)
        _emit(body, args.out)
        if args.figures:
            from .figures import plot_gap

            plot_gap(rows, os.path.join(args.figures, "gap.png"))
        return 0

    # analyze
    try:
        epsilons = [float(x) for x in args.epsilons.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --epsilons: {exc}") from exc
    if not epsilons or any(e <= 0 for e in epsilons):
        raise UsageError("epsilons must be positive")
    if args.random is not None:
        if args.random < 1 or not 1 <= args.sigma <= 256:
            raise UsageError("--random needs N >= 1 and 1 <= --sigma <= 256")
        rng = random.Random(cfg.seed)
        raw = bytes(rng.randrange(args.sigma) for _ in range(args.random))
        source = f"random-n{args.random}-s{args.sigma}-seed{cfg.seed}"
    elif cfg.inputs:
        raw = read_input(cfg.inputs[0], cfg.max_bytes)
        source = os.path.basename(cfg.inputs[0])
    else:
        raise UsageError("analyze needs an input file or --random N")
    try:
        t, exact, rows = analyze_rows(cfg, raw, epsilons, args.exact_limit)
    except ValueError as exc:
        raise InputError(f"{source}: {exc}") from exc
    meta = {"schema": 1, "command": "analyze", "source": source, "digest": digest(raw),
            "n": t.n, "sigma": t.sigma, "estimator": cfg.cost_model().label, "exact_bits": exact}
    body = json.dumps({**meta, "rows": rows}, indent=2) if cfg.fmt == "json" else rows_to_tsv(rows, meta)
    _emit(body, args.out)
    if args.figures:
        from .figures import plot_analyze

        plot_analyze(rows, _figure_path(args.figures, source, "analyze"), exact)
    return 0


def main(argv=None) -> int:
    level = getattr(logging, os.environ.get("OPTPART_LOG", "WARNING").upper(), None)
    logging.basicConfig(level=level if isinstance(level, int) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _run(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"optpart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"optpart: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
