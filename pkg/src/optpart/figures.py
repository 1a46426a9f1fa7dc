"""PNG figures written next to the CLI's delimited output."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _save(fig, path):
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_partition(symbols, report, path):
    """Symbols along the text with cut lines, and bits per symbol of each segment."""
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(9, 5), sharex=True)
    xs = range(len(symbols))
    top.scatter(xs, symbols, s=2, color="0.3")
    for c in report.cuts[:-1]:
        top.axvline(c - 0.5, color="tab:red", lw=0.8)
    top.set_ylabel("symbol id")
    top.set_title(f"{report.estimator}: {len(report.cuts)} segments, {report.total_bits:.1f} bits")
    starts = [0] + report.cuts[:-1]
    widths = [b - a for a, b in zip(starts, report.cuts)]
    rates = [bits / w for bits, w in zip(report.segment_bits, widths)]
    bottom.bar(starts, rates, width=widths, align="edge", edgecolor="k", lw=0.5, color="tab:blue")
    bottom.set_ylabel("bits / symbol")
    bottom.set_xlabel("position")
    return _save(fig, path)


def plot_gap(rows, path):
    """``rows``: dicts with sigma, whole, per_context, per_symbol, alternative, ratio."""
    sig = [r["sigma"] for r in rows]
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.5))
    for key in ("whole", "per_context", "per_symbol", "alternative"):
        left.plot(sig, [r[key] / (r["sigma"] * r["alpha"]) for r in rows], marker="o", label=key)
    left.set_xscale("log", base=2)
    left.set_xlabel("sigma")
    left.set_ylabel("bits / symbol")
    left.legend(fontsize=8)
    right.plot(sig, [r["ratio"] for r in rows], marker="s", color="tab:purple")
    right.set_xscale("log", base=2)
    right.set_xlabel("sigma")
    right.set_ylabel("best booster / alternative")
    return _save(fig, path)


def plot_analyze(rows, path, exact_bits=None):
    """Total bits and relaxed edges against epsilon."""
    eps = [r["epsilon"] for r in rows]
    fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.5))
    left.plot(eps, [r["total_bits"] for r in rows], marker="o", label="approx")
    if exact_bits is not None:
        left.axhline(exact_bits, color="k", ls="--", lw=0.8, label="exact")
        left.plot(eps, [(1 + e) * exact_bits for e in eps], color="0.6", lw=0.8, label="(1+eps) bound")
    left.set_xscale("log")
    left.set_xlabel("epsilon")
    left.set_ylabel("total bits")
    left.legend(fontsize=8)
    right.plot(eps, [r["edges_relaxed"] for r in rows], marker="o", color="tab:green")
    right.set_xscale("log")
    right.set_xlabel("epsilon")
    right.set_ylabel("edges relaxed")
    return _save(fig, path)
