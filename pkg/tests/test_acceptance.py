"""Acceptance gate: one test per exit criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` or ``python3 tests/test_acceptance.py``.
"""

import functools
import math
import random
import sys
import time

import pytest

from conftest import FAMILY_MODELS, check_schedule, criterion1_texts, random_text
from optpart.adversarial import (alternative_partition_cost, booster_partition_costs, choose_alpha,
                                 gap_ratio, generate_gap_instance)
from optpart.bwt import (BwtWindowState, build_suffix_structures, bwt_app, bwt_rem,
                         exact_page_partition, from_symbol_pages, group_histogram, mtf_histogram,
                         page_aligned_partition)
from optpart.costs import CostModel, segment_cost
from optpart.partition import approx_partition, exact_dp_partition, verify_partition
from optpart.report import huffman_validate
from optpart.text import from_symbols

pytestmark = pytest.mark.acceptance

RESULTS = []
EPSILONS = (0.1, 0.5, 1.0)


def report(number, title, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    status = "PASS" if ok and within else "FAIL"
    limit = f" (budget {budget:g}s)" if budget else ""
    line = f"[{status}] criterion {number:>2}: {title} | {detail} | {elapsed:.2f}s{limit}"
    RESULTS.append(line)
    print(line, file=sys.stderr)
    return ok and within


@functools.lru_cache(maxsize=None)
def criterion1_runs():
    """Exact and approximate partitions of every criterion-1 input, computed once."""
    runs = []
    start = time.perf_counter()
    for t in criterion1_texts():
        for model in FAMILY_MODELS:
            exact = exact_dp_partition(t, model)
            for eps in EPSILONS:
                runs.append((t, model, eps, exact, approx_partition(t, model, eps)))
    return runs, time.perf_counter() - start


def test_c01_approximation_guarantee():
    runs, elapsed = criterion1_runs()
    bad = []
    worst = 0.0
    for t, model, eps, exact, approx in runs:
        verify_partition(t, model, approx)
        ex, ap = exact.total_bits, approx.total_bits
        worst = max(worst, (ap / ex - 1) / eps)
        if not (ex <= ap * (1 + 1e-9) and ap <= (1 + eps) * ex + 1e-6 * ex):
            bad.append((t.n, model.label, eps, ap / ex))
    detail = f"{len(runs)} runs, {len(bad)} violations, worst slack use {worst:.2f} of eps"
    assert report(1, "approx within (1+eps) of DP", not bad, detail, elapsed, 60), bad[:5]


def test_c02_estimator_oracle_equivalence():
    start = time.perf_counter()
    cases = [("simple", CostModel("h0")), ("compact", CostModel("h0")), ("adaptive", CostModel("h0a")),
             ("korder", CostModel("hk", k=1)), ("korder", CostModel("hka", k=2)),
             ("korder", CostModel("hk", k=3))]
    checks = 0
    failure = None
    try:
        for variant, model in cases:
            for seed in range(200):
                checks += check_schedule(seed, variant, model)
    except AssertionError as exc:
        failure = exc
    elapsed = time.perf_counter() - start
    detail = f"{len(cases)} variant/family pairs x 200 schedules, {checks} len checks"
    assert report(2, "window len equals from-scratch cost", failure is None, detail, elapsed, 30), failure


def test_c03_two_halves_example():
    start = time.perf_counter()
    t = from_symbols([0] * 512 + [1] * 512)
    model = CostModel("h0")
    p = approx_partition(t, model, 0.05)
    elapsed = time.perf_counter() - start
    whole = segment_cost(t, 0, t.n - 1, model).total_bits
    exact = exact_dp_partition(t, model).total_bits
    ratio = p.total_bits / whole
    info = []
    for alt in (CostModel("h0", model_cost="arithmetic"), CostModel("h0a")):
        q = approx_partition(t, alt, 0.05)
        info.append(f"{alt.label} {q.total_bits / segment_cost(t, 0, t.n - 1, alt).total_bits:.3f}")
    detail = (f"H0/huffman approx {p.total_bits:.0f} bits (DP {exact:.0f}) vs whole {whole:.0f}, "
              f"ratio {ratio:.3f} (needs <= 0.2); for reference {', '.join(info)}")
    ok = ratio <= 0.2 and p.total_bits <= 1.05 * exact
    assert report(3, "0^512 1^512 split beats whole by 5x", ok, detail, elapsed, 1), detail


def test_c04_context_regimes_example():
    start = time.perf_counter()
    k, r = 2, 200
    t = from_symbols(([0] * k + [1]) * r + ([0] * k + [2]) * r)
    mid = t.n // 2
    lines, ok = [], True
    for model in (CostModel("hka", k=k), CostModel("hk", k=k, model_cost="arithmetic")):
        p = approx_partition(t, model, 0.1)
        whole = segment_cost(t, 0, t.n - 1, model).total_bits
        near = any(abs(c - mid) <= k + 1 for c in p.cuts[:-1])
        ok &= p.total_bits <= 0.5 * whole and near
        lines.append(f"{model.label} ratio {p.total_bits / whole:.3f} cuts {list(p.cuts)}")
    ref = CostModel("hk", k=k)
    p = approx_partition(t, ref, 0.1)
    lines.append(f"reference {ref.label} ratio {p.total_bits / segment_cost(t, 0, t.n - 1, ref).total_bits:.3f}")
    elapsed = time.perf_counter() - start
    detail = f"n={t.n}, midpoint {mid}; " + "; ".join(lines)
    assert report(4, "(aab)^r(aac)^r split at the regime change", ok, detail, elapsed, 5), detail


def test_c05_edge_budget():
    runs, elapsed = criterion1_runs()
    start = time.perf_counter()
    bad = 0
    tightest = 0.0
    for t, model, eps, _, approx in runs:
        u = segment_cost(t, 0, t.n - 1, model).total_bits + 1
        bound = t.n * (math.ceil(math.log(u) / math.log(1 + eps)) + 1)
        tightest = max(tightest, approx.stats.edges_relaxed / bound)
        bad += approx.stats.edges_relaxed > bound
    detail = f"{len(runs)} runs, {bad} over budget, max edges/bound {tightest:.3f}"
    assert report(5, "edges relaxed <= n(ceil(log_(1+eps) U) + 1)", bad == 0, detail,
                  time.perf_counter() - start), detail


def _random_collection(rng):
    m = rng.randint(1, 12)
    sigma = rng.randint(1, 8)
    return from_symbol_pages([[rng.randrange(sigma) for _ in range(rng.randint(0, 24))] for _ in range(m)], sigma)


def test_c06_bwt_exactness():
    start = time.perf_counter()
    mismatches = checks = queries = qbad = 0
    for seed in range(50):
        rng = random.Random(seed)
        pc = _random_collection(rng)
        ss = build_suffix_structures(pc)
        ws = BwtWindowState(pc, ss)
        for _ in range(3 * pc.m):
            can_app = ws.r_page + 1 < pc.m
            if can_app and (ws.empty or rng.random() < 0.6):
                bwt_app(ws)
            elif not ws.empty:
                bwt_rem(ws)
            else:
                break
            checks += 1
            if ws.empty:
                mismatches += any(ws.F)
            else:
                want = mtf_histogram(ss.rbwt(ws.a, ws.b), pc.sigma)
                mismatches += ws.F != want or ws.F != group_histogram(pc, ws.l_page, ws.r_page)
        if ss.n:
            for _ in range(20):
                a = rng.randrange(ss.n)
                b = rng.randrange(a, ss.n)
                h = rng.randrange(len(ss.bwt))
                c = rng.randrange(pc.sigma)
                act = [r for r in range(len(ss.bwt)) if ss.bwt[r] == c and a <= ss.origin(r) <= b]
                prev = max((r for r in act if r < h), default=None)
                nxt = min((r for r in act if r > h), default=None)
                qbad += ss.prev_active(c, a, b, h) != prev or ss.next_active(c, a, b, h) != nxt
                queries += 1
    elapsed = time.perf_counter() - start
    ok = mismatches == 0 and qbad == 0 and queries >= 1000
    detail = f"{checks} histogram checks, {mismatches} mismatches; {queries} prev/next queries, {qbad} wrong"
    assert report(6, "MTF histograms and prev/next are exact", ok, detail, elapsed, 60), detail


def test_c07_page_aligned_guarantee():
    start = time.perf_counter()
    runs = bad = clamps = 0
    worst = 0.0
    for coder, model in (("entropy", CostModel(header_bits=0)), ("huffman", CostModel(header_bits=0)),
                         ("entropy", CostModel())):
        for seed in range(25):
            pc = _random_collection(random.Random(1000 + seed))
            ss = build_suffix_structures(pc)
            exact = exact_page_partition(pc, coder, model).total_bits
            for eps in (0.1, 1.0):
                p = page_aligned_partition(pc, eps, coder, model, ss)
                runs += 1
                clamps += p.stats.clamps
                worst = max(worst, (p.total_bits / exact - 1) / eps)
                bad += not (exact <= p.total_bits * (1 + 1e-9) and p.total_bits <= (1 + eps) * exact * (1 + 1e-9))
    elapsed = time.perf_counter() - start
    detail = f"{runs} runs, {bad} violations, worst slack use {worst:.2f}, non-monotone steps clamped {clamps}"
    assert report(7, "page-aligned approx within (1+eps) of page DP", bad == 0, detail, elapsed, 120), detail


def test_c08_booster_gap():
    start = time.perf_counter()
    ratios = {s: gap_ratio(s) for s in (16, 64, 256, 1024, 4096)}
    bounds_ok = True
    for s in (16, 64, 256):
        g = generate_gap_instance(s, choose_alpha(s))
        a, lg = g.alpha, math.log2(s)
        b = booster_partition_costs(g)
        alt = alternative_partition_cost(g)
        bounds_ok &= (b.whole >= s * a * lg and b.per_symbol >= s * a * lg
                      and b.per_context >= s * a * math.log2(a) + s * lg - 1e-9
                      and alt <= 4 * (s * a * math.log2(a) + s / a ** 2 * lg))
    trend = [ratios[s] for s in (64, 256, 1024, 4096)]
    ok = ratios[256] > 1 and all(x <= y for x, y in zip(trend, trend[1:])) and bounds_ok
    elapsed = time.perf_counter() - start
    detail = "ratios " + ", ".join(f"{s}:{r:.3f}" for s, r in ratios.items()) + f"; bounds hold {bounds_ok}"
    assert report(8, "booster gap > 1 and growing with sigma", ok, detail, elapsed, 30), detail


def test_c09_monotonicity():
    start = time.perf_counter()
    violations = segments = clamps = 0
    rng = random.Random(9)
    texts = [random_text(rng, rng.randint(1, 64), rng.choice([2, 4, 16])) for _ in range(50)]
    for t in texts:
        for model in (CostModel("h0"), CostModel("h0a"), CostModel("h0", model_cost="arithmetic")):
            for i in range(t.n):
                prev = 0.0
                for j in range(i, t.n):
                    c = segment_cost(t, i, j, model).total_bits
                    segments += 1
                    violations += not (c > 0 and c >= prev)
                    prev = c
        for model in (CostModel("hk", k=1), CostModel("hka", k=2), CostModel("hk", k=3)):
            clamps += approx_partition(t, model, 0.1).stats.clamps
    elapsed = time.perf_counter() - start
    ok = violations == 0 and clamps == 0
    detail = f"{segments} segments, {violations} violations; HK clamp counter {clamps}"
    assert report(9, "costs positive and non-decreasing under append", ok, detail, elapsed), detail


def test_c10_huffman_validation():
    runs, _ = criterion1_runs()
    start = time.perf_counter()
    checked = bad = 0
    seen = set()
    h0 = CostModel("h0")
    for t, _, _, _, approx in runs:
        key = (t.symbols, approx.cuts)
        if key in seen:
            continue
        seen.add(key)
        for (a, b), actual in zip(approx.segments(), huffman_validate(t, approx)):
            est = segment_cost(t, a, b - 1, h0).total_bits
            checked += 1
            bad += actual > est + (b - a) + 64
    elapsed = time.perf_counter() - start
    detail = f"{checked} segments, {bad} above estimate + n + 64"
    assert report(10, "real Huffman bits within estimate slack", bad == 0, detail, elapsed), detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
