import random

import pytest

from conftest import check_schedule, random_text
from optpart.costs import CostModel, segment_cost
from optpart.text import load_text
from optpart.windows import CompactCounters, WindowSet, default_variant, new_window_set

VARIANT_MODELS = [
    ("simple", CostModel("h0")),
    ("simple", CostModel("h0a", model_cost="arithmetic")),
    ("compact", CostModel("h0")),
    ("compact", CostModel("h0", model_cost="arithmetic", lam=1.7)),
    ("adaptive", CostModel("h0a")),
    ("korder", CostModel("hk", k=1)),
    ("korder", CostModel("hka", k=2)),
    ("korder", CostModel("hk", k=3, model_cost="arithmetic")),
]


@pytest.mark.parametrize("variant,model", VARIANT_MODELS, ids=lambda v: getattr(v, "label", v))
def test_oracle_equivalence(variant, model):
    for seed in range(40):
        check_schedule(seed, variant, model, nmax=128)


def test_app_updates_accumulator():
    t = load_text(b"aa")
    for variant in ("simple", "compact"):
        ws = WindowSet(t, 1, variant, CostModel("h0"))
        ws.app(0)
        assert ws.subs[0].E[0] == 0.0  # new symbol: 1*log1 - 0 = 0
        ws.app(0)
        assert ws.subs[0].E[0] == pytest.approx(2.0)
    ws = WindowSet(t, 1, "adaptive", CostModel("h0a"))
    ws.app(0)
    ws.app(0)
    assert ws.subs[0].E[0] == pytest.approx(1.0)


def test_new_window_set_initial_state():
    t = load_text(b"abcabc")
    ws = new_window_set(t, 3, None, CostModel())
    assert ws.l == 0 and ws.ends == [-1, -1, -1]
    assert ws.subs[0].E == [0.0] * 3
    assert ws.variant == default_variant(CostModel()) == "compact"
    with pytest.raises(ValueError, match="empty window"):
        ws.len(0)
    with pytest.raises(ValueError):
        WindowSet(t, 0, "simple", CostModel())


def test_korder_sub_texts():
    ws = WindowSet(load_text(b"abab"), 1, "korder", CostModel("hk", k=1))
    assert len(ws.subs[0].seq) == 3 and len(ws.subs[1].seq) == 4
    with pytest.raises(ValueError):
        WindowSet(load_text(b"abab"), 1, "compact", CostModel("hk", k=1))


def test_rem_removes_from_every_window():
    t = load_text(b"ab")
    for variant in ("simple", "compact"):
        ws = WindowSet(t, 2, variant, CostModel())
        ws.app(1)
        ws.app(1)
        ws.app(0)
        ws.app(0)
        ws.rem()
        for i in range(2):
            assert ws.subs[0].count(i, 0) == 0 and ws.subs[0].count(i, 1) == 1
            assert ws.subs[0].E[i] == 0.0
            assert ws.len(i).total_bits == segment_cost(t, 1, 1, CostModel()).total_bits


def test_rem_shrinks_to_one_symbol():
    t = load_text(b"aa")
    ws = WindowSet(t, 1, "compact", CostModel())
    ws.app(0)
    ws.app(0)
    ws.rem()
    assert ws.len(0) == segment_cost(t, 1, 1, CostModel())


def test_len_examples():
    t = load_text(b"mississippi")
    ws = WindowSet(t, 1, "compact", CostModel(header_bits=0))
    for _ in range(11):
        ws.app(0)
    assert ws.len(0).total_bits == pytest.approx(39.0537, abs=1e-4)
    ws = WindowSet(load_text(b"aaaa"), 1, "adaptive", CostModel("h0a", header_bits=0))
    for _ in range(4):
        ws.app(0)
    assert ws.len(0).total_bits == pytest.approx(0.0, abs=1e-12)
    ws = WindowSet(load_text(b"abababab"), 1, "korder", CostModel("hk", k=1))
    for _ in range(8):
        ws.app(0)
    assert ws.len(0).entropy_bits == pytest.approx(0.0, abs=1e-9)


def test_operation_errors():
    t = load_text(b"ab")
    ws = WindowSet(t, 2, "compact", CostModel())
    with pytest.raises(ValueError, match="nothing to remove"):
        ws.rem()
    with pytest.raises(ValueError, match="ordered"):
        ws.app(0)
    ws.app(1)
    ws.app(1)
    with pytest.raises(ValueError, match="window at text end"):
        ws.app(1)


def _check_lists(ws: WindowSet):
    cc: CompactCounters = ws.subs[0]
    seq = cc.seq
    l = cc.l
    expected = {}
    for r in cc.r:
        if r < l:
            continue
        seen = {}
        for p in range(l, r + 1):
            seen[seq[p]] = p
        for c, p in seen.items():
            expected.setdefault(c, set()).add(p)
    total = 0
    for c in range(cc.sigma):
        lst = cc.list_of(c)
        assert all(a < b for a, b in zip(lst, lst[1:]))
        assert set(lst) == expected.get(c, set()), (c, lst, expected.get(c))
        assert all(seq[p] == c for p in lst)
        total += len(lst)
    assert total <= len(seq)


def test_list_discipline():
    for seed in range(60):
        rng = random.Random(seed)
        n = rng.randint(1, 80)
        t = random_text(rng, n, rng.choice([2, 3, 6]))
        m = rng.randint(1, 6)
        ws = WindowSet(t, m, "compact", CostModel())
        for _ in range(3 * n):
            ops = ["rem"] if any(r >= ws.l for r in ws.ends) else []
            for i in range(m):
                nxt = ws.end(i) + 1
                if nxt < n and (i == m - 1 or nxt <= ws.end(i + 1)):
                    ops.append(i)
            if not ops:
                break
            op = rng.choice(ops)
            ws.rem() if op == "rem" else ws.app(op)
            _check_lists(ws)


@pytest.mark.parametrize("variant", ["simple", "compact"])
def test_sweep_update_counts(variant):
    rng = random.Random(11)
    n, m = 400, 8
    t = random_text(rng, n, 8)
    ws = WindowSet(t, m, variant, CostModel())
    apps = 0
    for l in range(n):
        if l:
            ws.rem()
        for i in range(m - 1, -1, -1):
            target = min(n - 1, l + 2 ** (i + 1) - 1, ws.end(i + 1) if i + 1 < m else n)
            while ws.end(i) < target:
                ws.app(i)
                apps += 1
    bound = n * m + apps if variant == "simple" else n + apps + n * m
    assert ws.updates <= 4 * bound
    assert apps <= n * m
