import math
import random
from collections import Counter

import pytest

from optpart.costs import CostModel, segment_cost
from optpart.text import from_symbols
from optpart.windows import WindowSet


def random_text(rng, n, sigma):
    return from_symbols([rng.randrange(sigma) for _ in range(n)])


def blocky_text(rng, n, sigma):
    """Runs drawn from random sub-alphabets, so partitions are worth finding."""
    sym = []
    while len(sym) < n:
        sub = rng.sample(range(sigma), max(1, sigma // 2))
        sym += [rng.choice(sub) for _ in range(rng.randint(1, 60))]
    return from_symbols(sym[:n])


def criterion1_texts(count=100):
    """Seeded random texts (n <= 200, sigma in {2, 4, 16}) plus structured ones."""
    out = []
    for s in range(count):
        rng = random.Random(s)
        n = rng.randint(1, 200)
        sigma = rng.choice([2, 4, 16])
        out.append((blocky_text if s % 2 else random_text)(rng, n, sigma))
    out.append(from_symbols([0] * 64 + [1] * 64))
    out.append(from_symbols([0, 0, 1] * 20 + [0, 0, 2] * 20))
    out.append(from_symbols(list(range(8)) * 10 + [3] * 40))
    return out


FAMILY_MODELS = [
    CostModel("h0"),
    CostModel("h0", model_cost="arithmetic"),
    CostModel("h0a"),
    CostModel("hk", k=1),
    CostModel("hka", k=2),
]


def h0_oracle(seq):
    """Independent n*H0 straight from the formula with math.log2."""
    n = len(seq)
    return sum(c * math.log2(n / c) for c in Counter(seq).values())


def check_schedule(seed, variant, model, nmax=256, smax=16, mmax=8, steps=None):
    """Random rem/app schedule; every window's len is compared to segment_cost."""
    rng = random.Random(seed)
    n = rng.randint(1, nmax)
    t = random_text(rng, n, rng.choice([s for s in (1, 2, 4, 16) if s <= smax]))
    m = rng.randint(1, mmax)
    ws = WindowSet(t, m, variant, model)
    checks = 0
    for _ in range(steps or 3 * n):
        l = ws.l
        if l >= n:
            break
        ops = ["rem"] if any(r >= l for r in ws.ends) else []
        for i in range(m):
            nxt = ws.end(i) + 1
            if nxt < n and (i == m - 1 or nxt <= ws.end(i + 1)):
                ops.append(i)
        if not ops:
            break
        op = rng.choice(ops)
        if op == "rem":
            ws.rem()
        else:
            ws.app(op)
        for i in range(m):
            if ws.end(i) >= ws.l:
                got = ws.len(i).total_bits
                want = segment_cost(t, ws.l, ws.end(i), model).total_bits
                assert abs(got - want) <= 1e-6 * max(1.0, want), (seed, variant, i, got, want)
                checks += 1
    return checks


@pytest.fixture
def rng():
    return random.Random(1234)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
