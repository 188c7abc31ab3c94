import math
import random
from fractions import Fraction

import pytest
from conftest import cycle, graph_of
from hypothesis import given
from hypothesis import strategies as st

from treealpha import balance, generators, graph as gr
from treealpha.errors import InputError

HALF = Fraction(1, 2)


def star(k):
    return graph_of(k + 1, [(0, i) for i in range(1, k + 1)])


def test_is_balanced_examples(c6):
    w = gr.uniform_weights(c6)
    assert balance.is_balanced_separator(c6, w, range(6))
    assert balance.is_balanced_separator(c6, w, {0, 3})
    assert not balance.is_balanced_separator(c6, w, {0})
    with pytest.raises(InputError):
        balance.is_balanced_separator(c6, {v: 1 for v in range(6)}, {0})


def test_balance_parameter_is_respected(c6):
    w = gr.uniform_weights(c6)
    # {0} leaves a path of weight 5/6
    assert balance.is_balanced_separator(c6, w, {0}, Fraction(5, 6))
    assert not balance.is_balanced_separator(c6, w, {0}, Fraction(4, 5))


def test_dominated_examples(c6):
    s = star(6)
    assert balance.dominated_balanced_separator(s, gr.uniform_weights(s), 1) == {0}
    y = balance.dominated_balanced_separator(c6, gr.uniform_weights(c6), 1)
    assert len(y) == 1
    assert balance.is_balanced_separator(c6, gr.uniform_weights(c6), gr.neighborhood(c6, y, closed=True))


def test_dominated_can_fail():
    # one closed neighbourhood leaves a path of 27 vertices
    g = cycle(30)
    assert balance.dominated_balanced_separator(g, gr.uniform_weights(g), 1) is None


def test_clique_dominated_on_clique():
    k5 = graph_of(5, [(i, j) for i in range(5) for j in range(i + 1, 5)])
    cfg = balance.BreakabilityConfig.for_graph(5, 1)
    # Y = {0} leaves a heavy K4 attached to 0
    k, y_k = balance.clique_dominated_separator(k5, gr.uniform_weights(k5), cfg)
    assert k == {0} and y_k == frozenset()
    # removing the centre already balances a star
    s = star(6)
    k, y_k = balance.clique_dominated_separator(s, gr.uniform_weights(s), cfg)
    assert k == frozenset() and y_k == {0}


def test_clique_dominated_on_c20():
    g = cycle(20)
    w = gr.uniform_weights(g)
    cfg = balance.BreakabilityConfig.for_graph(20, 2)
    k, y_k = balance.clique_dominated_separator(g, w, cfg)
    assert g.is_clique(k) and len(k) <= 2
    assert not k & y_k
    assert balance.is_balanced_separator(g, w, gr.neighborhood(g, k, closed=True) | y_k)


def test_high_degree_filter_examples():
    edgeless = graph_of(6, [])
    assert balance.high_degree_stable_filter(edgeless, range(6), 2) == frozenset()
    s = star(8)
    for c in (2, 5, 8):
        assert balance.high_degree_stable_filter(s, range(1, 9), c) == {0}
    with pytest.raises(InputError):
        balance.high_degree_stable_filter(s, range(1, 9), 1)


def test_clique_partition_examples():
    assert [len(c) for c in balance.clique_partition(range(7), 3)] == [3, 3, 1]
    assert balance.clique_partition(range(4), 4) == [frozenset(range(4))]
    assert balance.clique_partition([], 3) == []
    with pytest.raises(InputError):
        balance.clique_partition([0, 2], 1, cycle(4))


def test_config_values():
    cfg = balance.BreakabilityConfig.for_graph(1024, 3)
    assert cfg.L == 320
    assert cfg.r == 6 + 30
    assert cfg.cap == 96 * 9 and cfg.C == 900


@given(st.integers(2, 100_000), st.integers(1, 8))
def test_config_makes_ratio_one(n, d):
    cfg = balance.BreakabilityConfig.for_graph(n, d)
    assert cfg.L == math.ceil(32 * math.log2(n) - 1e-9)
    assert cfg.r >= d * (2 + math.log2(n)) - 1e-9
    assert math.ceil(d * (2 + math.log2(n)) / cfg.r - 1e-12) == 1


def test_empty_separator_when_already_balanced():
    g = graph_of(2, [])
    cfg = balance.BreakabilityConfig.for_graph(2, 1)
    res = balance.domination_to_stability(g, gr.uniform_weights(g), cfg)
    assert res.cut == frozenset() and res.steps == 1


def test_literal_mode_takes_bad_verbatim():
    g = generators.tpcfree_glued(30, 0.4, 2)
    cfg = balance.BreakabilityConfig.for_graph(g.n, 1)
    res = balance.domination_to_stability(g, gr.uniform_weights(g), cfg)
    first = res.trace[1]
    assert first.z_mode == "bad"
    # Bad_0 = V has alpha far below 96 d^2 at this size
    assert res.cut == frozenset(g.vertices)


def test_eager_mode_small_cuts():
    g = cycle(40)
    w = gr.uniform_weights(g)
    d, res = balance.search_d(g, w, bad_cap=0)
    assert balance.is_balanced_separator(g, w, res.cut)
    assert res.alpha < 20 and res.steps <= 2 + math.ceil(math.log2(40))


@given(st.integers(0, 10_000), st.booleans())
def test_domination_to_stability_properties(seed, eager):
    rng = random.Random(seed)
    g = generators.tpcfree_glued(rng.randint(2, 70), rng.choice((0.3, 0.5)), seed)
    raw = {v: Fraction(rng.randint(0, 5)) for v in g.vertices}
    if not any(raw.values()):
        raw[0] = Fraction(1)
    w = gr.normalize(g, raw)
    d, res = balance.search_d(g, w, bad_cap=0 if eager else None)
    assert balance.is_balanced_separator(g, w, res.cut)
    assert res.steps <= 2 + math.ceil(math.log2(max(g.n, 2)))
    assert res.alpha == gr.stability_number(g, res.cut) <= res.bound
    for state in res.trace[1:]:
        assert g.is_clique(state.L)
