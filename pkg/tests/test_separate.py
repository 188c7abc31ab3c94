import math
import random
from collections import Counter

import pytest
from conftest import cycle, graph_of
from hypothesis import given
from hypothesis import strategies as st

from treealpha import detect, generators, graph as gr, separate
from treealpha.errors import InputError, InvariantViolation


def c8_wheel():
    g = generators.wheel(8, (0, 4))
    return g, detect.find_useful_wheel(g)


def test_wheel_separator_bare_wheel():
    g, w = c8_wheel()
    sec = next(s for s in w.sectors if set(s.path) == {0, 1, 2, 3, 4})
    x = separate.wheel_separator(g, w, sec)
    assert x == {8, 0, 4}
    s_star, rest = separate.wheel_sides(w, sec)
    assert s_star == {1, 2, 3} and rest == {5, 6, 7}
    assert gr.separates(g, x, s_star, rest)


def test_wheel_separator_rejects_bad_sectors():
    g, w = c8_wheel()
    with pytest.raises(InputError):
        separate.wheel_separator(g, w, (0, 1, 2))
    g = generators.wheel(9, (0, 1, 5))
    w = detect.find_useful_wheel(g)
    with pytest.raises(InputError):
        separate.wheel_separator(g, w, (0, 1))


def test_wheel_separator_in_larger_graphs():
    for seed in range(40):
        g = generators.tpcfree_wheel(25, seed)
        w = detect.find_useful_wheel(g)
        for sec in w.sectors:
            if sec.long:
                x = separate.wheel_separator(g, w, sec)
                s_star, rest = separate.wheel_sides(w, sec)
                assert not s_star & x
                assert gr.separates(g, x, s_star, rest - x)


def test_make_cooperative_examples():
    g = generators.chordal_random(15, 0.5, 1)
    assert separate.make_cooperative(g, {0}).certificate == separate.CLIQUE
    # P5 0-1-2-3-4 with only the ends seeing outside vertices 5 and 6
    g = graph_of(7, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 5), (4, 6), (5, 6)])
    h = separate.make_cooperative(g, {0, 1, 2, 3, 4})
    assert h.certificate == separate.INTERIOR_CONNECTED and h.boundary == {0, 4}
    assert separate.make_cooperative(cycle(6), {0, 3}) is None
    with pytest.raises(InputError):
        separate.make_cooperative(cycle(6), set())


def test_grow_cooperative_examples():
    h = separate.grow_cooperative(cycle(6), {0})
    assert h.members == {5, 0, 1} and h.interior == {0}
    g = graph_of(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
    grown = separate.grow_cooperative(g, {0, 1, 2})
    assert grown.members == set(range(6)) and grown.boundary == frozenset()
    whole = separate.make_cooperative(cycle(5), range(5))
    assert whole.boundary == frozenset()


def test_common_neighbor_examples():
    assert separate.common_neighbor_stability(cycle(20), {0}, {10}) == 0
    star = graph_of(4, [(0, 1), (0, 2), (0, 3)])
    assert separate.common_neighbor_stability(star, {1}, {2}) == 1
    with pytest.raises(InputError):
        separate.common_neighbor_stability(star, {0}, {1})


def test_pair_empty_rest():
    res = separate.separate_cooperative_pair(graph_of(2, []), {0}, {1})
    assert res.cut == frozenset() and res.log[0]["case"] == "empty"


def test_pair_c20():
    res = separate.separate_vertex_pair(cycle(20), 0, 10)
    assert gr.separates(cycle(20), res.cut, {0}, {10})
    assert res.alpha <= 32 * math.log2(19)
    assert res.to_dict()["cut"] == sorted(res.cut)


def test_vertex_pair_examples():
    g = graph_of(4, [(0, 1), (2, 3)])
    assert separate.separate_vertex_pair(g, 0, 2).cut == frozenset()
    res = separate.separate_vertex_pair(cycle(6), 0, 3)
    assert gr.separates(cycle(6), res.cut, {0}, {3}) and res.alpha <= 2
    with pytest.raises(InputError):
        separate.separate_vertex_pair(cycle(6), 0, 1)
    with pytest.raises(InputError):
        separate.separate_vertex_pair(cycle(6), 2, 2)


def test_log_bound_is_floor():
    for m in range(1, 300):
        assert separate.log_bound(m) == math.floor(32 * math.log2(m) + 1e-9)


def test_non_free_input_can_violate():
    # a big theta makes N1 a large stable set; the construction notices
    g = generators.theta(2, 2, 2)
    blown = graph_of(40, [(0, i) for i in range(2, 40)] + [(1, i) for i in range(2, 40)])
    with pytest.raises(InvariantViolation):
        separate.separate_vertex_pair(blown, 0, 1)
    assert separate.separate_vertex_pair(g, 0, 1).alpha == 3


@given(st.integers(0, 10_000))
def test_vertex_pair_properties(seed):
    rng = random.Random(seed)
    g = generators.tpcfree_glued(rng.randint(6, 90), rng.choice((0.3, 0.5)), seed, skew=0.2)
    vs = sorted(g.vertices)
    a, b = rng.sample(vs, 2)
    if g.adjacent(a, b):
        return
    res = separate.separate_vertex_pair(g, a, b)
    assert gr.separates(g, res.cut, {a}, {b})
    assert not res.cut & {a, b}
    assert res.alpha == gr.stability_number(g, res.cut) <= res.bound
    assert res.depth <= 1 + math.log2(g.n)
    for rec in res.log:
        assert rec.get("alpha_N1", 0) <= 16 and rec.get("alpha_N2", 0) <= 16


def test_cooperative_pairs_and_cases():
    seen = Counter()
    for seed in range(120):
        rng = random.Random(seed)
        g = generators.tpcfree_glued(rng.randint(20, 120), 0.4, seed, skew=0.3)
        v = rng.choice(sorted(g.vertices))
        h1 = gr.neighborhood(g, {v}, closed=True)
        far = [u for u in g.vertices if gr.distance_between_sets(g, h1, {u}) >= 2]
        if not far:
            continue
        h2 = frozenset({rng.choice(far)})
        res = separate.separate_cooperative_pair(g, h1, h2)
        assert gr.separates(g, res.cut, h1, h2)
        assert res.alpha <= res.bound
        seen.update(rec["case"] for rec in res.log)
    assert seen["split"] and seen["recurse-H1"] + seen["recurse-H2"]
