"""Acceptance criteria, one runner each.

Every runner returns ``(ok, detail)``; the pytest wrappers print one
``CRITERION k PASS|FAIL`` line and assert ``ok``.  ``python
tests/test_acceptance.py`` runs them all without pytest.
"""

from __future__ import annotations

import math
import os
import random
import sys
import time
from fractions import Fraction

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import all_graphs, contains_3pc, from_nx  # noqa: E402

from treealpha import balance, decompose, detect, generators, graph, separate  # noqa: E402
from treealpha.errors import ResourceError  # noqa: E402

HALF = Fraction(1, 2)


def random_weights(g, rng, support=None):
    vs = list(g.vertices) if support is None else sorted(support)
    raw = {v: Fraction(rng.randint(0, 20), rng.randint(1, 9)) for v in vs}
    if sum(raw.values()) == 0:
        raw[vs[0]] = Fraction(1)
    w = {v: raw.get(v, Fraction(0)) for v in g.vertices}
    return graph.normalize(g, w)


def certified_free(g):
    det = detect.detect_3pc(g)
    return det.witness is None and det.exhaustive


# ----------------------------------------------------------------------

def criterion_1():
    t0 = time.perf_counter()
    graphs = list(all_graphs(8))
    eight = sum(1 for h in graphs if h.number_of_nodes() == 8)
    bad = []
    for h in graphs:
        ours = detect.find_3pc(from_nx(h)) is not None
        if ours != contains_3pc(h):
            bad.append(sorted(h.edges))
    dt = time.perf_counter() - t0
    ok = eight == 12346 and not bad and dt < 600
    return ok, f"{len(graphs)} graphs ({eight} on 8 vertices), {len(bad)} disagreements, {dt:.0f}s"


def criterion_2(count=1000):
    runs = failures = sector_checks = 0
    seed = 0
    while runs < count:
        seed += 1
        rng = random.Random(seed)
        g = generators.tpcfree_wheel(rng.randint(12, 40), seed)
        wheel = detect.find_useful_wheel(g)
        if wheel is None or not certified_free(g):
            continue
        runs += 1
        for sec in wheel.sectors:
            if not sec.long:
                continue
            sector_checks += 1
            x = separate.wheel_separator(g, wheel, sec)
            s_star, rest = separate.wheel_sides(wheel, sec)
            # the hub always sees W - S, so that side is taken outside X
            rest = rest - x
            if not graph.separates(g, x, s_star, rest) and detect.find_3pc(g) is None:
                failures += 1
    return failures == 0, f"{runs} wheels, {sector_checks} long sectors, {failures} failures"


def _cooperative_candidates(g, rng):
    v = rng.choice(list(g.vertices))
    kind = rng.randrange(3)
    if kind == 0:
        return frozenset((v,))
    if kind == 1:
        members = {v}
        for u in sorted(g.neighbors(v)):
            if all(g.adjacent(u, x) for x in members):
                if rng.random() < 0.7:
                    members.add(u)
        return frozenset(members)
    radius = rng.randint(1, 2)
    ball = {v}
    for _ in range(radius):
        ball = set(graph.neighborhood(g, ball, closed=True))
    return frozenset(ball)


def criterion_3(count=1000):
    pairs = worst = 0
    violations = 0
    seed = 0
    while pairs < count:
        seed += 1
        rng = random.Random(seed)
        if seed % 2:
            g = generators.tpcfree_wheel(rng.randint(12, 60), seed)
        else:
            g = generators.tpcfree_glued(rng.randint(10, 60), rng.choice((0.3, 0.4, 0.5)), seed,
                                         skew=rng.choice((0.0, 0.3)))
        if not certified_free(g):
            continue
        for _ in range(20):
            h1, h2 = _cooperative_candidates(g, rng), _cooperative_candidates(g, rng)
            if h1 & h2 or graph.neighborhood(g, h1) & h2:
                continue
            if separate.make_cooperative(g, h1) is None or separate.make_cooperative(g, h2) is None:
                continue
            a = separate.common_neighbor_stability(g, h1, h2)
            pairs += 1
            worst = max(worst, a)
            violations += a > 16
    return violations == 0, f"{pairs} pairs, max alpha(N(H1)&N(H2)) = {worst}, {violations} violations"


def criterion_4(count=500):
    t0 = time.perf_counter()
    runs = problems = 0
    worst_ratio = 0.0
    seed = 0
    while runs < count:
        seed += 1
        rng = random.Random(seed)
        if seed % 4 == 0:
            g = generators.tpcfree_wheel(rng.randint(20, 80), seed)
        else:
            g = generators.tpcfree_glued(rng.randint(10, 200), rng.choice((0.3, 0.4, 0.5)), seed,
                                         skew=rng.choice((0.0, 0.3)))
        if not certified_free(g):
            continue
        vs = list(g.vertices)
        for _ in range(3):
            a, b = rng.sample(vs, 2)
            if g.adjacent(a, b):
                continue
            res = separate.separate_vertex_pair(g, a, b)
            runs += 1
            n = g.n
            ok = (graph.separates(g, res.cut, [a], [b]) and a not in res.cut and b not in res.cut
                  and res.alpha <= 32 * math.log2(n) and res.depth <= 1 + math.log2(n))
            problems += not ok
            worst_ratio = max(worst_ratio, res.alpha / (32 * math.log2(n)))
    dt = time.perf_counter() - t0
    return problems == 0 and dt < 1800, (f"{runs} runs, {problems} failures, "
                                        f"max alpha/(32 log2 n) = {worst_ratio:.3f}, {dt:.0f}s")


def criterion_5(count=500):
    inst = violations = nonempty = 0
    seed = 0
    while inst < count:
        seed += 1
        rng = random.Random(seed)
        c = 2 if seed % 2 else 3
        n = rng.randint(300, 800) if c == 2 else rng.randint(900, 1500)
        g = generators.tpcfree_glued(n, 0.4, seed, skew=0.95, theta_only=True)
        hubs = rng.sample((0, 1, 2), rng.randint(1, 3))
        y = set()
        for h in hubs:
            y |= g.neighbors(h)
        y |= {v for v in g.vertices if rng.random() < 0.05}
        if graph.stability_number(g, y) <= 24 * c * c:
            continue
        inst += 1
        z = balance.high_degree_stable_filter(g, y, c)
        nonempty += bool(z)
        violations += graph.stability_number(g, z) > 2 * c - 1
    return violations == 0, f"{inst} instances ({nonempty} with Z nonempty), {violations} violations"


def _criterion_6_instances(count):
    seed = 0
    made = 0
    while made < count:
        seed += 1
        rng = random.Random(seed)
        fam = seed % 3
        if fam == 0:
            g = generators.tpcfree_glued(rng.randint(8, 150), rng.choice((0.3, 0.4, 0.5)), seed,
                                         skew=rng.choice((0.0, 0.3)))
        elif fam == 1:
            g = generators.tpcfree_wheel(rng.randint(15, 60), seed)
        else:
            g = generators.chordal_random(rng.randint(8, 100), rng.choice((0.2, 0.5)), seed)
        if not certified_free(g):
            continue
        made += 1
        w = graph.uniform_weights(g) if rng.random() < 0.5 else random_weights(g, rng)
        yield seed, g, w


def separator_alpha_bound(n, cfg):
    lg = 2 + math.log2(n)
    return 100 * cfg.d ** 2 * math.ceil(cfg.d * lg / cfg.r) * lg * cfg.L


def criterion_6(count=100):
    runs = failures = skipped = 0
    steps_max = 0
    modes = {None: "literal", 0: "eager"}
    alphas = {"literal": 0, "eager": 0}
    for _, g, w in _criterion_6_instances(count):
        for cap, name in modes.items():
            try:
                d, res = balance.search_d(g, w, bad_cap=cap)
            except ResourceError:
                skipped += 1
                continue
            except Exception:
                failures += 1
                continue
            runs += 1
            cfg = balance.BreakabilityConfig.for_graph(g.n, d, bad_cap=cap)
            n = g.n
            ok = (res.steps <= 2 + math.ceil(math.log2(n))
                  and balance.is_balanced_separator(g, w, res.cut, HALF)
                  and graph.stability_number(g, res.cut) <= separator_alpha_bound(n, cfg))
            failures += not ok
            steps_max = max(steps_max, res.steps)
            alphas[name] = max(alphas[name], res.alpha)
    detail = (f"{runs} runs over {count} graphs, {failures} failures, {skipped} d-search misses, "
              f"max steps {steps_max}, max alpha literal {alphas['literal']} eager {alphas['eager']}")
    return failures == 0 and runs >= count, detail


def criterion_7(count=100):
    runs = failures = 0
    worst = 0
    for _, g, _w in _criterion_6_instances(count):
        for cap in (None, 0):
            log = decompose.BuildLog()
            try:
                td, _ = decompose.tree_alpha_pipeline(g, bad_cap=cap, log=log)
            except ResourceError:
                continue
            runs += 1
            valid = decompose.validate_tree_decomposition(g, td).valid
            bag_alpha = max(graph.stability_number(g, b) for _, b in td.nodes)
            ok = valid and bag_alpha <= 5 * log.realized
            failures += not ok
            if log.realized:
                worst = max(worst, bag_alpha / log.realized)
    return failures == 0 and runs >= count, f"{runs} builds, {failures} failures, max bag/cut alpha ratio {worst:.2f}"


def criterion_8(count=300):
    runs = mismatches = 0
    seed = 0
    while runs < count:
        seed += 1
        rng = random.Random(seed)
        n = rng.randint(2, 18)
        kind = seed % 3
        if kind == 0:
            g = generators.tpcfree_glued(n, rng.choice((0.3, 0.5)), seed)
        elif kind == 1:
            g = generators.chordal_random(n, 0.4, seed)
        else:
            g = generators.tpcfree_random(min(n, 12), rng.choice((0.2, 0.3)), seed)
        w = {v: Fraction(rng.randint(0, 50), rng.randint(1, 12)) for v in g.vertices}
        td, _ = decompose.tree_alpha_pipeline(g, bad_cap=0 if seed % 2 else None)
        _, got = decompose.mwis_td(g, w, td)
        _, want = graph.mwis_bruteforce(g, w)
        runs += 1
        mismatches += got != want
    return mismatches == 0, f"{runs} graphs, {mismatches} mismatches"


def criterion_9(count=100):
    bad_tree = bad_pipe = 0
    realized = []
    for seed in range(1, count + 1):
        rng = random.Random(seed)
        g = generators.chordal_random(rng.randint(5, 80), rng.choice((0.2, 0.4, 0.7)), seed)
        ct = decompose.clique_tree(g)
        if not decompose.validate_tree_decomposition(g, ct).valid or decompose.td_independence_number(g, ct) != 1:
            bad_tree += 1
        td, stats = decompose.tree_alpha_pipeline(g, bad_cap=0)
        bad_pipe += not decompose.validate_tree_decomposition(g, td).valid
        realized.append(stats.independence_number)
    return bad_tree == 0 and bad_pipe == 0, (f"{count} chordal graphs, {bad_tree} clique-tree failures, "
                                             f"{bad_pipe} invalid pipeline decompositions, "
                                             f"pipeline bag alpha max {max(realized)}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def report(k, ok, detail):
    line = f"CRITERION {k} {'PASS' if ok else 'FAIL'}: {detail}"
    print(line, flush=True)
    return line


@pytest.mark.slow
@pytest.mark.parametrize("k", range(1, 10))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    with capsys.disabled():
        print()
        report(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    only = {int(a) for a in sys.argv[1:]}
    results = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        t0 = time.perf_counter()
        ok, detail = fn()
        report(k, ok, f"{detail} [{time.perf_counter() - t0:.1f}s]")
        results.append(ok)
    sys.exit(0 if all(results) else 1)
