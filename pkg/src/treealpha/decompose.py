"""Tree decompositions: validation, bag stability, the separator-driven
construction, the end-to-end pipeline for 3PC-free graphs, and maximum
weight independent set by dynamic programming over bags."""

from __future__ import annotations

import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .balance import (
    DEFAULT_D,
    BreakabilityConfig,
    domination_to_stability,
    is_balanced_separator,
)
from .detect import DEFAULT_LIMIT, detect_3pc
from .errors import InputError, InvariantViolation, ParseError, ResourceError
from .graph import (
    Graph,
    components,
    make_weights,
    maximum_stable_set,
    stability_number,
    stable_subsets,
    tiebreak_key,
    uniform_weights,
)

DP_STATE_BUDGET = 2_000_000


@dataclass(frozen=True)
class TreeDecomposition:
    nodes: Tuple[Tuple[int, frozenset], ...]
    tree_edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def make(cls, bags: Mapping[int, Iterable[int]] | Sequence[Iterable[int]], edges: Iterable[Tuple[int, int]] = ()):
        items = bags.items() if isinstance(bags, Mapping) else enumerate(bags)
        nodes = tuple(sorted((int(i), frozenset(b)) for i, b in items))
        return cls(nodes, tuple((int(a), int(b)) for a, b in edges))

    def bags(self) -> Dict[int, frozenset]:
        return dict(self.nodes)

    def __len__(self) -> int:
        return len(self.nodes)

    def to_json(self) -> str:
        doc = {
            "nodes": [{"id": i, "bag": sorted(b)} for i, b in self.nodes],
            "edges": [[a, b] for a, b in self.tree_edges],
        }
        return json.dumps(doc, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "TreeDecomposition":
        try:
            doc = json.loads(text)
            nodes = [(int(n["id"]), [int(v) for v in n["bag"]]) for n in doc["nodes"]]
            edges = [(int(a), int(b)) for a, b in doc["edges"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise ParseError(f"malformed tree decomposition: {exc}") from None
        ids = [i for i, _ in nodes]
        if len(set(ids)) != len(ids):
            raise ParseError("duplicate node id")
        known = set(ids)
        for a, b in edges:
            if a not in known or b not in known:
                raise ParseError(f"edge {a}-{b} names an unknown node")
        return cls.make(dict(nodes), edges)


@dataclass(frozen=True)
class DecompositionStats:
    width: int
    independence_number: int
    bag_count: int
    bound: float
    realized_cut_alpha: int = 0
    d: int = 0
    certified_3pc_free: bool = True

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "independence_number": self.independence_number,
            "bag_count": self.bag_count,
            "bound": self.bound,
            "realized_cut_alpha": self.realized_cut_alpha,
            "d": self.d,
            "certified_3pc_free": self.certified_3pc_free,
        }


@dataclass
class ValidationReport:
    valid: bool
    problems: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.valid


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

def _tree_problems(td: TreeDecomposition) -> List[str]:
    ids = [i for i, _ in td.nodes]
    idset = set(ids)
    out = []
    if len(idset) != len(ids):
        out.append("duplicate node ids")
    adj = defaultdict(set)
    for a, b in td.tree_edges:
        if a not in idset or b not in idset:
            out.append(f"edge {a}-{b} uses an unknown node")
            continue
        if a == b or b in adj[a]:
            out.append(f"edge {a}-{b} is a loop or repeated")
            continue
        adj[a].add(b)
        adj[b].add(a)
    if ids and len(td.tree_edges) != len(idset) - 1:
        out.append(f"{len(td.tree_edges)} edges on {len(idset)} nodes")
    if ids:
        seen = {ids[0]}
        queue = deque([ids[0]])
        while queue:
            for y in adj[queue.popleft()]:
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        if seen != idset:
            out.append("tree is disconnected")
    return out


def validate_tree_decomposition(g: Graph, td: TreeDecomposition) -> ValidationReport:
    problems = _tree_problems(td)
    bags = td.bags()
    verts = set(g.vertices)
    holders = defaultdict(list)
    for i, bag in td.nodes:
        for v in bag:
            if v not in verts:
                problems.append(f"bag {i} holds unknown vertex {v}")
            holders[v].append(i)
    for v in g.vertices:
        if not holders[v]:
            problems.append(f"vertex {v} is in no bag")
    for u, v in g.edges():
        if not any(v in bags[i] for i in holders[u]):
            problems.append(f"edge {u}-{v} is in no bag")
    if not problems or all("bag" in p or "edge " in p for p in problems):
        adj = defaultdict(set)
        for a, b in td.tree_edges:
            adj[a].add(b)
            adj[b].add(a)
        for v in g.vertices:
            hs = set(holders[v])
            if not hs:
                continue
            start = next(iter(hs))
            seen = {start}
            queue = deque([start])
            while queue:
                for y in adj[queue.popleft()]:
                    if y in hs and y not in seen:
                        seen.add(y)
                        queue.append(y)
            if seen != hs:
                problems.append(f"bags holding vertex {v} are not connected")
    return ValidationReport(not problems, problems)


def td_independence_number(g: Graph, td: TreeDecomposition) -> int:
    report = validate_tree_decomposition(g, td)
    if not report:
        raise InputError("invalid tree decomposition: " + "; ".join(report.problems[:5]))
    return max((stability_number(g, b) for _, b in td.nodes), default=0)


def decomposition_stats(g: Graph, td: TreeDecomposition, bound: float = 0.0, **extra) -> DecompositionStats:
    return DecompositionStats(
        width=max((len(b) for _, b in td.nodes), default=0) - 1,
        independence_number=td_independence_number(g, td),
        bag_count=len(td),
        bound=bound,
        **extra,
    )


# ----------------------------------------------------------------------
# chordal graphs
# ----------------------------------------------------------------------

def perfect_elimination_order(g: Graph) -> Optional[List[int]]:
    """A perfect elimination ordering, or None when ``g`` is not chordal.

    Maximum cardinality search visits vertices in reverse elimination order.
    """
    weight = {v: 0 for v in g.vertices}
    visited: List[int] = []
    done = set()
    for _ in range(g.n):
        v = max((u for u in g.vertices if u not in done), key=lambda u: (weight[u], -u))
        done.add(v)
        visited.append(v)
        for u in g.neighbors(v):
            if u not in done:
                weight[u] += 1
    order = visited[::-1]
    pos = {v: i for i, v in enumerate(order)}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        if later:
            first = min(later, key=pos.__getitem__)
            if any(u != first and u not in g.neighbors(first) for u in later):
                return None
    return order


def clique_tree(g: Graph) -> TreeDecomposition:
    """Decomposition of a chordal graph whose bags are cliques.

    Bag of v is v with its later neighbours in a perfect elimination
    ordering; its parent is the bag of the earliest such neighbour.
    Bags contained in their parent are merged away.
    """
    order = perfect_elimination_order(g)
    if order is None:
        raise InputError("graph is not chordal")
    if not order:
        return TreeDecomposition.make([frozenset()])
    pos = {v: i for i, v in enumerate(order)}
    bag = {}
    parent = {}
    for v in order:
        later = [u for u in g.neighbors(v) if pos[u] > pos[v]]
        bag[v] = frozenset(later) | {v}
        parent[v] = min(later, key=pos.__getitem__) if later else None
    # merge a bag into its parent when it adds nothing
    alias = {}

    def rep(v):
        while v in alias:
            v = alias[v]
        return v

    for v in order:
        p = parent[v]
        if p is not None and bag[v] <= bag[p]:
            alias[v] = p
    kept = [v for v in order if v not in alias]
    ids = {v: i for i, v in enumerate(kept)}
    edges = []
    roots = []
    for v in kept:
        p = parent[v]
        if p is None:
            roots.append(v)
        else:
            edges.append((ids[rep(p)], ids[v]))
    for a, b in zip(roots, roots[1:]):
        edges.append((ids[a], ids[b]))
    return TreeDecomposition.make({ids[v]: bag[v] for v in kept}, edges)


# ----------------------------------------------------------------------
# separator-driven construction
# ----------------------------------------------------------------------

@dataclass
class BuildLog:
    cut_alphas: List[int] = field(default_factory=list)
    seed_alphas: List[int] = field(default_factory=list)
    stuck_fixes: int = 0
    oracle_calls: int = 0

    @property
    def realized(self) -> int:
        return max(self.cut_alphas, default=0)


SeparatorOracle = Callable[[Graph, Dict[int, Fraction]], object]


def _cut_of(result) -> frozenset:
    return frozenset(result.cut if hasattr(result, "cut") else result)


def build_tree_decomposition(g: Graph, sep_oracle: SeparatorOracle, c=Fraction(1, 2),
                             d_cap: Optional[int] = None, log: Optional[BuildLog] = None) -> TreeDecomposition:
    """Decomposition from a balanced separator oracle.

    Each call holds a seed set Z; the separator X for uniform weight on a
    maximum stable subset of Z splits the graph, every component V_i is
    recursed on together with X under seed (Z & V_i) | X, and the node's bag
    is Z | X.  With no seed the weight is uniform on all vertices.  When X
    leaves a single component and adds nothing to Z, the smallest vertex
    outside Z joins the seed so the recursion always progresses.
    """
    c = Fraction(c)
    if not Fraction(1, 2) <= c < 1:
        raise InputError("c must lie in [1/2, 1)")
    log = BuildLog() if log is None else log
    bags: Dict[int, frozenset] = {}
    edges: List[Tuple[int, int]] = []
    seed_cap = None if d_cap is None else 2 * d_cap / (1 - c)

    # explicit stack: (subgraph, seed, parent node)
    stack = [(g, frozenset(), None)]
    while stack:
        h, z, parent = stack.pop()
        node = len(bags)
        if parent is not None:
            edges.append((parent, node))
        verts = frozenset(h.vertices)
        x = frozenset()
        children: List[frozenset] = []
        while z != verts:
            if z:
                seed = maximum_stable_set(h, z)
                w = uniform_weights(h, seed)
            else:
                w = uniform_weights(h)
            log.oracle_calls += 1
            x = _cut_of(sep_oracle(h, w))
            if not x <= verts:
                raise InvariantViolation(f"oracle cut leaves the subgraph on {sorted(verts)[:8]}...")
            if not is_balanced_separator(h, w, x, c):
                raise InvariantViolation(f"oracle cut is not ({c})-balanced on a subgraph of {h.n} vertices")
            ax = stability_number(h, x)
            if d_cap is not None and ax > d_cap:
                raise InvariantViolation(f"oracle cut has alpha {ax} > {d_cap}")
            log.cut_alphas.append(ax)
            children = components(h, x)
            if len(children) == 1 and x <= z:
                log.stuck_fixes += 1
                z = z | {min(verts - z)}
                x = frozenset()
                children = []
                continue
            break
        az = stability_number(h, z)
        log.seed_alphas.append(az)
        if seed_cap is not None and az > seed_cap:
            raise InvariantViolation(f"seed alpha {az} exceeds {seed_cap}")
        bags[node] = z | x
        for comp in reversed(children):
            stack.append((h.induced(comp | x), (z & comp) | x, node))
    return TreeDecomposition.make(bags, edges)


def check_bag_bound(g: Graph, td: TreeDecomposition, log: BuildLog, c=Fraction(1, 2)) -> int:
    """Verify bag and seed stability against the realised cut stability; return max bag alpha."""
    c = Fraction(c)
    d = max(log.realized, 1)
    report = validate_tree_decomposition(g, td)
    if not report:
        raise InvariantViolation("decomposition invalid: " + "; ".join(report.problems[:5]))
    worst = 0
    for i, bag in td.nodes:
        a = stability_number(g, bag)
        worst = max(worst, a)
        if a > (3 - c) / (1 - c) * d:
            raise InvariantViolation(f"bag {i} has alpha {a} > {(3 - c) / (1 - c) * d}")
    for a in log.seed_alphas:
        if a > 2 / (1 - c) * d:
            raise InvariantViolation(f"seed alpha {a} > {2 / (1 - c) * d}")
    return worst


# ----------------------------------------------------------------------
# pipeline
# ----------------------------------------------------------------------

def theoretical_bound(n: int, d: int) -> float:
    """165 C(d) (log2 n)^2 with C(d) = 100 d^2."""
    return 165 * 100 * d * d * (math.log2(n) ** 2 if n > 1 else 0.0)


def stability_oracle(n: int, d_values: Sequence[int], bad_cap: Optional[int] = None,
                     used: Optional[List[int]] = None) -> SeparatorOracle:
    """Balanced separator oracle trying each d in turn (smallest first).

    ``n`` fixes L and r for the whole run, since breakability is inherited by
    induced subgraphs.
    """
    cfgs = [BreakabilityConfig.for_graph(n, d, bad_cap=bad_cap) for d in d_values]

    def oracle(h: Graph, w):
        last = None
        for cfg in cfgs:
            try:
                res = domination_to_stability(h, w, cfg)
            except ResourceError as exc:
                last = exc
                continue
            if used is not None:
                used.append(cfg.d)
            return res
        raise ResourceError(f"d-search failed on a subgraph of {h.n} vertices: {last}")

    return oracle


def tree_alpha_pipeline(g: Graph, cfg: Optional[BreakabilityConfig] = None, d_max: int = DEFAULT_D,
                        bad_cap: Optional[int] = None, limit: int = DEFAULT_LIMIT,
                        log: Optional[BuildLog] = None) -> Tuple[TreeDecomposition, DecompositionStats]:
    """Decompose a 3PC-free graph with domination_to_stability as the oracle at c = 1/2.

    With ``cfg`` its d is used as is; otherwise each oracle call takes the
    smallest d in 1..d_max that works.
    """
    if g.n <= 1:
        td = TreeDecomposition.make([frozenset(g.vertices)])
        return td, decomposition_stats(g, td, 0.0, d=0)
    det = detect_3pc(g, limit=limit)
    if det.witness is not None:
        raise InputError(f"graph is not 3PC-free: contains a {det.witness.kind}")
    log = BuildLog() if log is None else log
    used: List[int] = []
    if cfg is not None:
        d_values, cap = [cfg.d], cfg.bad_cap
    else:
        d_values, cap = list(range(1, d_max + 1)), bad_cap
    oracle = stability_oracle(g.n, d_values, cap, used)
    td = build_tree_decomposition(g, oracle, Fraction(1, 2), log=log)
    check_bag_bound(g, td, log)
    d = max(used, default=d_values[0])
    stats = decomposition_stats(g, td, theoretical_bound(g.n, d), realized_cut_alpha=log.realized, d=d,
                                certified_3pc_free=det.exhaustive)
    return td, stats


# ----------------------------------------------------------------------
# maximum weight independent set over a decomposition
# ----------------------------------------------------------------------

def mwis_td(g: Graph, w: Mapping[int, object], td: TreeDecomposition,
            budget: int = DP_STATE_BUDGET) -> Tuple[frozenset, Fraction]:
    """Exact maximum weight stable set by dynamic programming over the bags.

    States at a node are the stable subsets of its bag.  A child reports,
    for each possible trace on the shared vertices, its best extension.
    Values carry the same additive tie-break as the brute-force oracle.
    """
    report = validate_tree_decomposition(g, td)
    if not report:
        raise InputError("invalid tree decomposition: " + "; ".join(report.problems[:5]))
    weights = make_weights(g, w)
    order = {v: i for i, v in enumerate(g.vertices)}
    if not td.nodes:
        return frozenset(), Fraction(0)
    bags = td.bags()
    adj = defaultdict(list)
    for a, b in td.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    root = td.nodes[0][0]
    parent = {root: None}
    seq = [root]
    for t in seq:
        for y in sorted(adj[t]):
            if y not in parent:
                parent[y] = t
                seq.append(y)

    def value(s):
        return (sum((weights[v] for v in s), Fraction(0)), tiebreak_key(order, s))

    def sub(a, b):
        return (a[0] - b[0], a[1] - b[1])

    def add(a, b):
        return (a[0] + b[0], a[1] + b[1])

    # table[t][S] = best value in the subtree of t with trace S on bag(t)
    table: Dict[int, Dict[frozenset, tuple]] = {}
    # up[t][P] = (gain, S) best child state with trace P on the parent's bag
    up: Dict[int, Dict[frozenset, tuple]] = {}
    for t in reversed(seq):
        bag = bags[t]
        try:
            states = stable_subsets(g, bag, budget)
        except ResourceError:
            raise ResourceError(f"bag {t} ({len(bag)} vertices) has more than {budget} stable subsets") from None
        kids = [y for y in adj[t] if parent.get(y) == t]
        tab = {}
        for s in states:
            val = value(s)
            for y in kids:
                val = add(val, up[y][s & bags[y]][0])
            tab[s] = val
        table[t] = tab
        p = parent[t]
        if p is not None:
            shared = bag & bags[p]
            best: Dict[frozenset, tuple] = {}
            for s, val in tab.items():
                key = s & shared
                gain = sub(val, value(key))
                if key not in best or gain > best[key][0]:
                    best[key] = (gain, s)
            up[t] = best
        # children tables are no longer needed once folded upward
        for y in kids:
            table.pop(y, None)

    s_root, v_root = max(table[root].items(), key=lambda kv: kv[1])
    chosen = set(s_root)
    pick = {root: s_root}
    for t in seq[1:]:
        s = up[t][pick[parent[t]] & bags[t]][1]
        pick[t] = s
        chosen |= s
    return frozenset(chosen), v_root[0]
