"""Simple undirected graphs with stable vertex ids, plus the exact oracles.

Vertex ids are arbitrary integers and survive induced-subgraph operations, so
a cut computed inside ``g.induced(xs)`` can be applied to ``g`` verbatim.
Internally each graph also keeps a bitmask view (bit ``i`` is the ``i``-th
smallest id) that the hot loops in this package work on.
"""

from __future__ import annotations

import os
from collections import deque
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple

from .errors import InputError, ResourceError

VertexSet = frozenset
WeightFunction = Dict[int, Fraction]

INFINITY = float("inf")
DEFAULT_WORK_LIMIT = 20_000_000
ORACLE_LIMIT = 22


def work_limit() -> int:
    """Node-expansion cap for exact searches (``TREEALPHA_WORK_LIMIT``)."""
    raw = os.environ.get("TREEALPHA_WORK_LIMIT")
    if not raw:
        return DEFAULT_WORK_LIMIT
    try:
        value = int(raw)
    except ValueError:
        raise InputError(f"TREEALPHA_WORK_LIMIT must be an integer, got {raw!r}")
    if value <= 0:
        raise InputError("TREEALPHA_WORK_LIMIT must be positive")
    return value


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


class Graph:
    """Immutable simple graph.

    >>> g = Graph(range(3), [(0, 1), (1, 2)])
    >>> sorted(g.neighbors(1))
    [0, 2]
    """

    __slots__ = ("_vertices", "_nbrs", "_index", "_adj", "_full")

    def __init__(self, vertices: Iterable[int] = (), edges: Iterable[Tuple[int, int]] = ()) -> None:
        vs = sorted({int(v) for v in vertices})
        nbrs: Dict[int, set] = {v: set() for v in vs}
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if u not in nbrs or v not in nbrs:
                raise InputError(f"edge {u}-{v} uses an unknown vertex")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self._set_up(vs, {v: frozenset(s) for v, s in nbrs.items()})

    def _set_up(self, vs, nbrs) -> None:
        self._vertices = tuple(vs)
        self._nbrs = nbrs
        self._index = {v: i for i, v in enumerate(vs)}
        idx = self._index
        adj = []
        for v in vs:
            m = 0
            for u in nbrs[v]:
                m |= 1 << idx[u]
            adj.append(m)
        self._adj = tuple(adj)
        self._full = (1 << len(vs)) - 1

    @classmethod
    def _from_parts(cls, vs, nbrs) -> "Graph":
        g = cls.__new__(cls)
        g._set_up(vs, nbrs)
        return g

    @classmethod
    def from_adjacency(cls, adjacency: Mapping[int, Iterable[int]]) -> "Graph":
        edges = [(u, v) for u, vs in adjacency.items() for v in vs]
        return cls(adjacency.keys(), edges)

    # -- basic accessors -------------------------------------------------
    @property
    def vertices(self) -> Tuple[int, ...]:
        return self._vertices

    @property
    def n(self) -> int:
        return len(self._vertices)

    def __len__(self) -> int:
        return len(self._vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self._vertices)

    def __contains__(self, v: object) -> bool:
        return v in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._vertices == other._vertices and self._nbrs == other._nbrs

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self.edges())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    def neighbors(self, v: int) -> frozenset:
        try:
            return self._nbrs[v]
        except KeyError:
            raise InputError(f"unknown vertex {v!r}") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def edges(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in self._vertices for v in sorted(self._nbrs[u]) if u < v]

    def edge_count(self) -> int:
        return sum(len(s) for s in self._nbrs.values()) // 2

    def check(self, xs: Iterable[int]) -> frozenset:
        """Return ``xs`` as a frozenset, raising on unknown ids."""
        xs = frozenset(xs)
        bad = [x for x in xs if x not in self._index]
        if bad:
            raise InputError(f"unknown vertex ids {sorted(bad)}")
        return xs

    # -- subgraphs -------------------------------------------------------
    def induced(self, xs: Iterable[int]) -> "Graph":
        keep = self.check(xs)
        vs = [v for v in self._vertices if v in keep]
        return Graph._from_parts(vs, {v: self._nbrs[v] & keep for v in vs})

    def remove(self, xs: Iterable[int]) -> "Graph":
        drop = self.check(xs)
        return self.induced(v for v in self._vertices if v not in drop)

    # -- bitmask view ----------------------------------------------------
    def mask(self, xs: Iterable[int]) -> int:
        idx = self._index
        m = 0
        for x in xs:
            try:
                m |= 1 << idx[x]
            except KeyError:
                raise InputError(f"unknown vertex {x!r}") from None
        return m

    def members(self, mask: int) -> frozenset:
        vs = self._vertices
        return frozenset(vs[i] for i in iter_bits(mask))

    def bit(self, v: int) -> int:
        return 1 << self._index[v]

    @property
    def adj_masks(self) -> Tuple[int, ...]:
        return self._adj

    @property
    def full_mask(self) -> int:
        return self._full

    # -- small predicates --------------------------------------------------
    def is_clique(self, xs: Iterable[int]) -> bool:
        xs = list(self.check(xs))
        return all(b in self._nbrs[a] for a, b in combinations(xs, 2))

    def is_stable(self, xs: Iterable[int]) -> bool:
        xs = list(self.check(xs))
        return not any(b in self._nbrs[a] for a, b in combinations(xs, 2))

    def anticomplete(self, xs: Iterable[int], ys: Iterable[int]) -> bool:
        ys = frozenset(ys)
        return all(not (self._nbrs[x] & ys) for x in xs)


# ----------------------------------------------------------------------
# neighbourhoods, components, distances
# ----------------------------------------------------------------------

def neighborhood(g: Graph, x: Iterable[int], closed: bool = False) -> frozenset:
    x = g.check(x)
    out = set()
    for v in x:
        out |= g.neighbors(v)
    if closed:
        return frozenset(out | x)
    return frozenset(out - x)


def _component_masks(adj, mask: int) -> List[int]:
    comps = []
    while mask:
        low = mask & -mask
        comp = low
        frontier = low
        while frontier:
            grow = 0
            for i in iter_bits(frontier):
                grow |= adj[i]
            grow &= mask & ~comp
            comp |= grow
            frontier = grow
        comps.append(comp)
        mask &= ~comp
    return comps


def component_masks(g: Graph, mask: int) -> List[int]:
    """Components of ``g[mask]`` as masks, ordered by lowest vertex."""
    return _component_masks(g.adj_masks, mask)


def components(g: Graph, removed: Iterable[int] = ()) -> List[frozenset]:
    """Components of ``g \\ removed``, ordered by their minimum vertex id."""
    rest = g.full_mask & ~g.mask(g.check(removed))
    return [g.members(c) for c in component_masks(g, rest)]


def is_connected(g: Graph, xs: Optional[Iterable[int]] = None) -> bool:
    mask = g.full_mask if xs is None else g.mask(g.check(xs))
    return len(component_masks(g, mask)) <= 1


def distance_between_sets(g: Graph, x: Iterable[int], y: Iterable[int]):
    """Edge count of a shortest path from ``x`` to ``y``; ``inf`` if none."""
    x, y = g.check(x), g.check(y)
    if not x or not y:
        raise InputError("distance needs two nonempty sets")
    if x & y:
        return 0
    seen = set(x)
    queue = deque((v, 0) for v in sorted(x))
    while queue:
        v, d = queue.popleft()
        for u in g.neighbors(v):
            if u in y:
                return d + 1
            if u not in seen:
                seen.add(u)
                queue.append((u, d + 1))
    return INFINITY


def distances_from(g: Graph, source: Iterable[int], within: Optional[Iterable[int]] = None) -> Dict[int, int]:
    """BFS distances from a vertex set, optionally restricted to ``within``."""
    allowed = None if within is None else frozenset(within)
    dist = {v: 0 for v in source}
    queue = deque(sorted(dist))
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in dist and (allowed is None or u in allowed):
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def separates(g: Graph, cut: Iterable[int], a: Iterable[int], b: Iterable[int]) -> bool:
    cut, a, b = g.check(cut), g.check(a), g.check(b)
    if a & cut or b & cut:
        raise InputError("separated sides must be disjoint from the cut")
    for comp in components(g, cut):
        if comp & a and comp & b:
            return False
    return True


def full_components(g: Graph, x: Iterable[int]) -> List[frozenset]:
    x = g.check(x)
    return [d for d in components(g, x) if neighborhood(g, d) == x]


def is_minimal_separator(g: Graph, x: Iterable[int]) -> bool:
    return len(full_components(g, x)) >= 2


# ----------------------------------------------------------------------
# stability number
# ----------------------------------------------------------------------

class _Budget:
    __slots__ = ("left", "limit")

    def __init__(self, limit: int) -> None:
        self.left = limit
        self.limit = limit

    def spend(self) -> None:
        self.left -= 1
        if self.left < 0:
            raise ResourceError(f"stability search exceeded work limit {self.limit}")


def _clique_cover_bound(adj, mask: int) -> int:
    cliques: List[int] = []
    for i in iter_bits(mask):
        for k, c in enumerate(cliques):
            if c & ~adj[i] == 0:
                cliques[k] = c | (1 << i)
                break
        else:
            cliques.append(1 << i)
    return len(cliques)


def _mis(adj, mask: int, lower: int, budget: _Budget) -> int:
    """Maximum stable set of ``adj[mask]`` when it beats ``lower``.

    If no stable set larger than ``lower`` exists, some stable set (possibly
    smaller than the optimum) is returned; callers only compare sizes.
    """
    budget.spend()
    taken = 0
    # simplicial vertices always belong to some maximum stable set
    changed = True
    while changed and mask:
        changed = False
        for i in iter_bits(mask):
            if not (mask >> i) & 1:
                continue
            nb = adj[i] & mask
            simplicial = True
            rest = nb
            while rest:
                low = rest & -rest
                j = low.bit_length() - 1
                rest ^= low
                if (nb & ~low) & ~adj[j]:
                    simplicial = False
                    break
            if simplicial:
                taken |= 1 << i
                mask &= ~(nb | (1 << i))
                changed = True
    if not mask:
        return taken
    need = lower - popcount(taken)
    if _clique_cover_bound(adj, mask) <= need:
        return taken
    comps = _component_masks(adj, mask)
    if len(comps) > 1:
        bounds = [_clique_cover_bound(adj, c) for c in comps]
        total_ub = sum(bounds)
        result = taken
        for c, ub in zip(comps, bounds):
            others = total_ub - ub
            result |= _mis(adj, c, need - others, budget)
        return result
    pivot = max(iter_bits(mask), key=lambda i: (popcount(adj[i] & mask), -i))
    with_pivot = (1 << pivot) | _mis(adj, mask & ~(adj[pivot] | (1 << pivot)), need - 1, budget)
    best = with_pivot
    without = _mis(adj, mask & ~(1 << pivot), max(need, popcount(best)), budget)
    if popcount(without) > popcount(best):
        best = without
    return taken | best


def maximum_stable_set(g: Graph, x: Optional[Iterable[int]] = None, limit: Optional[int] = None) -> frozenset:
    """A maximum stable set of ``g[x]`` (exact, branch and bound)."""
    mask = g.full_mask if x is None else g.mask(g.check(x))
    budget = _Budget(work_limit() if limit is None else limit)
    return g.members(_mis(g.adj_masks, mask, -1, budget))


def stability_number(g: Graph, x: Optional[Iterable[int]] = None, limit: Optional[int] = None) -> int:
    """alpha(g[x]); raises :class:`ResourceError` past the work limit."""
    return len(maximum_stable_set(g, x, limit))


def stable_subsets(g: Graph, x: Iterable[int], budget: Optional[int] = None) -> List[frozenset]:
    """Every stable subset of ``x`` (the empty set included).

    Enumerated by branch-and-prune, so the cost tracks the number of stable
    sets rather than ``2^|x|``.
    """
    order = sorted(g.check(x))
    nbrs = [g.neighbors(v) for v in order]
    out: List[frozenset] = []
    cap = budget

    def rec(i: int, chosen: List[int], blocked: frozenset) -> None:
        if i == len(order):
            out.append(frozenset(chosen))
            if cap is not None and len(out) > cap:
                raise ResourceError(f"more than {cap} stable subsets")
            return
        v = order[i]
        if v not in blocked:
            chosen.append(v)
            rec(i + 1, chosen, blocked | nbrs[i])
            chosen.pop()
        rec(i + 1, chosen, blocked)

    rec(0, [], frozenset())
    return out


# ----------------------------------------------------------------------
# weights
# ----------------------------------------------------------------------

def as_fraction(value) -> Fraction:
    if isinstance(value, float):
        raise InputError("weights must be exact (int, Fraction or 'p/q' string), not float")
    try:
        q = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad weight {value!r}: {exc}") from None
    if q < 0:
        raise InputError(f"negative weight {value!r}")
    return q


def make_weights(g: Graph, weights: Mapping[int, object]) -> WeightFunction:
    g.check(weights.keys())
    return {v: as_fraction(weights.get(v, 0)) for v in g.vertices}


def uniform_weights(g: Graph, support: Optional[Iterable[int]] = None) -> WeightFunction:
    support = frozenset(g.vertices if support is None else g.check(support))
    if not support:
        raise InputError("uniform weights need a nonempty support")
    share = Fraction(1, len(support))
    return {v: (share if v in support else Fraction(0)) for v in g.vertices}


def total_weight(w: Mapping[int, Fraction], xs: Iterable[int]) -> Fraction:
    return sum((w.get(x, Fraction(0)) for x in xs), Fraction(0))


def is_normal(g: Graph, w: Mapping[int, Fraction]) -> bool:
    return total_weight(w, g.vertices) == 1


def normalize(g: Graph, w: Mapping[int, Fraction]) -> WeightFunction:
    """Rescale ``w`` restricted to ``g`` so it sums to one."""
    total = total_weight(w, g.vertices)
    if total == 0:
        raise InputError("cannot normalise a zero weight function")
    return {v: Fraction(w.get(v, 0)) / total for v in g.vertices}


# ----------------------------------------------------------------------
# maximum weight stable set, brute force
# ----------------------------------------------------------------------

def tiebreak_key(order: Mapping[int, int], xs: Iterable[int]) -> int:
    """Secondary score for equal-weight stable sets.

    Higher is preferred: the set containing the smallest vertex on which two
    candidates differ wins.  The score is additive, so the tree DP and the
    brute force agree on ties.
    """
    n = len(order)
    return sum(1 << (n - 1 - order[x]) for x in xs)


def mwis_bruteforce(g: Graph, w: Mapping[int, object], limit: int = ORACLE_LIMIT) -> Tuple[frozenset, Fraction]:
    """Maximum weight stable set by exhaustive enumeration (oracle)."""
    if g.n > limit:
        raise ResourceError(f"brute-force MWIS limited to {limit} vertices, got {g.n}")
    weights = make_weights(g, w)
    order = {v: i for i, v in enumerate(g.vertices)}
    vs = g.vertices
    suffix = [Fraction(0)] * (len(vs) + 1)
    for i in range(len(vs) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + weights[vs[i]]
    best = [(Fraction(0), tiebreak_key(order, ())), frozenset()]

    def rec(i: int, chosen: List[int], blocked: frozenset, acc: Fraction) -> None:
        if acc + suffix[i] < best[0][0]:
            return
        if i == len(vs):
            key = (acc, tiebreak_key(order, chosen))
            if key > best[0]:
                best[0] = key
                best[1] = frozenset(chosen)
            return
        v = vs[i]
        if v not in blocked:
            chosen.append(v)
            rec(i + 1, chosen, blocked | g.neighbors(v), acc + weights[v])
            chosen.pop()
        rec(i + 1, chosen, blocked, acc)

    rec(0, [], frozenset(), Fraction(0))
    return best[1], best[0][0]
