"""Exact desk-scale detection of holes, 3PCs, useful wheels and connectors.

The 3PC search enumerates anchor objects (a non-adjacent pair for thetas, an
apex plus triangle for pyramids, two triangles for generalized prisms) and
then looks for three induced paths whose interiors avoid each other.  All of
it runs on the bitmask view of :class:`~treealpha.graph.Graph`.

Graphs larger than the exactness limit are first split along clique cutsets:
a 3PC has no clique cutset, so every induced 3PC lives inside one piece.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import InputError, NotFound, ResourceError
from .graph import Graph, component_masks, is_connected, iter_bits, neighborhood, popcount

DEFAULT_LIMIT = 14
DEFAULT_BUDGET = 5_000_000

THETA = "theta"
PYRAMID = "pyramid"
PRISM = "prism"
PINCHED_PRISM = "pinched-prism"
KINDS = (THETA, PYRAMID, PRISM, PINCHED_PRISM)


@dataclass(frozen=True)
class ThreePathConfig:
    """A theta, pyramid, prism or pinched prism found in a host graph.

    ``paths`` hold full vertex sequences.  For a theta every path runs from
    ``ends[0]`` to ``ends[1]``; for a pyramid ``ends = (apex, base)`` and
    path ``i`` ends at ``base[i]``; for generalized prisms ``ends`` are the
    two triangles and path ``i`` joins ``ends[0][i]`` to ``ends[1][i]`` (the
    pinched vertex gives a one-vertex path).
    """

    kind: str
    paths: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]
    ends: tuple

    @property
    def vertices(self) -> frozenset:
        return frozenset(v for p in self.paths for v in p)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "ends": _listify(self.ends), "paths": [list(p) for p in self.paths]}


def _listify(x):
    if isinstance(x, tuple):
        return [_listify(y) for y in x]
    return x


@dataclass(frozen=True)
class Sector:
    path: Tuple[int, ...]

    @property
    def ends(self) -> Tuple[int, int]:
        return self.path[0], self.path[-1]

    @property
    def interior(self) -> Tuple[int, ...]:
        return self.path[1:-1]

    @property
    def long(self) -> bool:
        return len(self.path) > 2


@dataclass(frozen=True)
class UsefulWheel:
    hole: Tuple[int, ...]
    hub: int
    sectors: Tuple[Sector, ...]

    @property
    def long_sectors(self) -> List[Sector]:
        return [s for s in self.sectors if s.long]


@dataclass(frozen=True)
class ConnectorWitness:
    """Minimal connected subgraph meeting three neighbourhoods.

    ``shape`` is ``path-through``, ``branch-vertex`` or ``branch-triangle``;
    ``structure`` names the path, branch vertex or triangle that realises it.
    """

    shape: str
    vertices: frozenset
    structure: Dict[str, object] = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Detection:
    witness: Optional[ThreePathConfig]
    exhaustive: bool
    pieces: int = 1


class _Budget:
    def __init__(self, limit: Optional[int]) -> None:
        self.left = limit

    def spend(self, k: int = 1) -> None:
        if self.left is None:
            return
        self.left -= k
        if self.left < 0:
            raise ResourceError("3PC search budget exhausted")


# ----------------------------------------------------------------------
# holes
# ----------------------------------------------------------------------

def is_hole(g: Graph, cycle: Sequence[int]) -> bool:
    cyc = list(cycle)
    if len(cyc) < 4 or len(set(cyc)) != len(cyc) or any(v not in g for v in cyc):
        return False
    sub = g.induced(cyc)
    k = len(cyc)
    for i, v in enumerate(cyc):
        if sub.neighbors(v) != frozenset((cyc[i - 1], cyc[(i + 1) % k])):
            return False
    return True


def is_induced_path(g: Graph, path: Sequence[int]) -> bool:
    p = list(path)
    if not p or len(set(p)) != len(p) or any(v not in g for v in p):
        return False
    for i, v in enumerate(p):
        want = set()
        if i > 0:
            want.add(p[i - 1])
        if i + 1 < len(p):
            want.add(p[i + 1])
        if g.neighbors(v) & set(p) != want:
            return False
    return True


def iter_holes(g: Graph, min_len: int = 4, max_len: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """Every hole of length in ``[min_len, max_len]`` exactly once.

    A hole is reported starting at its smallest vertex, oriented so that the
    second vertex is smaller than the last.
    """
    if min_len < 4:
        raise InputError("holes have length at least four")
    A = g.adj_masks
    vs = g.vertices
    n = g.n
    cap = n if max_len is None else max_len

    def rec(s: int, seq: List[int], pmask: int) -> Iterator[Tuple[int, ...]]:
        c = seq[-1]
        higher = ~((1 << (s + 1)) - 1)
        inner = pmask & ~(1 << c) & ~(1 << s)
        for x in iter_bits(A[c] & higher & ~pmask):
            if A[x] & inner:
                continue
            if len(seq) > 1 and A[x] >> s & 1:
                length = len(seq) + 1
                if len(seq) >= 2 and min_len <= length <= cap and seq[1] < x:
                    yield tuple(vs[i] for i in seq + [x])
                continue
            if len(seq) + 1 < cap:
                yield from rec(s, seq + [x], pmask | (1 << x))

    for s in range(n):
        yield from rec(s, [s], 1 << s)


def find_hole(g: Graph, min_len: int = 4) -> Optional[Tuple[int, ...]]:
    return next(iter_holes(g, min_len), None)


# ----------------------------------------------------------------------
# three-path configurations
# ----------------------------------------------------------------------

def _shortest_interior(A, s: int, t: int, allowed: int) -> Optional[List[int]]:
    """Interior of a shortest s-t path through ``allowed`` (s, t not adjacent)."""
    parent = {}
    frontier = A[s] & allowed
    seen = frontier
    for x in iter_bits(frontier):
        parent[x] = None
    while frontier:
        nxt = 0
        for x in iter_bits(frontier):
            if A[x] >> t & 1:
                seq = [x]
                while parent[seq[-1]] is not None:
                    seq.append(parent[seq[-1]])
                seq.reverse()
                return seq
            new = A[x] & allowed & ~seen
            for y in iter_bits(new):
                parent[y] = x
            seen |= new
            nxt |= new
        frontier = nxt
    return None


def _interiors(A, s: int, t: int, allowed: int, budget: _Budget, first_above: int = -1) -> Iterator[List[int]]:
    """Interiors of induced s-t paths (length >= 2) running through ``allowed``."""

    def rec(c: int, seq: List[int], pmask: int):
        budget.spend()
        older = pmask & ~(1 << c)
        cand = A[c] & allowed & ~pmask
        if c == s and first_above >= 0:
            cand &= ~((1 << (first_above + 1)) - 1)
        for x in iter_bits(cand):
            if A[x] & older:
                continue
            if A[x] >> t & 1:
                yield seq + [x]
            else:
                yield from rec(x, seq + [x], pmask | (1 << x))

    yield from rec(s, [], 1 << s)


def _neigh_mask(A, mask: int) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= A[i]
    return out


def _solve_paths(A, n: int, specs, anchors: int, budget: _Budget, ordered: bool = False):
    """Find interiors for each path spec ``(s, t, mode)``.

    ``mode`` is ``"edge"`` (s-t is the whole path), ``"point"`` (s == t) or
    ``"long"`` (non-empty interior required).  Interiors must avoid the
    anchors, see no anchor other than their own ends, and be pairwise
    disjoint and anticomplete.  Returns the interiors or ``None``.
    """
    full = (1 << n) - 1
    base = full & ~anchors
    allowed = []
    for s, t, mode in specs:
        if mode != "long":
            allowed.append(0)
            continue
        own = (1 << s) | (1 << t)
        ok = 0
        for x in iter_bits(base):
            if not (A[x] & anchors & ~own):
                ok |= 1 << x
        allowed.append(ok)
    longs = [i for i, (_, _, mode) in enumerate(specs) if mode == "long"]
    for i in longs:
        s, t, _ = specs[i]
        if _shortest_interior(A, s, t, allowed[i]) is None:
            return None
    result: List[List[int]] = [[] for _ in specs]

    def rec(k: int, blocked: int, prev_first: int) -> bool:
        if k == len(longs):
            return True
        i = longs[k]
        s, t, _ = specs[i]
        room = allowed[i] & ~blocked
        if k == len(longs) - 1:
            budget.spend()
            seq = _shortest_interior(A, s, t, room)
            if seq is None:
                return False
            result[i] = seq
            return True
        above = prev_first if ordered else -1
        for seq in _interiors(A, s, t, room, budget, above):
            m = 0
            for x in seq:
                m |= 1 << x
            if rec(k + 1, blocked | m | _neigh_mask(A, m), seq[0]):
                result[i] = seq
                return True
        return False

    if rec(0, 0, -1):
        return result
    return None


def _triangles(A, n: int) -> List[Tuple[int, int, int]]:
    out = []
    for i in range(n):
        for j in iter_bits(A[i] & ~((1 << (i + 1)) - 1)):
            for k in iter_bits(A[i] & A[j] & ~((1 << (j + 1)) - 1)):
                out.append((i, j, k))
    return out


def _search_theta(A, n, budget):
    for a in range(n):
        for b in range(a + 1, n):
            if A[a] >> b & 1:
                continue
            if popcount(A[a] & ~A[b]) + popcount(A[a] & A[b]) < 3:
                continue
            anchors = (1 << a) | (1 << b)
            specs = [(a, b, "long")] * 3
            found = _solve_paths(A, n, specs, anchors, budget, ordered=True)
            if found:
                return THETA, [[a] + p + [b] for p in found], (a, b)
    return None


def _search_pyramid(A, n, triangles, budget):
    for a in range(n):
        for tri in triangles:
            if a in tri:
                continue
            touching = [b for b in tri if A[a] >> b & 1]
            if len(touching) > 1:
                continue
            anchors = (1 << a) | (1 << tri[0]) | (1 << tri[1]) | (1 << tri[2])
            specs = [(a, b, "edge" if b in touching else "long") for b in tri]
            found = _solve_paths(A, n, specs, anchors, budget)
            if found:
                return PYRAMID, [[a] + p + [b] for p, b in zip(found, tri)], (a, tri)
    return None


def _search_prism(A, n, triangles, budget):
    for t1, t2 in combinations(triangles, 2):
        common = set(t1) & set(t2)
        if len(common) > 1:
            continue
        if common:
            c = common.pop()
            r1 = [x for x in t1 if x != c]
            r2 = [x for x in t2 if x != c]
            if any(A[x] >> y & 1 for x in r1 for y in r2):
                continue
            anchors = 0
            for x in t1 + t2:
                anchors |= 1 << x
            for perm in (r2, r2[::-1]):
                specs = [(r1[0], perm[0], "long"), (r1[1], perm[1], "long")]
                found = _solve_paths(A, n, specs, anchors, budget)
                if found:
                    paths = [[c]] + [[x] + p + [y] for (x, y, _), p in zip(specs, found)]
                    return PINCHED_PRISM, paths, ((c, r1[0], r1[1]), (c, perm[0], perm[1]))
            continue
        anchors = 0
        for x in t1 + t2:
            anchors |= 1 << x
        for perm in permutations(t2):
            if any(A[x] >> y & 1 for i, x in enumerate(t1) for j, y in enumerate(perm) if i != j):
                continue
            specs = [(x, y, "edge" if A[x] >> y & 1 else "long") for x, y in zip(t1, perm)]
            found = _solve_paths(A, n, specs, anchors, budget)
            if found:
                paths = [[x] + p + [y] for (x, y, _), p in zip(specs, found)]
                return PRISM, paths, (t1, tuple(perm))
    return None


def _search(g: Graph, budget: _Budget) -> Optional[ThreePathConfig]:
    A = g.adj_masks
    n = g.n
    vs = g.vertices
    hit = _search_theta(A, n, budget)
    if hit is None:
        triangles = _triangles(A, n)
        hit = _search_pyramid(A, n, triangles, budget)
        if hit is None:
            hit = _search_prism(A, n, triangles, budget)
    if hit is None:
        return None
    kind, paths, ends = hit

    def ids(x):
        if isinstance(x, (tuple, list)):
            return tuple(ids(y) for y in x)
        return vs[x]

    return ThreePathConfig(kind, tuple(tuple(vs[i] for i in p) for p in paths), ids(ends))


def _theta_free_search(g: Graph, budget: _Budget) -> Optional[ThreePathConfig]:
    hit = _search_theta(g.adj_masks, g.n, budget)
    if hit is None:
        return None
    kind, paths, ends = hit
    vs = g.vertices
    return ThreePathConfig(kind, tuple(tuple(vs[i] for i in p) for p in paths), (vs[ends[0]], vs[ends[1]]))


# ----------------------------------------------------------------------
# clique cutset decomposition
# ----------------------------------------------------------------------

def _mcs_m(g: Graph):
    """Minimal elimination ordering and fill-in via MCS-M.

    Returns ``(order, higher)`` where ``order`` lists vertex indices from
    first eliminated to last and ``higher[i]`` is the mask of neighbours of
    ``i`` in the minimal triangulation that are eliminated later.
    """
    A = g.adj_masks
    n = g.n
    weight = [0] * n
    unnumbered = (1 << n) - 1
    tri = list(A)
    order_rev = []
    for _ in range(n):
        v = max(iter_bits(unnumbered), key=lambda i: (weight[i], -i))
        unnumbered &= ~(1 << v)
        order_rev.append(v)
        # u gains weight when some path from v reaches it through unnumbered
        # vertices all lighter than u: a minimax (bottleneck) search
        bumped = 0
        best = {}
        heap = []
        for u in iter_bits(A[v] & unnumbered):
            best[u] = -1
            heap.append((-1, u))
        heapq.heapify(heap)
        while heap:
            cost, u = heapq.heappop(heap)
            if best[u] != cost:
                continue
            if cost < weight[u]:
                bumped |= 1 << u
            through = max(cost, weight[u])
            for x in iter_bits(A[u] & unnumbered):
                if x != v and (x not in best or through < best[x]):
                    best[x] = through
                    heapq.heappush(heap, (through, x))
        for u in iter_bits(bumped):
            weight[u] += 1
            tri[u] |= 1 << v
            tri[v] |= 1 << u
    order = order_rev[::-1]
    pos = {v: i for i, v in enumerate(order)}
    higher = [0] * n
    for v in range(n):
        for u in iter_bits(tri[v]):
            if pos[u] > pos[v]:
                higher[v] |= 1 << u
    return order, higher


def clique_cutset_pieces(g: Graph) -> List[frozenset]:
    """Split ``g`` along clique minimal separators.

    Every returned piece is an induced subgraph and every clique-cutset-free
    induced subgraph of ``g`` (in particular every 3PC) lies inside one.
    """
    if g.n == 0:
        return []
    A = g.adj_masks
    order, higher = _mcs_m(g)
    rest = g.full_mask
    pieces = []
    for x in order:
        if not rest >> x & 1:
            continue
        sep = higher[x] & rest
        if not _is_clique_mask(A, sep):
            continue
        comps = component_masks(g, rest & ~sep)
        mine = next(c for c in comps if c >> x & 1)
        if (mine | sep) == rest:
            continue
        pieces.append(g.members(mine | sep))
        rest &= ~mine
    pieces.append(g.members(rest))
    return pieces


def _is_clique_mask(A, mask: int) -> bool:
    for i in iter_bits(mask):
        if (mask & ~(1 << i)) & ~A[i]:
            return False
    return True


# ----------------------------------------------------------------------
# public 3PC entry points
# ----------------------------------------------------------------------

def detect_3pc(g: Graph, limit: int = DEFAULT_LIMIT, exact: bool = False, budget: Optional[int] = DEFAULT_BUDGET,
               theta_only: bool = False) -> Detection:
    """Search for a 3PC, reporting whether the answer is exhaustive.

    Pieces of at most ``limit`` vertices are searched without a budget.
    Larger pieces either raise (``exact=True``) or are searched under
    ``budget`` node expansions and, if that runs out, flagged best-effort.
    """
    search = _theta_free_search if theta_only else _search
    if g.n <= limit:
        return Detection(search(g, _Budget(None)), True)
    pieces = clique_cutset_pieces(g)
    big = [p for p in pieces if len(p) > limit]
    if big and exact:
        raise ResourceError(
            f"exact 3PC detection limited to pieces of {limit} vertices; largest piece has {max(map(len, big))}")
    exhaustive = True
    for piece in pieces:
        sub = g.induced(piece)
        if len(piece) <= limit:
            hit = search(sub, _Budget(None))
        else:
            try:
                hit = search(sub, _Budget(budget))
            except ResourceError:
                exhaustive = False
                continue
        if hit is not None:
            return Detection(hit, True, len(pieces))
    return Detection(None, exhaustive, len(pieces))


def find_3pc(g: Graph, limit: int = DEFAULT_LIMIT, exact: bool = True) -> Optional[ThreePathConfig]:
    """A theta, pyramid or generalized prism in ``g``, or ``None``.

    Search order is theta, pyramid, prism; anchors are tried in increasing id
    order, so the witness is deterministic.
    """
    return detect_3pc(g, limit, exact).witness


def is_3pc_free(g: Graph, limit: int = DEFAULT_LIMIT, exact: bool = True) -> bool:
    return find_3pc(g, limit, exact) is None


def find_theta(g: Graph, limit: int = DEFAULT_LIMIT, exact: bool = True) -> Optional[ThreePathConfig]:
    return detect_3pc(g, limit, exact, theta_only=True).witness


def is_theta_free(g: Graph, limit: int = DEFAULT_LIMIT, exact: bool = True) -> bool:
    return find_theta(g, limit, exact) is None


def _is_cycle_graph(g: Graph, vs) -> bool:
    vs = frozenset(vs)
    if len(vs) < 4:
        return False
    sub = g.induced(vs)
    return all(sub.degree(v) == 2 for v in vs) and is_connected(sub)


def check_3pc(g: Graph, cfg: ThreePathConfig) -> List[str]:
    """Re-verify a witness against ``g``; returns a list of problems."""
    problems = []
    paths = cfg.paths
    if len(paths) != 3:
        return ["need exactly three paths"]
    for i, p in enumerate(paths):
        if not is_induced_path(g, p):
            problems.append(f"path {i} is not an induced path")
    for i, j in combinations(range(3), 2):
        if not _is_cycle_graph(g, set(paths[i]) | set(paths[j])):
            problems.append(f"paths {i} and {j} do not induce a hole")
    kind, ends = cfg.kind, cfg.ends
    if kind == THETA:
        a, b = ends
        if g.adjacent(a, b):
            problems.append("theta ends are adjacent")
        if any(p[0] != a or p[-1] != b for p in paths):
            problems.append("theta paths must run between the ends")
    elif kind == PYRAMID:
        a, base = ends
        if not g.is_clique(base) or len(set(base)) != 3:
            problems.append("pyramid base is not a triangle")
        if any(p[0] != a or p[-1] != b for p, b in zip(paths, base)):
            problems.append("pyramid paths must join apex to base")
        if sum(1 for p in paths if len(p) == 2) > 1:
            problems.append("more than one pyramid path of length one")
    elif kind in (PRISM, PINCHED_PRISM):
        t1, t2 = ends
        for t in (t1, t2):
            if len(set(t)) != 3 or not g.is_clique(t):
                problems.append("prism end is not a triangle")
        shared = set(t1) & set(t2)
        if len(shared) > 1:
            problems.append("triangles share more than one vertex")
        if (kind == PINCHED_PRISM) != (len(shared) == 1):
            problems.append("pinched flag disagrees with triangle intersection")
        if any(p[0] != x or p[-1] != y for p, x, y in zip(paths, t1, t2)):
            problems.append("prism paths must join matching triangle corners")
    else:
        problems.append(f"unknown kind {kind!r}")
    return problems


# ----------------------------------------------------------------------
# wheels
# ----------------------------------------------------------------------

def sectors(g: Graph, hole: Sequence[int], hub: int) -> List[Sector]:
    """Split a hole into the sectors cut out by the hub's neighbours."""
    hole = list(hole)
    if not is_hole(g, hole):
        raise InputError("not a hole of the graph")
    if hub in hole:
        raise InputError("hub lies on the hole")
    nb = g.neighbors(hub)
    marks = [i for i, v in enumerate(hole) if v in nb]
    if len(marks) < 2:
        raise InputError("hub has fewer than two neighbours on the hole")
    k = len(hole)
    out = []
    for idx, start in enumerate(marks):
        stop = marks[(idx + 1) % len(marks)]
        span = (stop - start) % k or k
        out.append(Sector(tuple(hole[(start + j) % k] for j in range(span + 1))))
    return out


def find_useful_wheel(g: Graph, max_hole: Optional[int] = None) -> Optional[UsefulWheel]:
    for hole in iter_holes(g, 7, max_hole):
        on = frozenset(hole)
        for v in g.vertices:
            if v in on or len(g.neighbors(v) & on) < 2:
                continue
            secs = sectors(g, hole, v)
            if sum(1 for s in secs if s.long) >= 2:
                return UsefulWheel(tuple(hole), v, tuple(secs))
    return None


def check_useful_wheel(g: Graph, wheel: UsefulWheel) -> bool:
    if len(wheel.hole) < 7 or not is_hole(g, wheel.hole) or wheel.hub in wheel.hole:
        return False
    try:
        secs = sectors(g, wheel.hole, wheel.hub)
    except InputError:
        return False
    return sum(1 for s in secs if s.long) >= 2


# ----------------------------------------------------------------------
# connectors
# ----------------------------------------------------------------------

def _paths_within(g: Graph, s: int, t: int, inner: frozenset) -> Iterator[Tuple[int, ...]]:
    """Induced paths s..t (s, t possibly adjacent) with interior in ``inner``."""
    if g.adjacent(s, t):
        yield (s, t)
        return

    def rec(path: List[int], used: set):
        c = path[-1]
        for x in sorted(g.neighbors(c) & inner - used):
            if any(g.adjacent(x, y) for y in path[:-1]):
                continue
            if g.adjacent(x, t):
                yield tuple(path + [x, t])
            else:
                used.add(x)
                yield from rec(path + [x], used)
                used.discard(x)

    yield from rec([s], {s})


def _meets_all(g: Graph, h: frozenset, xs) -> bool:
    return all(g.neighbors(x) & h for x in xs)


def _classify_connector(g: Graph, h: frozenset, xs: Tuple[int, int, int]) -> ConnectorWitness:
    sub = g.induced(h)
    # (i): H plus two attachments is a path (or a hole through x_i x_j)
    for i, j in ((0, 1), (0, 2), (1, 2)):
        k = 3 - i - j
        xi, xj, xk = xs[i], xs[j], xs[k]
        ni, nj = g.neighbors(xi) & h, g.neighbors(xj) & h
        if len(ni) != 1 or len(nj) != 1:
            continue
        (ui,), (uj,) = ni, nj
        seq = _path_order(sub, ui, uj)
        if seq is None:
            continue
        nk = g.neighbors(xk) & h
        two_far = any(not g.adjacent(p, q) for p, q in combinations(nk, 2))
        two_close = len(nk) == 2 and g.is_clique(nk)
        if two_far or two_close:
            return ConnectorWitness("path-through", h, {
                "ends": (xi, xj), "third": xk, "path": (xi,) + seq + (xj,),
                "third_neighbors": tuple(sorted(nk))})
    xset = frozenset(xs)
    # (ii): a branch vertex with three internally disjoint paths
    for a in sorted(h):
        combo = _three_legs(g, h, [(a, x) for x in xs], shared=frozenset([a]))
        if combo is not None:
            return ConnectorWitness("branch-vertex", h, {"center": a, "paths": combo})
    # (iii): a triangle with three legs
    for tri in combinations(sorted(h), 3):
        if not g.is_clique(tri):
            continue
        for perm in permutations(tri):
            combo = _three_legs(g, h, list(zip(perm, xs)), shared=frozenset(), triangle=frozenset(tri))
            if combo is not None:
                return ConnectorWitness("branch-triangle", h, {"triangle": tuple(perm), "paths": combo})
    raise InputError(f"connector {sorted(h)} matches none of the three shapes for {sorted(xset)}")


def _path_order(sub: Graph, u: int, v: int) -> Optional[Tuple[int, ...]]:
    """If ``sub`` is an induced path with ends u, v, return its sequence."""
    if u == v:
        return (u,) if sub.n == 1 else None
    if sub.edge_count() != sub.n - 1 or not is_connected(sub):
        return None
    if sub.degree(u) != 1 or sub.degree(v) != 1 or any(sub.degree(x) > 2 for x in sub.vertices):
        return None
    seq = [u]
    prev = None
    while seq[-1] != v:
        nxt = [y for y in sub.neighbors(seq[-1]) if y != prev]
        prev = seq[-1]
        seq.append(nxt[0])
    return tuple(seq)


def _three_legs(g: Graph, h: frozenset, legs, shared: frozenset, triangle: frozenset = frozenset()):
    xs = [x for _, x in legs]
    options = []
    for start, x in legs:
        inner = h - {start} - triangle - shared
        options.append(list(_paths_within(g, start, x, inner)))
        if not options[-1]:
            return None
    allowed_pairs = {frozenset((x, y)) for x, y in combinations(xs, 2)}
    allowed_pairs |= {frozenset((p, q)) for p, q in combinations(triangle, 2)}
    for p1 in options[0]:
        for p2 in options[1]:
            for p3 in options[2]:
                ps = (p1, p2, p3)
                bodies = [set(p) - shared for p in ps]
                if any(bodies[a] & bodies[b] for a, b in combinations(range(3), 2)):
                    continue
                if (set(p1) | set(p2) | set(p3)) - set(xs) != set(h):
                    continue
                bad = False
                for a, b in combinations(range(3), 2):
                    for u in bodies[a]:
                        for v in bodies[b]:
                            if g.adjacent(u, v) and frozenset((u, v)) not in allowed_pairs:
                                bad = True
                                break
                        if bad:
                            break
                    if bad:
                        break
                if not bad:
                    return ps
    return None


def minimal_connected_connector(g: Graph, x1: int, x2: int, x3: int) -> ConnectorWitness:
    """Inclusion-minimal connected H in g - {x1,x2,x3} meeting all three neighbourhoods."""
    xs = (x1, x2, x3)
    g.check(xs)
    if len(set(xs)) != 3:
        raise InputError("attachment vertices must be distinct")
    rest = g.remove(xs)
    start = None
    for comp in _components_of(rest):
        if _meets_all(g, comp, xs):
            start = comp
            break
    if start is None:
        raise NotFound("no connected subgraph meets all three neighbourhoods")
    h = set(start)
    changed = True
    while changed:
        changed = False
        for u in sorted(h):
            smaller = frozenset(h - {u})
            if smaller and is_connected(g, smaller) and _meets_all(g, smaller, xs):
                h.remove(u)
                changed = True
                break
    return _classify_connector(g, frozenset(h), xs)


def _components_of(g: Graph) -> List[frozenset]:
    return [g.members(c) for c in component_masks(g, g.full_mask)]


def simplicial_vertices(g: Graph, k) -> frozenset:
    sub = g.induced(k)
    return frozenset(v for v in sub.vertices if sub.is_clique(sub.neighbors(v)))


def is_subdivided_claw(g: Graph, k, leaves) -> bool:
    sub = g.induced(k)
    if sub.n < 4 or not is_connected(sub) or sub.edge_count() != sub.n - 1:
        return False
    degs = {v: sub.degree(v) for v in sub.vertices}
    ones = {v for v, d in degs.items() if d == 1}
    threes = [v for v, d in degs.items() if d == 3]
    others = [v for v, d in degs.items() if d not in (1, 3)]
    return ones == set(leaves) and len(threes) == 1 and all(degs[v] == 2 for v in others)


def is_line_graph_of_subdivided_claw(g: Graph, k, leaves) -> bool:
    sub = g.induced(k)
    if sub.n < 6 or not is_connected(sub) or sub.edge_count() != sub.n:
        return False
    degs = {v: sub.degree(v) for v in sub.vertices}
    ones = {v for v, d in degs.items() if d == 1}
    threes = [v for v, d in degs.items() if d == 3]
    if ones != set(leaves) or len(threes) != 3 or not sub.is_clique(threes):
        return False
    return all(d in (1, 2, 3) for d in degs.values())


def extract_claw_connector(g: Graph, h, n1: int, n2: int, n3: int) -> frozenset:
    """Subdivided claw or line graph of one with simplicial vertices n1, n2, n3.

    ``h`` is a :class:`~treealpha.separate.CooperativeSubgraph` or a plain
    vertex set.  The construction follows the case analysis for cooperative
    subgraphs: triangle, two edges, one edge (shortest interior path), and
    finally a minimal connector inside the interior of ``h``.
    """
    members = frozenset(getattr(h, "members", h))
    g.check(members)
    ns = (n1, n2, n3)
    g.check(ns)
    if len(set(ns)) != 3 or not g.is_stable(ns):
        raise InputError("n1, n2, n3 must be three distinct pairwise non-adjacent vertices")
    if set(ns) & members:
        raise InputError("n1, n2, n3 must lie outside H")
    outside = frozenset(g.vertices) - members
    boundary = frozenset(v for v in members if g.neighbors(v) & outside)
    hs = _private_attachments(g, boundary, ns)
    if hs is None:
        raise InputError("no distinct h1, h2, h3 in the boundary with n_i h_j adjacent iff i = j")
    h1, h2, h3 = hs
    base = frozenset(hs) | frozenset(ns)
    edges = [(a, b) for a, b in combinations(range(3), 2) if g.adjacent(hs[a], hs[b])]
    if len(edges) == 3 or len(edges) == 2:
        k = base
    elif len(edges) == 1:
        a, b = edges[0]
        c = 3 - a - b
        interior = members - boundary
        seq = _shortest_interior_path(g, hs[c], interior, {hs[a], hs[b]})
        if seq is None:
            raise InputError("H is not cooperative: no interior path between boundary vertices")
        k = base | frozenset(seq)
    else:
        interior = members - boundary
        if not interior or not is_connected(g, interior) or not _meets_all(g, interior, hs):
            raise InputError("H is not cooperative: interior does not reach h1, h2, h3")
        sub = g.induced(interior | frozenset(hs))
        conn = minimal_connected_connector(sub, h1, h2, h3)
        k = base | conn.vertices
        if conn.shape == "path-through":
            k = _trim_path_through(g, conn, k, ns, hs)
    if not (is_subdivided_claw(g, k, ns) or is_line_graph_of_subdivided_claw(g, k, ns)):
        raise InputError(f"construction did not yield a claw connector on {sorted(k)}")
    if simplicial_vertices(g, k) != frozenset(ns):
        raise InputError("claw connector has unexpected simplicial vertices")
    return k


def _private_attachments(g: Graph, boundary, ns) -> Optional[Tuple[int, int, int]]:
    cand = [sorted(v for v in boundary if g.adjacent(v, ni) and not any(g.adjacent(v, nj) for nj in ns if nj != ni))
            for ni in ns]
    for a in cand[0]:
        for b in cand[1]:
            for c in cand[2]:
                if len({a, b, c}) == 3:
                    return a, b, c
    return None


def _shortest_interior_path(g: Graph, start: int, interior: frozenset, targets: set) -> Optional[List[int]]:
    """Shortest start-p2-..-pk with p2.. in ``interior`` and pk seeing ``targets``."""
    parent = {start: None}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        if v != start and g.neighbors(v) & targets:
            seq = [v]
            while parent[seq[-1]] is not None:
                seq.append(parent[seq[-1]])
            return seq[::-1]
        for u in sorted(g.neighbors(v) & interior):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    return None


def _trim_path_through(g: Graph, conn: ConnectorWitness, k: frozenset, ns, hs) -> frozenset:
    """Cut the path outcome down to a claw when the third end sees far vertices."""
    xi, xj = conn.structure["ends"]
    xk = conn.structure["third"]
    path = list(conn.structure["path"])
    nk = [i for i, v in enumerate(path) if g.adjacent(v, xk) and v not in (xi, xj)]
    if len(nk) == 2 and g.adjacent(path[nk[0]], path[nk[1]]):
        return k
    lo, hi = nk[0], nk[-1]
    keep = set(path[: lo + 1]) | set(path[hi:]) | {xk}
    drop = set(path) - keep
    return k - frozenset(drop)
