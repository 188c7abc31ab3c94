"""Graph families: the four 3PC gadgets, wheels and random 3PC-free corpora.

Random families are reproducible from their seed.  Chordal graphs are grown
along a random perfect elimination ordering: each new vertex is attached to
a clique of the graph built so far, so reversing the insertion order gives a
perfect elimination ordering.  ``tpcfree-glued`` grows larger 3PC-free
graphs by clique sums of small verified blocks; a 3PC has no clique cutset,
so clique sums never create one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from .detect import DEFAULT_LIMIT, find_useful_wheel, is_3pc_free, is_theta_free
from .errors import InputError, ResourceError
from .graph import Graph, is_connected

FAMILIES = ("theta", "pyramid", "prism", "pinched-prism", "wheel", "chordal-random",
            "tpcfree-random", "tpcfree-glued", "tpcfree-wheel", "cycle", "clique", "path")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: Dict[str, object] = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """Parse ``family(k=v, ...)`` or ``family(v1, v2, ...)``.

        >>> GeneratorSpec.parse("theta(2,2,2)").params
        {'l1': 2, 'l2': 2, 'l3': 2}
        """
        text = text.strip()
        if "(" not in text:
            return cls(text, {})
        if not text.endswith(")"):
            raise InputError(f"malformed generator spec {text!r}")
        family, _, rest = text.partition("(")
        family = family.strip()
        body = rest[:-1].strip()
        names = _POSITIONAL.get(family)
        if names is None:
            raise InputError(f"unknown family {family!r}")
        params: Dict[str, object] = {}
        if body:
            parts = _split_args(body)
            for i, part in enumerate(parts):
                if "=" in part:
                    k, _, v = part.partition("=")
                    params[k.strip()] = _value(v.strip())
                else:
                    if i >= len(names):
                        raise InputError(f"too many arguments for {family}")
                    params[names[i]] = _value(part.strip())
        return cls(family, params)


_POSITIONAL = {
    "theta": ("l1", "l2", "l3"),
    "pyramid": ("l1", "l2", "l3"),
    "prism": ("l1", "l2", "l3"),
    "pinched-prism": ("l2", "l3"),
    "wheel": ("hole_len", "hub_neighbors"),
    "chordal-random": ("n", "density", "seed"),
    "tpcfree-random": ("n", "p", "seed", "max_rejects"),
    "tpcfree-glued": ("n", "p", "seed", "block", "skew"),
    "tpcfree-wheel": ("n", "seed", "extra"),
    "cycle": ("n",),
    "clique": ("n",),
    "path": ("n",),
}


def _split_args(body: str) -> List[str]:
    out, depth, cur = [], 0, []
    for ch in body:
        if ch in "[{":
            depth += 1
        elif ch in "]}":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return [p for p in out if p.strip()]


def _value(text: str):
    if text.startswith(("[", "{")):
        inner = text[1:-1]
        return tuple(int(x) for x in inner.replace(";", ",").split(",") if x.strip())
    for conv in (int, float):
        try:
            return conv(text)
        except ValueError:
            pass
    return text


# ----------------------------------------------------------------------
# gadgets
# ----------------------------------------------------------------------

class _Builder:
    def __init__(self) -> None:
        self.n = 0
        self.edges: List[Tuple[int, int]] = []

    def vertex(self) -> int:
        self.n += 1
        return self.n - 1

    def path(self, s: int, t: int, length: int) -> List[int]:
        """Join s to t by a new path with ``length`` edges."""
        seq = [s] + [self.vertex() for _ in range(length - 1)] + [t]
        self.edges.extend(zip(seq, seq[1:]))
        return seq

    def graph(self) -> Graph:
        return Graph(range(self.n), self.edges)


def _lengths(params, names, low: int) -> List[int]:
    try:
        ls = [int(params[k]) for k in names]
    except KeyError as exc:
        raise InputError(f"missing parameter {exc.args[0]}") from None
    if any(l < low for l in ls):
        raise InputError(f"path lengths must be at least {low}")
    return ls


def theta(l1: int, l2: int, l3: int) -> Graph:
    ls = _lengths({"l1": l1, "l2": l2, "l3": l3}, ("l1", "l2", "l3"), 2)
    b = _Builder()
    a, z = b.vertex(), b.vertex()
    for l in ls:
        b.path(a, z, l)
    return b.graph()


def pyramid(l1: int, l2: int, l3: int) -> Graph:
    ls = _lengths({"l1": l1, "l2": l2, "l3": l3}, ("l1", "l2", "l3"), 1)
    if sum(1 for l in ls if l == 1) > 1:
        raise InputError("a pyramid has at most one path of length one")
    b = _Builder()
    apex = b.vertex()
    base = [b.vertex() for _ in range(3)]
    b.edges += [(base[0], base[1]), (base[1], base[2]), (base[0], base[2])]
    for l, t in zip(ls, base):
        b.path(apex, t, l)
    return b.graph()


def prism(l1: int, l2: int, l3: int) -> Graph:
    ls = _lengths({"l1": l1, "l2": l2, "l3": l3}, ("l1", "l2", "l3"), 1)
    b = _Builder()
    top = [b.vertex() for _ in range(3)]
    bottom = [b.vertex() for _ in range(3)]
    for t in (top, bottom):
        b.edges += [(t[0], t[1]), (t[1], t[2]), (t[0], t[2])]
    for l, s, t in zip(ls, top, bottom):
        b.path(s, t, l)
    return b.graph()


def pinched_prism(l2: int, l3: int) -> Graph:
    ls = _lengths({"l2": l2, "l3": l3}, ("l2", "l3"), 2)
    b = _Builder()
    c = b.vertex()
    a2, a3, b2, b3 = (b.vertex() for _ in range(4))
    b.edges += [(c, a2), (c, a3), (a2, a3), (c, b2), (c, b3), (b2, b3)]
    b.path(a2, b2, ls[0])
    b.path(a3, b3, ls[1])
    return b.graph()


def cycle(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least three vertices")
    return Graph(range(n), [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    if n < 1:
        raise InputError("a path needs at least one vertex")
    return Graph(range(n), [(i, i + 1) for i in range(n - 1)])


def clique(n: int) -> Graph:
    if n < 1:
        raise InputError("a clique needs at least one vertex")
    return Graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def wheel(hole_len: int, hub_neighbors: Sequence[int]) -> Graph:
    """Cycle on ``0..hole_len-1`` plus hub ``hole_len`` seeing ``hub_neighbors``."""
    if hole_len < 4:
        raise InputError("the rim must be a hole (length at least four)")
    nb = sorted(set(int(x) for x in hub_neighbors))
    if any(x < 0 or x >= hole_len for x in nb):
        raise InputError("hub neighbours must lie on the rim")
    hub = hole_len
    edges = [(i, (i + 1) % hole_len) for i in range(hole_len)] + [(hub, x) for x in nb]
    return Graph(range(hole_len + 1), edges)


# ----------------------------------------------------------------------
# random families
# ----------------------------------------------------------------------

def chordal_random(n: int, density: float, seed: int) -> Graph:
    """Random connected chordal graph grown along a perfect elimination order.

    Vertex ``v`` picks a uniformly random earlier vertex ``u`` and joins a
    clique built greedily from ``u``'s neighbourhood, keeping each candidate
    with probability ``density``.
    """
    if n < 1:
        raise InputError("n must be positive")
    if not 0 <= density <= 1:
        raise InputError("density must lie in [0, 1]")
    rng = random.Random(seed)
    nbrs: List[set] = [set() for _ in range(n)]
    for v in range(1, n):
        u = rng.randrange(v)
        clique_ = [u]
        for w in sorted(nbrs[u]):
            if rng.random() < density and all(w in nbrs[x] for x in clique_):
                clique_.append(w)
        for x in clique_:
            nbrs[v].add(x)
            nbrs[x].add(v)
    return Graph(range(n), [(u, v) for u in range(n) for v in nbrs[u] if u < v])


def erdos_renyi(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph(range(n), edges)


RANDOM_LIMIT = 20


def tpcfree_random(n: int, p: float, seed: int, max_rejects: int = 10_000, limit: int = RANDOM_LIMIT) -> Graph:
    """Rejection-sample G(n, p) until the sample is 3PC-free (checked exactly)."""
    if n > limit:
        raise InputError(f"tpcfree-random is exact only up to {limit} vertices; use tpcfree-glued")
    rng = random.Random(seed)
    for _ in range(max_rejects + 1):
        g = erdos_renyi(n, p, rng)
        if is_3pc_free(g, max(n, DEFAULT_LIMIT)):
            return g
    raise ResourceError(f"no 3PC-free sample after {max_rejects} rejections")


def tpcfree_glued(n: int, p: float, seed: int, block: int = 8, max_rejects: int = 2_000,
                  skew: float = 0.0, theta_only: bool = False) -> Graph:
    """Clique sum of small blocks, grown until it has ``n`` vertices.

    Blocks are drawn from a mixture: rejection-sampled connected G(k, p)
    with ``3 <= k <= block``, holes of length 4 to 12, and hole-plus-hub
    wheels.  With ``theta_only`` the random blocks need only be theta-free
    and pyramids and prisms join the mixture, so the result is theta-free
    but usually not 3PC-free.  Each block is glued by identifying one of its
    cliques (one to three vertices) with a clique already present.  With
    probability ``skew`` the block is glued at a single vertex among the
    first three instead, which builds high-degree hubs.
    """
    if n < 1:
        raise InputError("n must be positive")
    if block < 3:
        raise InputError("blocks need at least three vertices")
    rng = random.Random(seed)
    nbrs: List[set] = [set()]
    while len(nbrs) < n:
        blk = _random_block(rng, p, block, max_rejects, theta_only)
        if skew and rng.random() < skew:
            glue = (rng.choice(blk.vertices),)
            target = [rng.randrange(min(3, len(nbrs)))]
        else:
            glue = rng.choice(_small_cliques(blk, 3))
            target = list(rng.choice(_small_cliques_adj(nbrs, len(glue))))
            rng.shuffle(target)
        mapping = dict(zip(glue, target))
        for v in blk.vertices:
            if v not in mapping:
                if len(nbrs) >= n:
                    break
                mapping[v] = len(nbrs)
                nbrs.append(set())
        for u, v in blk.edges():
            if u in mapping and v in mapping:
                a, b = mapping[u], mapping[v]
                if a != b:
                    nbrs[a].add(b)
                    nbrs[b].add(a)
    return Graph(range(len(nbrs)), [(u, v) for u in range(len(nbrs)) for v in nbrs[u] if u < v])


def _random_block(rng: random.Random, p: float, block: int, max_rejects: int, theta_only: bool) -> Graph:
    roll = rng.random()
    if roll < 0.2:
        return cycle(rng.randint(4, 12))
    if roll < 0.35:
        return random_useful_wheel(rng)
    if theta_only and roll < 0.5:
        ls = [rng.randint(1, 3) for _ in range(3)]
        if rng.random() < 0.5:
            return prism(*ls)
        ls[0], ls[1] = max(ls[0], 2), max(ls[1], 2)
        return pyramid(*ls)
    return _connected_free_block(rng.randint(3, block), p, rng, max_rejects, theta_only)


def random_useful_wheel(rng: random.Random) -> Graph:
    """A hole of length 7 to 10 plus a hub giving a 3PC-free useful wheel."""
    while True:
        k = rng.randint(7, 10)
        nb = sorted(rng.sample(range(k), rng.randint(3, min(k, 6))))
        g = wheel(k, nb)
        if is_3pc_free(g) and find_useful_wheel(g) is not None:
            return g


def tpcfree_wheel(n: int, seed: int, extra: int = 3, max_rejects: int = 200, p: float = 0.4) -> Graph:
    """3PC-free graph containing a useful wheel.

    A random useful wheel gets up to ``extra`` further vertices with random
    neighbourhoods (each kept only if the graph stays 3PC-free); further
    blocks are then glued on by clique sums until there are ``n`` vertices.
    """
    rng = random.Random(seed)
    g = random_useful_wheel(rng)
    for _ in range(extra):
        for _ in range(max_rejects):
            nb = rng.sample(g.vertices, rng.randint(1, min(4, g.n)))
            v = g.n
            h = Graph(range(v + 1), list(g.edges()) + [(v, x) for x in nb])
            if h.n <= DEFAULT_LIMIT and is_3pc_free(h):
                g = h
                break
    nbrs = [set(g.neighbors(v)) for v in g.vertices]
    while len(nbrs) < n:
        blk = _random_block(rng, p, 8, 2_000, False)
        glue = rng.choice(_small_cliques(blk, 3))
        target = list(rng.choice(_small_cliques_adj(nbrs, len(glue))))
        mapping = dict(zip(glue, target))
        for v in blk.vertices:
            if v not in mapping and len(nbrs) < n:
                mapping[v] = len(nbrs)
                nbrs.append(set())
        for u, v in blk.edges():
            if u in mapping and v in mapping and mapping[u] != mapping[v]:
                nbrs[mapping[u]].add(mapping[v])
                nbrs[mapping[v]].add(mapping[u])
    return Graph(range(len(nbrs)), [(u, v) for u in range(len(nbrs)) for v in nbrs[u] if u < v])


def _connected_free_block(k: int, p: float, rng: random.Random, max_rejects: int, theta_only: bool = False) -> Graph:
    test = is_theta_free if theta_only else is_3pc_free
    for _ in range(max_rejects + 1):
        g = erdos_renyi(k, p, rng)
        if is_connected(g) and test(g):
            return g
    raise ResourceError(f"no connected block of size {k} after {max_rejects} rejections")


def _small_cliques(g: Graph, cap: int) -> List[Tuple[int, ...]]:
    out = [(v,) for v in g.vertices]
    out += [e for e in g.edges()]
    if cap >= 3:
        out += [(u, v, w) for u, v in g.edges() for w in sorted(g.neighbors(u) & g.neighbors(v)) if w > v]
    return out


def _small_cliques_adj(nbrs: List[set], size: int) -> List[Tuple[int, ...]]:
    n = len(nbrs)
    if size == 1:
        return [(v,) for v in range(n)]
    edges = [(u, v) for u in range(n) for v in nbrs[u] if u < v]
    if size == 2:
        return edges or [(0,)]
    tris = [(u, v, w) for u, v in edges for w in sorted(nbrs[u] & nbrs[v]) if w > v]
    return tris or edges or [(0,)]


def generate(spec: GeneratorSpec) -> Graph:
    p = dict(spec.params)
    fam = spec.family
    try:
        if fam == "theta":
            return theta(p["l1"], p["l2"], p["l3"])
        if fam == "pyramid":
            return pyramid(p["l1"], p["l2"], p["l3"])
        if fam == "prism":
            return prism(p["l1"], p["l2"], p["l3"])
        if fam == "pinched-prism":
            return pinched_prism(p["l2"], p["l3"])
        if fam == "wheel":
            nb = p["hub_neighbors"]
            if isinstance(nb, int):
                nb = (nb,)
            return wheel(int(p["hole_len"]), nb)
        if fam == "chordal-random":
            return chordal_random(int(p["n"]), float(p.get("density", 0.3)), int(p.get("seed", 0)))
        if fam == "tpcfree-random":
            return tpcfree_random(int(p["n"]), float(p.get("p", 0.3)), int(p.get("seed", 0)),
                                  int(p.get("max_rejects", 10_000)))
        if fam == "tpcfree-glued":
            return tpcfree_glued(int(p["n"]), float(p.get("p", 0.4)), int(p.get("seed", 0)),
                                 int(p.get("block", 8)), skew=float(p.get("skew", 0.0)))
        if fam == "tpcfree-wheel":
            return tpcfree_wheel(int(p["n"]), int(p.get("seed", 0)), int(p.get("extra", 3)))
        if fam == "cycle":
            return cycle(int(p["n"]))
        if fam == "clique":
            return clique(int(p["n"]))
        if fam == "path":
            return path(int(p["n"]))
    except KeyError as exc:
        raise InputError(f"{fam}: missing parameter {exc.args[0]}") from None
    raise InputError(f"unknown family {fam!r}")
