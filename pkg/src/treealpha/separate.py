"""Separators in 3PC-free graphs: the wheel cutset, cooperative subgraphs and
the recursive separation of two cooperative sides by a cut of logarithmic
stability number."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Union

from .detect import Sector, UsefulWheel, sectors
from .errors import InputError, InvariantViolation
from .graph import (
    INFINITY,
    Graph,
    components,
    distance_between_sets,
    is_connected,
    neighborhood,
    stability_number,
)

CLIQUE = "clique"
INTERIOR_CONNECTED = "interior-connected"

# alpha(N(H1) & N(H2)) is below 17 for cooperative anticomplete sides
COMMON_NEIGHBOR_CAP = 16


@dataclass(frozen=True)
class CooperativeSubgraph:
    members: frozenset
    boundary: frozenset
    certificate: str

    @property
    def interior(self) -> frozenset:
        return self.members - self.boundary

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class SeparatorResult:
    cut: frozenset
    alpha: int
    bound: int
    log: List[dict] = field(default_factory=list)
    depth: int = 0

    def to_dict(self) -> dict:
        return {
            "cut": sorted(self.cut),
            "alpha": self.alpha,
            "bound": self.bound,
            "depth": self.depth,
            "log": [{k: (sorted(v) if isinstance(v, frozenset) else v) for k, v in rec.items()}
                    for rec in self.log],
        }


def log_bound(m: int, factor: int = 32) -> int:
    """Largest integer k with k <= factor * log2(m), computed without floats."""
    if m <= 1:
        return 0
    return (m ** factor).bit_length() - 1


# ----------------------------------------------------------------------
# wheels
# ----------------------------------------------------------------------

def wheel_separator(g: Graph, wheel: UsefulWheel, sector: Union[Sector, Sequence[int]]) -> frozenset:
    """X = ((N(s1) | N(s2)) - W) | N(v) for a long sector with ends s1, s2."""
    path = tuple(sector.path if isinstance(sector, Sector) else sector)
    actual = sectors(g, wheel.hole, wheel.hub)
    match = None
    for s in actual:
        if s.path == path or s.path == path[::-1]:
            match = s
    if match is None:
        raise InputError("not a sector of this wheel")
    if not match.long:
        raise InputError("sector is not long")
    s1, s2 = match.ends
    hole = frozenset(wheel.hole)
    return ((g.neighbors(s1) | g.neighbors(s2)) - hole) | g.neighbors(wheel.hub)


def wheel_sides(wheel: UsefulWheel, sector: Union[Sector, Sequence[int]]):
    """(S*, W - S) for a sector of the wheel."""
    path = tuple(sector.path if isinstance(sector, Sector) else sector)
    return frozenset(path[1:-1]), frozenset(wheel.hole) - frozenset(path)


# ----------------------------------------------------------------------
# cooperative subgraphs
# ----------------------------------------------------------------------

def make_cooperative(g: Graph, members: Iterable[int]) -> Optional[CooperativeSubgraph]:
    h = frozenset(members)
    if not h:
        raise InputError("a cooperative subgraph needs at least one vertex")
    g.check(h)
    boundary = frozenset(v for v in h if g.neighbors(v) - h)
    if g.is_clique(h):
        return CooperativeSubgraph(h, boundary, CLIQUE)
    interior = h - boundary
    if interior and is_connected(g, interior) and neighborhood(g, interior) == boundary:
        return CooperativeSubgraph(h, boundary, INTERIOR_CONNECTED)
    return None


def _members(h) -> frozenset:
    return h.members if isinstance(h, CooperativeSubgraph) else frozenset(h)


def grow_cooperative(g: Graph, h: Union[CooperativeSubgraph, Iterable[int]]) -> CooperativeSubgraph:
    """Closed neighbourhood N[H], re-verified as cooperative."""
    grown = neighborhood(g, _members(h), closed=True)
    out = make_cooperative(g, grown)
    if out is None:
        raise InvariantViolation(f"N[H] is not cooperative (|N[H]| = {len(grown)})", step="grow")
    return out


def _check_sides(g: Graph, a: frozenset, b: frozenset) -> None:
    g.check(a | b)
    if not a or not b:
        raise InputError("both sides must be nonempty")
    if a & b:
        raise InputError("sides intersect")
    if neighborhood(g, a) & b:
        raise InputError("sides are adjacent")


def common_neighbor_stability(g: Graph, h1, h2) -> int:
    a, b = _members(h1), _members(h2)
    _check_sides(g, a, b)
    return stability_number(g, neighborhood(g, a) & neighborhood(g, b))


# ----------------------------------------------------------------------
# recursive pair separation
# ----------------------------------------------------------------------

def _step(g: Graph, h1: frozenset, h2: frozenset, depth: int, log: List[dict]):
    """One round of the construction.  Returns (partial cut, next instance or None)."""
    m = g.n - len(h1) - len(h2)
    rec = {"step": depth, "n": g.n, "m": m}
    log.append(rec)
    if m == 0:
        rec["case"] = "empty"
        return frozenset(), None

    n1 = neighborhood(g, h1) & neighborhood(g, h2)
    a1 = stability_number(g, n1)
    g2 = g.remove(n1)
    h2_grown = neighborhood(g2, h2, closed=True)
    n2 = neighborhood(g2, h1) & neighborhood(g2, h2_grown)
    a2 = stability_number(g, n2)
    rec.update(N1=n1, N2=n2, alpha_N1=a1, alpha_N2=a2)
    for name, a in (("N1", a1), ("N2", a2)):
        if a > COMMON_NEIGHBOR_CAP:
            raise InvariantViolation(f"alpha({name}) = {a} exceeds {COMMON_NEIGHBOR_CAP}", step=depth, trace=log)
    g3 = g2.remove(n2)
    dist = distance_between_sets(g3, h1, h2)
    if dist <= 3:
        raise InvariantViolation(f"distance {dist} between the sides after removing N1, N2", step=depth, trace=log)
    base = n1 | n2
    if dist == INFINITY:
        rec["case"] = "split"
        return base, None

    f = next(c for c in components(g3) if h1 <= c)
    fg = g3.induced(f)
    # vertices at distance one or two from H1 inside F
    near = neighborhood(fg, h1)
    x = near | neighborhood(fg, h1 | near)
    d2 = next(c for c in components(fg, x) if h2 <= c)
    z = neighborhood(fg, d2)
    rec["Z"] = z
    if not z:
        rec["case"] = "no-Z"
        return base, None
    f1 = next(c for c in components(fg, z) if h1 <= c)
    f2 = d2
    if neighborhood(fg, f1) != z or neighborhood(fg, f2) != z:
        raise InvariantViolation("Z does not have two full components", step=depth, trace=log)
    sub = fg.induced(f1 | f2 | z)
    rec.update(F1=len(f1), F2=len(f2))
    if 2 * len(f1 - h1) < m:
        rec["case"] = "recurse-H1"
        return base, (sub, h1, f2 | z)
    rec["case"] = "recurse-H2"
    return base, (sub, f1 | z, h2)


def separate_cooperative_pair(g: Graph, h1, h2) -> SeparatorResult:
    """Cut separating H1 from H2 with alpha <= 32 log2(n + 1 - |H1| - |H2|).

    The input is expected to be 3PC-free; when it is not, a broken bound or
    distance claim raises InvariantViolation with the step log attached.
    """
    a, b = _members(h1), _members(h2)
    _check_sides(g, a, b)
    for side in (a, b):
        if make_cooperative(g, side) is None:
            raise InputError("side is not cooperative")
    bound = log_bound(g.n + 1 - len(a) - len(b))
    log: List[dict] = []
    cut = frozenset()
    inst = (g, a, b)
    depth = 0
    while inst is not None:
        depth += 1
        part, inst = _step(*inst, depth, log)
        cut |= part
    alpha = stability_number(g, cut)
    if cut & (a | b):
        raise InvariantViolation("cut meets a side", trace=log)
    return SeparatorResult(cut, alpha, bound, log, depth)


def separate_vertex_pair(g: Graph, a: int, b: int) -> SeparatorResult:
    g.check((a, b))
    if a == b:
        raise InputError("the two vertices must differ")
    if g.adjacent(a, b):
        raise InputError(f"{a} and {b} are adjacent")
    res = separate_cooperative_pair(g, frozenset((a,)), frozenset((b,)))
    res.bound = log_bound(g.n)
    return res
