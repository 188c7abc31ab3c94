"""Graph documents.

Native format, one item per line (``;`` also ends an item)::

    # comment
    n=4
    0 1
    1 2
    w 0 1/3

DIMACS edge files (``p edge N M`` / ``e u v``, 1-based) are accepted too and
mapped to ids ``0..N-1``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, Mapping, Optional, Tuple

from .errors import InputError, ParseError
from .graph import Graph, normalize, total_weight


def _items(text: str) -> Iterator[Tuple[int, str]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        for part in line.split(";"):
            part = part.split("#", 1)[0].strip()
            if part:
                yield lineno, part


def _is_dimacs(text: str) -> bool:
    for _, item in _items(text):
        return item.startswith("p ") or item == "p" or item.startswith("c ")
    return False


def parse_graph(text: str, normalize_weights: bool = False) -> Tuple[Graph, Optional[Dict[int, Fraction]]]:
    if _is_dimacs(text):
        return parse_dimacs(text), None
    n = None
    edges = set()
    weights: Dict[int, Fraction] = {}
    for lineno, item in _items(text):
        if item.startswith("n="):
            if n is not None:
                raise ParseError("repeated header", lineno)
            try:
                n = int(item[2:])
            except ValueError:
                raise ParseError(f"bad vertex count {item[2:]!r}", lineno) from None
            if n < 0:
                raise ParseError("negative vertex count", lineno)
            continue
        if n is None:
            raise ParseError("expected header 'n=<count>' first", lineno)
        fields = item.split()
        if fields[0] == "w":
            if len(fields) != 3:
                raise ParseError("weight lines look like 'w <id> <p/q>'", lineno)
            v = _vertex(fields[1], n, lineno)
            if v in weights:
                raise ParseError(f"vertex {v} weighted twice", lineno)
            try:
                q = Fraction(fields[2])
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad weight {fields[2]!r}", lineno) from None
            if q < 0:
                raise ParseError("negative weight", lineno)
            weights[v] = q
            continue
        if len(fields) != 2:
            raise ParseError(f"cannot read {item!r}", lineno)
        u, v = _vertex(fields[0], n, lineno), _vertex(fields[1], n, lineno)
        if u == v:
            raise ParseError(f"self-loop at {u}", lineno)
        e = (min(u, v), max(u, v))
        if e in edges:
            raise ParseError(f"duplicate edge {e[0]} {e[1]}", lineno)
        edges.add(e)
    if n is None:
        raise ParseError("missing header 'n=<count>'")
    g = Graph(range(n), sorted(edges))
    if not weights:
        return g, None
    missing = [v for v in range(n) if v not in weights]
    if missing:
        raise ParseError(f"weights missing for vertices {missing[:10]}")
    if normalize_weights:
        weights = normalize(g, weights)
    return g, weights


def _vertex(tok: str, n: int, lineno: int) -> int:
    try:
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad vertex id {tok!r}", lineno) from None
    if not 0 <= v < n:
        raise ParseError(f"vertex {v} outside 0..{n - 1}", lineno)
    return v


def parse_dimacs(text: str) -> Graph:
    n = None
    edges = set()
    for lineno, item in _items(text):
        fields = item.split()
        tag = fields[0]
        if tag == "c":
            continue
        if tag == "p":
            if len(fields) < 3 or n is not None:
                raise ParseError("bad problem line", lineno)
            try:
                n = int(fields[2])
            except ValueError:
                raise ParseError(f"bad vertex count {fields[2]!r}", lineno) from None
            continue
        if tag in ("e", "a"):
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(fields) < 3:
                raise ParseError("edge lines look like 'e <u> <v>'", lineno)
            u, v = _vertex(fields[1], n + 1, lineno) - 1, _vertex(fields[2], n + 1, lineno) - 1
            if u < 0 or v < 0:
                raise ParseError("DIMACS vertex ids start at 1", lineno)
            if u == v:
                raise ParseError(f"self-loop at {u + 1}", lineno)
            # DIMACS files commonly list both directions; keep one copy
            edges.add((min(u, v), max(u, v)))
            continue
        raise ParseError(f"unknown DIMACS line {item!r}", lineno)
    if n is None:
        raise ParseError("missing problem line")
    return Graph(range(n), sorted(edges))


def emit_graph(g: Graph, w: Optional[Mapping[int, object]] = None) -> str:
    """Canonical text: header, sorted edges, then weights as p/q."""
    if list(g.vertices) != list(range(g.n)):
        raise InputError("emission needs vertex ids 0..n-1; relabel the graph first")
    lines = [f"n={g.n}"]
    lines += [f"{u} {v}" for u, v in sorted(g.edges())]
    if w is not None:
        for v in g.vertices:
            q = Fraction(w.get(v, 0))
            lines.append(f"w {v} {q.numerator}/{q.denominator}")
    return "\n".join(lines) + "\n"


def relabel(g: Graph) -> Tuple[Graph, Dict[int, int]]:
    """Copy of ``g`` on ids 0..n-1 plus the old-to-new map."""
    mapping = {v: i for i, v in enumerate(g.vertices)}
    return Graph(range(g.n), [(mapping[u], mapping[v]) for u, v in g.edges()]), mapping


def read_graph(path: str, normalize_weights: bool = False):
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read(), normalize_weights)


def is_weight_normal(g: Graph, w: Mapping[int, Fraction]) -> bool:
    return total_weight(w, g.vertices) == 1
