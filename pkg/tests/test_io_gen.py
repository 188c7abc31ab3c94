from fractions import Fraction

import networkx as nx
import pytest
from conftest import graphs, k23
from hypothesis import given
from oracles import is_chordal, to_nx

from treealpha import generators
from treealpha.errors import InputError, ParseError
from treealpha.generators import GeneratorSpec
from treealpha.io import emit_graph, parse_dimacs, parse_graph, relabel


def test_parse_p3():
    g, w = parse_graph("n=3; 0 1; 1 2")
    assert w is None and sorted(g.edges()) == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text,fragment", [
    ("n=3\n1 1", "self-loop"),
    ("n=3\n0 1\n1 0", "duplicate"),
    ("0 1", "header"),
    ("n=3\n0 7", "outside"),
    ("n=2\n0 x", "bad vertex"),
    ("n=2\n0 1 2", "cannot read"),
    ("n=2\nw 0 1/2", "missing"),
    ("n=2\nw 0 -1\nw 1 1", "negative"),
    ("n=2\nn=2", "repeated"),
])
def test_parse_errors(text, fragment):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert fragment in str(exc.value)


def test_parse_error_has_line():
    with pytest.raises(ParseError) as exc:
        parse_graph("n=3\n# fine\n0 1\n2 2\n")
    assert exc.value.line == 4


def test_weights_and_comments():
    g, w = parse_graph("# a path\nn=2\n0 1  # edge\nw 0 1/3\nw 1 2/3\n")
    assert w == {0: Fraction(1, 3), 1: Fraction(2, 3)}
    _, w = parse_graph("n=2\nw 0 1\nw 1 3", normalize_weights=True)
    assert w[1] == Fraction(3, 4)


def test_dimacs():
    g = parse_dimacs("c triangle\np edge 3 3\ne 1 2\ne 2 3\ne 3 1\ne 2 1\n")
    assert g.n == 3 and len(g.edges()) == 3
    g2, _ = parse_graph("p edge 2 1\ne 1 2\n")
    assert sorted(g2.edges()) == [(0, 1)]


@given(graphs(max_n=12))
def test_round_trip(g):
    w = {v: Fraction(v + 1, 7) for v in g.vertices}
    text = emit_graph(g, w)
    back, w2 = parse_graph(text)
    assert sorted(back.edges()) == sorted(g.edges()) and w2 == w
    assert emit_graph(back, w2) == text


def test_emit_needs_contiguous_ids():
    g = generators.cycle(5).induced({1, 3, 4})
    with pytest.raises(InputError):
        emit_graph(g)
    h, mapping = relabel(g)
    assert sorted(mapping.values()) == [0, 1, 2] and len(h.edges()) == 1


def test_spec_parsing():
    assert GeneratorSpec.parse("theta(2,2,2)").params == {"l1": 2, "l2": 2, "l3": 2}
    s = GeneratorSpec.parse("tpcfree-glued(n=60, p=0.4, seed=3)")
    assert s.params == {"n": 60, "p": 0.4, "seed": 3}
    assert GeneratorSpec.parse("wheel(8, [0, 4])").params["hub_neighbors"] == (0, 4)
    for bad in ("nope(1)", "theta(1,2", "cycle(1,2)"):
        with pytest.raises(InputError):
            GeneratorSpec.parse(bad)


def test_theta_222_is_k23():
    g = generators.generate(GeneratorSpec.parse("theta(2,2,2)"))
    assert nx.is_isomorphic(to_nx(g), to_nx(k23()))


def test_prism_111_is_triangular_prism():
    g = generators.generate(GeneratorSpec.parse("prism(1,1,1)"))
    assert nx.is_isomorphic(to_nx(g), nx.circular_ladder_graph(3))


def test_gadget_length_checks():
    with pytest.raises(InputError):
        generators.theta(1, 2, 2)
    with pytest.raises(InputError):
        generators.pyramid(1, 1, 2)


def test_chordal_random_is_chordal():
    g = generators.generate(GeneratorSpec.parse("chordal-random(n=30, density=0.3, seed=7)"))
    assert g.n == 30 and is_chordal(g) and nx.is_connected(to_nx(g))


def test_generators_are_seeded():
    for spec in ("tpcfree-glued(50, 0.4, 9)", "tpcfree-wheel(30, 4)", "chordal-random(25, 0.5, 1)",
                 "tpcfree-random(12, 0.3, 2)"):
        a = generators.generate(GeneratorSpec.parse(spec))
        b = generators.generate(GeneratorSpec.parse(spec))
        assert emit_graph(a) == emit_graph(b)


def test_tpcfree_random_cap():
    with pytest.raises(InputError):
        generators.tpcfree_random(30, 0.3, 1)
