import json
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from blockspec.errors import (
    ConflictingLoopWeights,
    InvalidSpec,
    LoopsNotRepresentable,
    MalformedGraph6,
    VertexOutOfRange,
)
from blockspec.graph import (
    Bridge,
    Coalescence,
    DisjointUnion,
    Explicit,
    PendantPath,
    as_fraction,
    attach_pendant_path,
    bridge,
    build,
    coalesce,
    complete_graph,
    cycle_graph,
    delete,
    disjoint_union,
    empty_graph,
    format_fraction,
    graph,
    induced_delete,
    parse_edgelist_json,
    parse_graph6,
    path_graph,
    star_graph,
    write_dot,
    write_edgelist_json,
    write_graph6,
)

from conftest import simple_graphs


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_edges_are_normalized_and_zero_loops_dropped():
    g = graph(3, [(2, 0), (0, 2), (1, 0)], {1: 0, 2: Fraction(1, 2)})
    assert g.sorted_edges() == [(0, 1), (0, 2)]
    assert g.loops == ((2, Fraction(1, 2)),)
    assert g.loop(0) == 0


@pytest.mark.parametrize("edges", [[(0, 3)], [(-1, 0)]])
def test_out_of_range_edges(edges):
    with pytest.raises(VertexOutOfRange):
        graph(3, edges)


def test_self_pair_rejected():
    with pytest.raises(ValueError):
        graph(2, [(1, 1)])


def test_floats_are_not_accepted_as_weights():
    with pytest.raises(TypeError):
        as_fraction(0.5)
    assert format_fraction(Fraction(-3, 2)) == "-3/2"
    assert format_fraction(Fraction(2)) == "2/1"


def test_coalescence_of_two_edges_is_p3():
    g = build(Coalescence(complete_graph(2), complete_graph(2), 1, 0))
    assert (g.n, g.num_edges) == (3, 2)
    assert nx.is_isomorphic(to_nx(g), nx.path_graph(3))


def test_pendant_path_spec():
    g = build(PendantPath(complete_graph(3), 0, 2))
    assert (g.n, g.num_edges) == (5, 5)
    assert g.degree(4) == 1


def test_disjoint_union_of_triangles():
    g = build(DisjointUnion((complete_graph(3), complete_graph(3))))
    assert (g.n, g.num_edges, len(g.components)) == (6, 6, 2)


def test_bridge_numbering():
    g = build(Bridge(complete_graph(3), 2, complete_graph(3), 0))
    assert g.has_edge(2, 3) and g.num_edges == 7


def test_explicit_spec_and_vertex_checks():
    g = build(Explicit(2, ((0, 1),), {0: Fraction(1, 2)}))
    assert g.loop(0) == Fraction(1, 2)
    with pytest.raises(VertexOutOfRange):
        build(Coalescence(complete_graph(2), complete_graph(2), 5, 0))


def test_coalescence_loop_conflict():
    a = complete_graph(2, {0: 1})
    b = complete_graph(2, {0: 2})
    with pytest.raises(ConflictingLoopWeights):
        coalesce(a, 0, b, 0)
    # equal weights, or a weight on one side only, merge fine
    assert coalesce(a, 0, complete_graph(2, {0: 1}), 0).loop(0) == 1
    assert coalesce(a, 1, b, 0).loop(1) == 2


@pytest.mark.parametrize(
    "g, drop, expected",
    [
        (complete_graph(3), {0}, complete_graph(2)),
        (path_graph(4), {0, 3}, path_graph(2)),
    ],
)
def test_induced_delete(g, drop, expected):
    h, mapping = induced_delete(g, drop)
    assert h == expected
    assert sorted(mapping) == sorted(set(range(g.n)) - drop)


def test_induced_delete_keeps_order_and_loops():
    g = graph(4, [(0, 1), (1, 2), (2, 3)], {3: 5})
    h, mapping = induced_delete(g, {1})
    assert mapping == {0: 0, 2: 1, 3: 2}
    assert h.sorted_edges() == [(1, 2)] and h.loop(2) == 5
    with pytest.raises(VertexOutOfRange):
        delete(g, 7)


def test_cycle_with_triangle_minus_the_tail_is_c5():
    from blockspec.fixtures import load_fixture

    g = load_fixture("cycle_bridge_9").graph
    h, _ = induced_delete(g, {5, 6, 7, 8})
    assert nx.is_isomorphic(to_nx(h), nx.cycle_graph(5))


# --- graph6 -----------------------------------------------------------------


def test_graph6_small_strings():
    assert parse_graph6("A_") == complete_graph(2)
    # "B_" is three vertices with the single edge 01
    g = parse_graph6("B_")
    assert (g.n, g.sorted_edges()) == (3, [(0, 1)])
    assert write_graph6(complete_graph(3)) == "Bw"
    assert parse_graph6(">>graph6<<Bw") == complete_graph(3)
    assert write_graph6(empty_graph(1)) == "@"
    assert parse_graph6("@") == empty_graph(1)
    assert write_graph6(graph(0)) == "?"


@given(simple_graphs(max_n=12))
def test_graph6_matches_networkx_encoder(g):
    expected = nx.to_graph6_bytes(to_nx(g), header=False).decode().strip()
    assert write_graph6(g) == expected
    assert parse_graph6(expected) == g


def test_graph6_long_size_field():
    g = path_graph(70)
    text = write_graph6(g)
    assert text[0] == "~"
    assert text == nx.to_graph6_bytes(nx.path_graph(70), header=False).decode().strip()
    assert parse_graph6(text) == g


@pytest.mark.parametrize("bad", ["", "Bx", "B", "Bww", "B\x7f", "~??"])
def test_graph6_malformed(bad):
    with pytest.raises(MalformedGraph6):
        parse_graph6(bad)


def test_graph6_rejects_loops():
    with pytest.raises(LoopsNotRepresentable):
        write_graph6(complete_graph(2, {0: Fraction(1, 2)}))


# --- JSON and DOT --------------------------------------------------------------


def test_edgelist_json_roundtrip_with_loops():
    g = graph(3, [(0, 1), (1, 2)], {0: Fraction(-3, 2), 2: 4})
    text = write_edgelist_json(g)
    assert json.loads(text)["loops"] == {"0": "-3/2", "2": "4/1"}
    assert parse_edgelist_json(text) == g


@pytest.mark.parametrize("bad", ["{", '{"edges": []}', '{"n": 2, "edges": [[0]]}', '{"n": 2, "loops": {"0": "1/0"}}'])
def test_edgelist_json_errors(bad):
    with pytest.raises(InvalidSpec):
        parse_edgelist_json(bad)


def test_dot_output():
    k2 = write_dot(complete_graph(2))
    assert k2.count("--") == 1
    looped = write_dot(graph(2, [(0, 1)], {1: -2}))
    assert "loop=-2" in looped
    assert 'loop="1/2"' in write_dot(graph(1, [], {0: Fraction(1, 2)}))
    assert write_dot(graph(0)) == "graph G {\n}\n"
    labelled = write_dot(complete_graph(2), labels={0: "a"})
    assert 'label="a"' in labelled


# --- constructors -----------------------------------------------------------------


def test_named_constructors():
    assert nx.is_isomorphic(to_nx(cycle_graph(5)), nx.cycle_graph(5))
    assert nx.is_isomorphic(to_nx(star_graph(3)), nx.star_graph(3))
    assert complete_graph(4).num_edges == 6


@given(simple_graphs(max_n=6), simple_graphs(max_n=6), st.data())
def test_coalesce_and_bridge_counts(g1, g2, data):
    if g1.n == 0 or g2.n == 0:
        return
    v1 = data.draw(st.integers(0, g1.n - 1))
    v2 = data.draw(st.integers(0, g2.n - 1))
    c = coalesce(g1, v1, g2, v2)
    assert c.n == g1.n + g2.n - 1 and c.num_edges == g1.num_edges + g2.num_edges
    b = bridge(g1, v1, g2, v2)
    assert b.n == g1.n + g2.n and b.num_edges == g1.num_edges + g2.num_edges + 1
    u = disjoint_union(g1, g2)
    assert len(u.components) == len(g1.components) + len(g2.components)


@given(simple_graphs(max_n=7), st.randoms(use_true_random=False))
def test_relabel_is_isomorphic(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    assert nx.is_isomorphic(to_nx(g.relabel(perm)), to_nx(g))


def test_attach_pendant_path_zero_length_is_identity():
    g = complete_graph(3)
    assert attach_pendant_path(g, 1, 0) == g
