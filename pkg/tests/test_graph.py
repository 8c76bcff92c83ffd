from __future__ import annotations

import pytest
from hypothesis import given, settings

from amflood.graph import (DisconnectedGraphError, Graph, GraphError, diameter,
                           distance_profile, ec_nodes, gen_named, gen_random,
                           is_bipartite, is_connected, parse_edge_list,
                           render_edge_list)

from conftest import connected_graph


# ---------------------------------------------------------------- parsing

def test_parse_numeric_path():
    g = parse_edge_list("0 1\n1 2")
    assert g.n == 3 and g.m == 2
    assert g.edges == ((0, 1), (1, 2))
    assert g.labels is None


def test_parse_labeled_triangle():
    g = parse_edge_list("a b\nb c\nc a")
    assert g.n == 3 and g.m == 3
    assert g.labels == ("a", "b", "c")
    assert g.resolve("b") == 1


def test_parse_rejects_self_loop_with_line_number():
    with pytest.raises(GraphError, match="line 1"):
        parse_edge_list("0 0")
    with pytest.raises(GraphError, match="line 3"):
        parse_edge_list("0 1\n1 2\nx x")


def test_parse_rejects_malformed_token_count():
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_list("0 1\n0 1 2")


def test_parse_skips_comments_and_blanks_and_collapses_duplicates():
    g = parse_edge_list("# header\n\n0 1\n1 0\n 1 2 \n")
    assert g.n == 3 and g.m == 2


def test_parse_empty_rejected():
    with pytest.raises(GraphError):
        parse_edge_list("# nothing here\n")


def test_render_round_trip_is_id_identical():
    g = gen_named("petersen")
    back = parse_edge_list(render_edge_list(g))
    assert back.n == g.n and back.edges == g.edges


@settings(max_examples=60)
@given(connected_graph())
def test_render_round_trip_random(g):
    back = parse_edge_list(render_edge_list(g))
    assert back.n == g.n and back.edges == g.edges


def test_graph_validates_construction():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 5)])
    with pytest.raises(GraphError):
        Graph(n=0, edges=())


# ------------------------------------------------------------- generators

def test_hypercube3():
    g = gen_named("hypercube", 3)
    assert g.n == 8 and g.m == 12
    assert all(g.degree(v) == 3 for v in range(8))
    assert is_bipartite(g).bipartite


def test_petersen():
    g = gen_named("petersen")
    assert g.n == 10 and g.m == 15
    assert all(g.degree(v) == 3 for v in range(10))
    assert diameter(g) == 2
    assert not is_bipartite(g).bipartite


def test_cycle6():
    g = gen_named("cycle", 6)
    assert is_bipartite(g).bipartite
    assert diameter(g) == 3


@pytest.mark.parametrize("kind,param", [
    ("hypercube", 0), ("cycle", 2), ("path", 1), ("complete", 1),
])
def test_generator_minimums(kind, param):
    with pytest.raises(GraphError):
        gen_named(kind, param)


def test_unknown_kind():
    with pytest.raises(GraphError):
        gen_named("torus", 3)


def test_gen_random_extremes():
    assert gen_random(5, 0.0, 9).m == 0
    k4 = gen_random(4, 1.0, 9)
    assert k4.m == 6


def test_gen_random_deterministic():
    a = gen_random(20, 0.3, 42)
    b = gen_random(20, 0.3, 42)
    assert a.edges == b.edges
    assert gen_random(20, 0.3, 43).edges != a.edges


# ----------------------------------------------------------------- oracles

def test_distance_profile_path_end():
    g = gen_named("path", 4)
    prof = distance_profile(g, 0)
    assert prof.eccentricity == 3
    assert [len(layer) for layer in prof.layers] == [1, 1, 1, 1]


def test_distance_profile_petersen():
    prof = distance_profile(gen_named("petersen"), 3)
    assert prof.eccentricity == 2
    assert [len(layer) for layer in prof.layers] == [1, 3, 6]


def test_distance_profile_cycle5():
    prof = distance_profile(gen_named("cycle", 5), 1)
    assert prof.eccentricity == 2
    assert [len(layer) for layer in prof.layers] == [1, 2, 2]


def test_disconnected_rejected():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert not is_connected(g)
    with pytest.raises(DisconnectedGraphError):
        distance_profile(g, 0)
    with pytest.raises(DisconnectedGraphError):
        diameter(g)
    with pytest.raises(DisconnectedGraphError):
        ec_nodes(g, 0)


def test_diameter_values():
    assert diameter(gen_named("hypercube", 3)) == 3
    assert diameter(gen_named("petersen")) == 2
    assert diameter(gen_named("complete", 5)) == 1


def test_bipartite_hypercube_coloring_is_bit_parity():
    res = is_bipartite(gen_named("hypercube", 3))
    assert res.bipartite
    parity = tuple(bin(v).count("1") & 1 for v in range(8))
    flipped = tuple(c ^ 1 for c in parity)
    assert res.coloring in (parity, flipped)


def test_bipartite_petersen_odd_cycle_witness():
    g = gen_named("petersen")
    res = is_bipartite(g)
    assert not res.bipartite
    cyc = res.odd_cycle
    assert len(cyc) % 2 == 1 and len(cyc) >= 3
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        assert (min(u, v), max(u, v)) in g.edge_set


def test_ec_nodes_even_cycle_empty():
    rep = ec_nodes(gen_named("cycle", 6), 2)
    assert rep.ec_nodes == frozenset()
    assert rep.witness_edges == ()


def test_ec_nodes_triangle():
    g = parse_edge_list("a b\nb c\nc a")
    rep = ec_nodes(g, g.resolve("b"))
    assert rep.ec_nodes == frozenset({g.resolve("a"), g.resolve("c")})
    assert rep.witness_edges == ((0, 2),)


def test_ec_nodes_cycle5_antipodal_layer():
    # the two nodes in the far layer are adjacent, hence both ec
    g = gen_named("cycle", 5)
    prof = distance_profile(g, 1)
    far = prof.layers[2]
    rep = ec_nodes(g, 1)
    assert rep.ec_nodes == far
    (e,) = rep.witness_edges
    assert set(e) == set(far)


# -------------------------------------------------------------- properties

@settings(max_examples=80)
@given(connected_graph())
def test_layers_partition_nodes(g):
    for source in range(g.n):
        prof = distance_profile(g, source)
        assert len(prof.layers) == prof.eccentricity + 1
        seen = [v for layer in prof.layers for v in layer]
        assert sorted(seen) == list(range(g.n))


@settings(max_examples=80)
@given(connected_graph())
def test_bipartite_iff_no_ec_nodes_every_source(g):
    bip = is_bipartite(g).bipartite
    for source in range(g.n):
        assert bip == (not ec_nodes(g, source).ec_nodes)


@settings(max_examples=60)
@given(connected_graph())
def test_diameter_is_max_eccentricity(g):
    assert diameter(g) == max(distance_profile(g, s).eccentricity
                              for s in range(g.n))
