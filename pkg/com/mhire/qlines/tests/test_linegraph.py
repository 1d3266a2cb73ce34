import json

import networkx as nx
import pytest

from com.mhire.qlines.services.linegraph.linegraph import (
    ELLIPTIC,
    INDEFINITE,
    PARABOLIC,
    NotConnected,
    classify_subgraph,
    dynkin,
    find_cycles,
    find_parabolic,
    graph_checks,
    graph_from_edges,
    is_quadrangle_free,
    is_triangle_free,
    milnor_number,
    span_and_valency,
    to_edge_list,
    to_json,
    valencies,
)


def from_nx(g: nx.Graph):
    return graph_from_edges(g.number_of_nodes(), g.edges)


def whole(g):
    return classify_subgraph(g, range(len(g)))


@pytest.mark.parametrize("name,n", [("A", 1), ("A", 5), ("D", 4), ("D", 7), ("E", 6), ("E", 7), ("E", 8)])
def test_dynkin_diagrams_are_elliptic(name, n):
    c = whole(from_nx(dynkin(name, n)))
    assert c.classification == ELLIPTIC
    assert c.name == f"{name}{n}"
    assert c.signature.n_minus == n


@pytest.mark.parametrize("name,n", [("~A", 2), ("~A", 4), ("~D", 4), ("~D", 6), ("~E", 6), ("~E", 7), ("~E", 8)])
def test_extended_diagrams_are_parabolic(name, n):
    template = dynkin(name, n)
    assert template.number_of_nodes() == n + 1
    c = whole(from_nx(template))
    assert c.classification == PARABOLIC
    assert c.name == f"{name}{n}"
    assert c.signature.n_zero == 1


def test_star_with_five_arms_is_indefinite():
    c = whole(from_nx(nx.star_graph(5)))
    assert c.classification == INDEFINITE
    assert c.name is None
    assert c.signature.n_plus == 1


def test_unknown_dynkin_name():
    with pytest.raises(ValueError):
        dynkin("~E", 9)
    with pytest.raises(ValueError):
        dynkin("B", 3)


def test_disconnected_subgraph_rejected():
    g = graph_from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(NotConnected):
        classify_subgraph(g, [0, 1, 2, 3])
    with pytest.raises(NotConnected):
        classify_subgraph(g, [])


def test_cycles_of_a_square():
    g = from_nx(nx.cycle_graph(4))
    assert find_cycles(g, 3) == []
    assert find_cycles(g, 4) == [(0, 1, 2, 3)]
    assert is_triangle_free(g)
    assert not is_quadrangle_free(g)
    with pytest.raises(ValueError):
        find_cycles(g, 5)


def test_complete_graph_has_triangles_but_no_induced_square():
    g = from_nx(nx.complete_graph(4))
    assert len(find_cycles(g, 3)) == 4
    assert find_cycles(g, 4) == []


def test_pentagon_is_quadrangle_free():
    g = from_nx(nx.cycle_graph(5))
    assert is_quadrangle_free(g)
    parabolic = find_parabolic(g)
    assert parabolic.name == "~A4"
    assert parabolic.vertices == [0, 1, 2, 3, 4]


def test_find_parabolic_without_cycles():
    tree = from_nx(dynkin("~D", 5))
    assert find_parabolic(tree).name == "~D5"
    assert find_parabolic(from_nx(nx.path_graph(6))) is None


def test_span_and_valency():
    g = from_nx(nx.path_graph(5))
    span, v = span_and_valency(g, [1, 2])
    assert span == [0, 1, 2, 3]
    assert v == 2


def test_milnor_number_is_rank():
    g = from_nx(nx.cycle_graph(6))
    assert milnor_number(g) == 5
    assert milnor_number(g, [0, 1, 2]) == 3


def test_valencies_count_every_meeting():
    g = graph_from_edges(3, [(0, 1), (0, 2)])
    assert valencies(g) == [(2, 2), (1, 1), (1, 1)]


def test_graph_checks_count_lines_without_parabolic():
    assert graph_checks(graph_from_edges(21, [])) == []
    bad = graph_checks(graph_from_edges(22, []))
    assert len(bad) == 1
    assert "parabolic" in bad[0]


def test_graph_checks_bound_by_parabolic_span():
    # pentagon plus isolated lines: v(D) = 0, so at most 24 lines
    g = graph_from_edges(24, [(i, (i + 1) % 5) for i in range(5)])
    assert graph_checks(g) == []
    g = graph_from_edges(30, [(i, (i + 1) % 5) for i in range(5)])
    assert any("v(D) + 24" in b for b in graph_checks(g))


def test_exports():
    g = graph_from_edges(3, [(1, 0), (1, 2)])
    assert to_edge_list(g) == "0 1\n1 2\n"
    assert json.loads(to_json(g)) == {"0": [1], "1": [0, 2], "2": [1]}
