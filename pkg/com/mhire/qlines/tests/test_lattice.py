import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from com.mhire.qlines.services.lattice.lattice import (
    GramForm,
    configuration_graph,
    configuration_tuples,
    gram_from_graph,
    picard_rank_bound_check,
    quadrangle_free_enumeration,
    signature,
)


def test_single_line():
    g = nx.Graph()
    g.add_node(0)
    assert gram_from_graph(g).matrix == [[-2]]
    assert signature(gram_from_graph(g)) == signature(GramForm([[-2]]))
    assert signature(GramForm([[-2]])).n_minus == 1


def test_two_meeting_lines():
    g = nx.Graph([(0, 1)])
    assert gram_from_graph(g).matrix == [[-2, 1], [1, -2]]


def test_single_line_with_hyperplane_class():
    g = nx.Graph()
    g.add_node(0)
    form = gram_from_graph(g, with_h=True)
    assert form.matrix == [[-2, 1], [1, 4]]
    assert form.labels == ["0", "h"]
    sig = signature(form)
    assert (sig.rank, sig.n_plus, sig.n_minus) == (2, 1, 1)


@pytest.mark.parametrize("n", range(1, 12))
def test_path_is_negative_definite(n):
    sig = signature(gram_from_graph(nx.path_graph(n)))
    assert sig.n_minus == n
    assert sig.n_zero == 0


@pytest.mark.parametrize("n", range(3, 12))
def test_cycle_has_one_dimensional_kernel(n):
    sig = signature(gram_from_graph(nx.cycle_graph(n)), verify=True)
    assert (sig.n_plus, sig.n_minus, sig.n_zero) == (0, n - 1, 1)


def test_disjoint_lines_with_h():
    g = nx.empty_graph(5)
    sig = signature(gram_from_graph(g, with_h=True), verify=True)
    assert (sig.rank, sig.n_plus, sig.n_minus) == (6, 1, 5)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
    st.permutations(list(range(n))),
)))
def test_signature_ignores_vertex_order(data):
    n, edges, order = data
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((a, b) for a, b in edges if a != b)
    assert signature(gram_from_graph(g)) == signature(gram_from_graph(g, nodes=order))
    assert signature(gram_from_graph(g, with_h=True)) == signature(gram_from_graph(g, with_h=True, nodes=order))


def test_zero_matrix_and_hyperbolic_plane():
    sig = signature(GramForm([[0, 0], [0, 0]]))
    assert sig.n_zero == 2
    sig = signature(GramForm([[0, 1], [1, 0]]))
    assert (sig.n_plus, sig.n_minus) == (1, 1)


def test_gram_json_input():
    form = GramForm.from_json("[[-2, 1], [1, -2]]")
    assert form.is_symmetric()
    assert GramForm.from_json(form.to_json()).matrix == form.matrix
    with pytest.raises(ValueError):
        GramForm.from_json("[[1, 2, 3], [4, 5, 6]]")
    assert not GramForm([[0, 1], [2, 0]]).is_symmetric()


def test_rank_bound_check():
    assert picard_rank_bound_check(gram_from_graph(nx.empty_graph(3), with_h=True), 22)
    assert not picard_rank_bound_check(gram_from_graph(nx.empty_graph(22), with_h=True), 22)
    assert not picard_rank_bound_check(GramForm([[1, 0], [0, 1]]), 22)


@pytest.mark.parametrize("delta,count", [(22, 946), (20, 715)])
def test_configuration_tuple_count(delta, count):
    tuples = configuration_tuples(delta)
    assert len(tuples) == count
    assert len(set(tuples)) == count
    assert all(a + b + c + 2 * d == delta - 2 for a, b, c, d in tuples)


def test_configuration_graph_shape():
    g = configuration_graph(1, 2, 0, 1)
    assert g.number_of_nodes() == 3 + 1 + 2 + 2
    assert g.degree("l") == 3
    assert nx.shortest_path_length(g, "x0", "mj") == 2
    assert len(min(nx.cycle_basis(g), key=len)) == 5


def test_configurations_are_quadrangle_free():
    for values in [(0, 0, 0, 10), (20, 0, 0, 0), (3, 4, 5, 4)]:
        g = configuration_graph(*values)
        assert g.number_of_nodes() == 23
        assert not list(nx.chordless_cycles(g, length_bound=4))


@pytest.mark.parametrize("delta", [20, 22])
def test_no_configuration_fits_the_lattice(delta):
    result = quadrangle_free_enumeration(delta)
    assert len(result.rows) == len(configuration_tuples(delta))
    assert result.counterexamples == []
    assert result.min_rank > delta


def test_lines_alone_can_have_low_rank():
    result = quadrangle_free_enumeration(22)
    row = next(r for r in result.rows if (r.a, r.b, r.c, r.d) == (8, 6, 6, 0))
    assert row.lines_rank == 22
    assert row.rank == 24
    assert row in result.flagged


def test_enumeration_csv():
    result = quadrangle_free_enumeration(20)
    lines = result.to_csv().splitlines()
    assert lines[0] == "a,b,c,d,rank,lines_rank"
    assert len(lines) == 716


def test_enumeration_rejects_other_delta():
    with pytest.raises(ValueError):
        quadrangle_free_enumeration(21)
