import numpy as np
import pytest

from nhc.errors import GraphError, MissingEdgeError, MissingNodeError
from nhc.graph import DynamicGraph


def assert_handshake(graph):
    assert sum(graph.degrees()) == 2 * graph.edge_count
    for u in graph.nodes:
        for v, w in graph.neighbors(u):
            assert (u, w) in graph.neighbors(v)


def test_add_node_is_idempotent():
    graph = DynamicGraph()
    graph.add_node(5)
    graph.add_node(5)
    assert graph.node_count == 1
    assert graph.edge_count == 0
    assert graph.neighbors(5) == []


def test_add_edge_creates_endpoints():
    graph = DynamicGraph()
    assert graph.add_edge(1, 2, 1.0) is None
    assert graph.node_count == 2
    assert graph.edge_count == 1
    assert graph.degree(1) == graph.degree(2) == 1
    assert graph.weight(2, 1) == 1.0


def test_readding_edge_reports_previous_weight():
    graph = DynamicGraph.from_edges([(1, 2, 1.0)])
    assert graph.add_edge(2, 1, 3.0) == 1.0
    assert graph.edge_count == 1
    assert graph.weight(1, 2) == 3.0


@pytest.mark.parametrize('u, v, w', [(1, 1, 1.0), (1, 2, 0.0), (1, 2, -1.0), (1, 2, float('inf')),
                                     (-1, 2, 1.0), (True, 2, 1.0), ('a', 2, 1.0)])
def test_add_edge_rejects_invalid_input(u, v, w):
    with pytest.raises(GraphError):
        DynamicGraph().add_edge(u, v, w)


def test_numpy_ids_are_accepted():
    graph = DynamicGraph()
    graph.add_edge(np.int64(3), np.int32(4))
    assert graph.nodes == [3, 4]
    assert all(type(u) is int for u in graph.nodes)


def test_karate_fixture(karate):
    assert karate.node_count == 34
    assert karate.edge_count == 78
    assert sum(karate.degrees()) == 156
    assert karate.degree(34) == 17
    assert karate.degree(1) == 16
    assert_handshake(karate)


def test_add_then_remove_restores_graph(karate):
    before = karate.copy()
    assert not karate.has_edge(1, 10)
    karate.add_edge(1, 10)
    assert karate != before
    assert karate.remove_edge(10, 1) == 1.0
    assert karate == before


def test_remove_missing_edge():
    graph = DynamicGraph.from_edges([(1, 2)])
    with pytest.raises(MissingEdgeError):
        graph.remove_edge(1, 3)
    with pytest.raises(KeyError):
        graph.remove_edge(2, 3)


def test_remove_node_returns_incident_edges(karate):
    removed = karate.remove_node(1)
    assert len(removed) == 16
    assert [v for _, v, _ in removed] == sorted(v for _, v, _ in removed)
    assert karate.node_count == 33
    assert karate.edge_count == 62
    assert_handshake(karate)


def test_remove_isolated_node():
    graph = DynamicGraph()
    graph.add_node(7)
    assert graph.remove_node(7) == []
    assert graph.node_count == 0


def test_removed_ids_are_not_reused():
    graph = DynamicGraph.from_edges([(1, 2)])
    graph.remove_node(1)
    with pytest.raises(GraphError):
        graph.add_node(1)
    with pytest.raises(GraphError):
        graph.add_edge(1, 2)


def test_missing_node_queries():
    graph = DynamicGraph()
    with pytest.raises(MissingNodeError):
        graph.degree(3)
    with pytest.raises(MissingNodeError):
        graph.neighbors(3)
    with pytest.raises(MissingNodeError):
        graph.remove_node(3)


def test_star_center_degree():
    graph = DynamicGraph.from_edges([(0, leaf) for leaf in range(5, 0, -1)])
    assert graph.degree(0) == 5
    assert [v for v, _ in graph.neighbors(0)] == [1, 2, 3, 4, 5]


def test_handshake_holds_through_mutations():
    rng = np.random.default_rng(7)
    graph = DynamicGraph()
    for _ in range(300):
        u, v = (int(x) for x in rng.choice(20, size=2, replace=False))
        if graph.has_node(u) and graph.has_node(v) and graph.has_edge(u, v):
            graph.remove_edge(u, v)
        else:
            graph.add_edge(u, v, float(rng.integers(1, 4)))
        assert_handshake(graph)


def test_edges_are_sorted_and_normalized():
    graph = DynamicGraph.from_edges([(3, 1), (2, 1, 2.5)])
    assert graph.edges() == [(1, 2, 2.5), (1, 3, 1.0)]
