import math
from collections import Counter

import numpy as np
import pytest

from nhc.datasets import load_karate_factions
from nhc.errors import MetricError
from nhc.graph import DynamicGraph
from nhc.metrics import (communities_of, evaluate, inter_sparseness, intra_density, modularity, nmi,
                         restrict, truth_partition, v_measure)
from nhc.types import UNASSIGNED


@pytest.fixture
def two_triangles():
    return DynamicGraph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)])


def naive_modularity(graph, partition):
    two_m = 2 * graph.edge_count
    total = 0.0
    for u in graph.nodes:
        for v in graph.nodes:
            if partition[u] != partition[v]:
                continue
            a_uv = 1.0 if u != v and graph.has_edge(u, v) else 0.0
            total += a_uv - graph.degree(u) * graph.degree(v) / two_m
    return total / two_m


def entropy(labels):
    counts = np.array(list(Counter(labels).values()), dtype=float)
    p = counts / counts.sum()
    return float(-(p * np.log(p)).sum())


def naive_nmi(a, b):
    n = len(a)
    joint = Counter(zip(a, b))
    ca, cb = Counter(a), Counter(b)
    mi = sum(c / n * math.log(c * n / (ca[x] * cb[y])) for (x, y), c in joint.items())
    h = (entropy(a) + entropy(b)) / 2
    return mi / h if h > 0 else 1.0


def test_two_triangles_modularity(two_triangles):
    split = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
    assert math.isclose(modularity(two_triangles, split), 5 / 14)
    assert math.isclose(modularity(two_triangles, {u: 0 for u in range(6)}), 0.0, abs_tol=1e-12)


def test_disjoint_triangles_modularity():
    graph = DynamicGraph.from_edges([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert math.isclose(modularity(graph, {u: u // 3 for u in range(6)}), 0.5)


def test_modularity_matches_pairwise_sum(karate):
    rng = np.random.default_rng(1)
    for _ in range(5):
        partition = {u: int(rng.integers(4)) for u in karate.nodes}
        assert math.isclose(modularity(karate, partition), naive_modularity(karate, partition),
                            abs_tol=1e-12)


def test_weighted_modularity():
    graph = DynamicGraph.from_edges([(0, 1, 5.0), (1, 2, 1.0), (2, 3, 5.0)])
    split = {0: 0, 1: 0, 2: 1, 3: 1}
    assert modularity(graph, split, weighted=True) > modularity(graph, split)


def test_modularity_needs_edges_and_full_cover(two_triangles):
    with pytest.raises(MetricError):
        modularity(DynamicGraph.from_edges((), nodes=[1, 2]), {1: 0, 2: 0})
    with pytest.raises(MetricError):
        modularity(two_triangles, {0: 0, 1: 0})


def test_unassigned_is_its_own_cluster(two_triangles):
    split = {0: 0, 1: 0, 2: 0, 3: UNASSIGNED, 4: UNASSIGNED, 5: UNASSIGNED}
    assert math.isclose(modularity(two_triangles, split), 5 / 14)


def test_density_scores(two_triangles):
    split = {0: 0, 1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
    assert intra_density(two_triangles, split) == 1.0
    assert inter_sparseness(two_triangles, split) == 1 / 9


def test_singletons_warn(two_triangles):
    with pytest.warns(RuntimeWarning, match='singleton'):
        assert intra_density(two_triangles, {u: u for u in range(6)}) == 0.0


def test_single_cluster_warns(two_triangles):
    with pytest.warns(RuntimeWarning, match='two clusters'):
        assert inter_sparseness(two_triangles, {u: 0 for u in range(6)}) == 0.0


def test_external_scores_against_naive():
    rng = np.random.default_rng(2)
    truth = {u: int(rng.integers(3)) for u in range(50)}
    pred = {u: int(rng.integers(4)) for u in range(50)}
    a = [truth[u] for u in range(50)]
    b = [pred[u] for u in range(50)]
    assert math.isclose(nmi(pred, truth), naive_nmi(a, b), abs_tol=1e-9)
    # V-measure with beta = 1 equals arithmetic NMI
    assert math.isclose(v_measure(pred, truth), nmi(pred, truth), abs_tol=1e-9)


def test_identical_partitions_score_one():
    truth = {0: 'a', 1: 'a', 2: 'b'}
    relabelled = {0: 7, 1: 7, 2: 3}
    assert v_measure(relabelled, truth) == pytest.approx(1.0)
    assert nmi(relabelled, truth) == pytest.approx(1.0)


def test_external_scores_need_same_nodes():
    with pytest.raises(MetricError):
        nmi({0: 1, 1: 1}, {0: 1, 2: 1})
    with pytest.raises(MetricError):
        v_measure({}, {})


def test_truth_partition_keeps_first_community():
    assert truth_partition([[1, 2, 3], [3, 4]]) == {1: 0, 2: 0, 3: 0, 4: 1}


def test_restrict():
    assert restrict({1: 0, 2: 1, 3: 1}, [3, 1]) == {3: 1, 1: 0}
    with pytest.raises(MetricError):
        restrict({1: 0}, [1, 2])


def test_communities_of():
    assert communities_of({3: 'b', 1: 'a', 2: 'b'}) == {'a': [1], 'b': [2, 3]}


def test_evaluate_karate_factions(karate):
    truth = truth_partition(load_karate_factions())
    scores = evaluate(truth, truth=truth, graph=karate)
    assert scores['clusters'] == 2
    assert scores['nodes'] == scores['scored_nodes'] == 34
    assert scores['v_measure'] == pytest.approx(1.0)
    assert 0.35 < scores['modularity'] < 0.40


def test_evaluate_needs_something():
    with pytest.raises(MetricError):
        evaluate({1: 0})


def naive_v_measure(truth, pred):
    n = len(truth)
    joint = Counter(zip(truth, pred))
    ct, cp = Counter(truth), Counter(pred)
    h_c, h_k = entropy(truth), entropy(pred)
    h_c_given_k = -sum(c / n * math.log(c / cp[k]) for (_, k), c in joint.items())
    h_k_given_c = -sum(c / n * math.log(c / ct[t]) for (t, _), c in joint.items())
    homogeneity = 1.0 if h_c == 0 else 1 - h_c_given_k / h_c
    completeness = 1.0 if h_k == 0 else 1 - h_k_given_c / h_k
    if homogeneity + completeness == 0:
        return 0.0
    return 2 * homogeneity * completeness / (homogeneity + completeness)


def naive_densities(graph, partition):
    nodes = graph.nodes
    intra = [0, 0]
    inter = [0, 0]
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            bucket = intra if partition[u] == partition[v] else inter
            bucket[0] += graph.has_edge(u, v)
            bucket[1] += 1
    return intra[0] / intra[1], inter[0] / inter[1]


def test_scores_match_brute_force_on_random_instances():
    rng = np.random.default_rng(12)
    for _ in range(100):
        n = int(rng.integers(6, 51))
        graph = DynamicGraph.from_edges((), nodes=range(n))
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < 0.15:
                    graph.add_edge(u, v)
        if graph.edge_count == 0:
            graph.add_edge(0, 1)

        k = int(rng.integers(2, 6))
        pred = {u: int(rng.integers(k)) for u in range(n)}
        pred[0], pred[1] = 0, 1
        pred[2] = pred[3] = 0
        truth = {u: int(rng.integers(3)) for u in range(n)}
        a = [truth[u] for u in range(n)]
        b = [pred[u] for u in range(n)]

        assert abs(modularity(graph, pred) - naive_modularity(graph, pred)) <= 1e-12
        assert abs(nmi(pred, truth) - naive_nmi(a, b)) <= 1e-12
        assert abs(v_measure(pred, truth) - naive_v_measure(a, b)) <= 1e-12
        density, sparseness = naive_densities(graph, pred)
        assert abs(intra_density(graph, pred) - density) <= 1e-12
        assert abs(inter_sparseness(graph, pred) - sparseness) <= 1e-12
