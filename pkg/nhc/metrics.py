"""
Clustering quality measures.

Graph-based scores (modularity, intra-cluster density, inter-cluster
sparseness) take a DynamicGraph and a crisp partition covering all of its
nodes. External scores (V-measure, NMI) compare two partitions over the same
node set. UNASSIGNED is scored as a label of its own.
"""

import logging
import warnings
from collections import defaultdict
from typing import Dict, Iterable, List, Optional, Sequence

import networkx as nx
from sklearn.metrics import normalized_mutual_info_score, v_measure_score

from .errors import MetricError
from .graph import DynamicGraph
from .types import Label, NodeId, Partition

logger = logging.getLogger(__name__)


def communities_of(partition: Partition) -> Dict[Label, List[NodeId]]:
    """ label -> sorted members """
    groups = defaultdict(list)
    for u in sorted(partition):
        groups[partition[u]].append(u)
    return dict(groups)


def _check_covers(graph: DynamicGraph, partition: Partition):
    missing = [u for u in graph.nodes if u not in partition]
    if missing:
        raise MetricError(f'Partition misses {len(missing)} of {graph.node_count} graph nodes, '
                          f'e.g. {missing[:5]}')


def modularity(graph: DynamicGraph, partition: Partition, weighted: bool = False) -> float:
    """ Newman-Girvan modularity Q = sum_c (e_cc - a_c^2).

    :param weighted: (bool)  - use edge weight fractions instead of edge counts
    """
    if graph.edge_count == 0:
        raise MetricError('Modularity is undefined on a graph without edges')
    _check_covers(graph, partition)

    restricted = {u: partition[u] for u in graph.nodes}
    communities = [set(members) for members in communities_of(restricted).values()]
    return float(nx.community.modularity(graph.to_networkx(), communities,
                                         weight='weight' if weighted else None))


def _aligned_labels(pred: Partition, truth: Partition):
    if not truth:
        raise MetricError('Cannot score an empty node set')
    if set(pred) != set(truth):
        raise MetricError(f'Node sets differ: {len(pred)} predicted, {len(truth)} in truth, '
                          f'{len(set(pred) & set(truth))} shared')
    nodes = sorted(truth)
    return [truth[u] for u in nodes], [pred[u] for u in nodes]


def v_measure(pred: Partition, truth: Partition) -> float:
    """ Harmonic mean of homogeneity and completeness. """
    labels_true, labels_pred = _aligned_labels(pred, truth)
    return float(v_measure_score(labels_true, labels_pred))


def nmi(pred: Partition, truth: Partition) -> float:
    """ Mutual information normalized by the arithmetic mean of both entropies. """
    labels_true, labels_pred = _aligned_labels(pred, truth)
    return float(normalized_mutual_info_score(labels_true, labels_pred, average_method='arithmetic'))


def _pair_counts(graph: DynamicGraph, partition: Partition):
    _check_covers(graph, partition)
    sizes = [len(members) for members in communities_of({u: partition[u] for u in graph.nodes}).values()]
    n = graph.node_count
    intra_pairs = sum(s * (s - 1) // 2 for s in sizes)
    inter_pairs = n * (n - 1) // 2 - intra_pairs

    intra_edges = sum(1 for u, v, _ in graph.edges() if partition[u] == partition[v])
    inter_edges = graph.edge_count - intra_edges
    return intra_edges, intra_pairs, inter_edges, inter_pairs


def intra_density(graph: DynamicGraph, partition: Partition) -> float:
    """ Edges inside clusters over node pairs inside clusters. """
    intra_edges, intra_pairs, _, _ = _pair_counts(graph, partition)
    if intra_pairs == 0:
        warnings.warn('Every cluster is a singleton; intra-cluster density set to 0',
                      RuntimeWarning)
        return 0.0
    return intra_edges / intra_pairs


def inter_sparseness(graph: DynamicGraph, partition: Partition) -> float:
    """ Edges between clusters over node pairs between clusters. """
    _, _, inter_edges, inter_pairs = _pair_counts(graph, partition)
    if inter_pairs == 0:
        warnings.warn('Fewer than two clusters; inter-cluster sparseness set to 0', RuntimeWarning)
        return 0.0
    return inter_edges / inter_pairs


def truth_partition(communities: Sequence[Iterable[NodeId]]) -> Partition:
    """ Reduce a ground-truth cover to a partition: every node keeps the first
    community that lists it, labelled by that community's position. """
    partition = {}
    for label, members in enumerate(communities):
        for u in members:
            partition.setdefault(u, label)
    return partition


def restrict(partition: Partition, nodes: Iterable[NodeId]) -> Partition:
    """ Keep only ``nodes``; every one of them must be labelled. """
    nodes = list(nodes)
    missing = [u for u in nodes if u not in partition]
    if missing:
        raise MetricError(f'{len(missing)} of {len(nodes)} nodes have no predicted label, '
                          f'e.g. {sorted(missing)[:5]}')
    return {u: partition[u] for u in nodes}


def evaluate(pred: Partition, truth: Optional[Partition] = None,
             graph: Optional[DynamicGraph] = None) -> Dict[str, float]:
    """ Every score the inputs allow, keyed by name.

    Graph scores need ``graph``; V-measure and NMI need ``truth`` and are taken
    over the truth's nodes only.
    """
    if truth is None and graph is None:
        raise MetricError('Nothing to evaluate against: give a ground truth, a graph, or both')

    scores = {'clusters': len(set(pred.values())), 'nodes': len(pred)}
    if graph is not None:
        scores['modularity'] = modularity(graph, pred)
        scores['intra_density'] = intra_density(graph, pred)
        scores['inter_sparseness'] = inter_sparseness(graph, pred)
    if truth is not None:
        scored = restrict(pred, truth)
        if len(scored) < len(pred):
            logger.info(f'Scoring {len(scored)} of {len(pred)} nodes (the ones the ground truth covers)')
        scores['scored_nodes'] = len(scored)
        scores['v_measure'] = v_measure(scored, truth)
        scores['nmi'] = nmi(scored, truth)
    return scores
