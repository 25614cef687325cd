""" Batch recomputation of the stabilized engine state, used to check incremental runs. """

import math
from typing import Dict, Iterable, List

import networkx as nx

from ..graph import DynamicGraph
from ..types import NodeId
from .tables import INF, NodeState, hub_table, memberships, same_distance


def batch_recompute(graph: DynamicGraph, hubs: Iterable[NodeId]) -> Dict[NodeId, NodeState]:
    """ Expected state of every node for the given hub set, from scratch.

    Distances come from a multi-source Dijkstra over all hubs. A node's table
    holds one entry per (nearest hub, predecessor on a shortest path), and the
    entry's alpha is the predecessor's normalized membership for that hub.
    Nodes are filled in order of increasing distance, so every predecessor is
    final before its successors read it.
    """
    g = graph.to_networkx()
    hubs = sorted(h for h in set(hubs) if h in g)
    dist = nx.multi_source_dijkstra_path_length(g, hubs, weight='weight') if hubs else {}

    tables = {h: hub_table(h) for h in hubs}
    for u in sorted(dist, key=lambda node: (dist[node], node)):
        if u in tables:
            continue
        table = {}
        for p in sorted(g[u]):
            if p in dist and same_distance(dist[p] + g[u][p]['weight'], dist[u]):
                for h, alpha in memberships(tables[p]).items():
                    table[(h, p)] = alpha
        tables[u] = table

    return {u: NodeState(float(dist[u]), tables[u]) if u in dist else NodeState(INF, {})
            for u in sorted(g)}


def diff_states(actual: Dict[NodeId, NodeState], expected: Dict[NodeId, NodeState],
                tol: float = 1e-9) -> List[str]:
    """ Human-readable differences between two state maps; empty when they agree.

    Distances must agree (exactly for infinite ones), tables must have the same
    (hub, parent) keys, and alphas must agree within ``tol``.
    """
    problems = []
    for u in sorted(set(actual) | set(expected)):
        if u not in actual:
            problems.append(f'node {u}: missing from the engine state')
            continue
        if u not in expected:
            problems.append(f'node {u}: not in the graph')
            continue

        got, want = actual[u], expected[u]
        if not same_distance(got.dist, want.dist):
            problems.append(f'node {u}: dist {got.dist} != {want.dist}')
            continue
        if set(got.table) != set(want.table):
            problems.append(f'node {u}: entries {got.tuples} != {want.tuples}')
            continue
        for key in sorted(want.table, key=str):
            if not math.isclose(got.table[key], want.table[key], rel_tol=0, abs_tol=tol):
                problems.append(f'node {u}: alpha{key} {got.table[key]} != {want.table[key]}')
    return problems
