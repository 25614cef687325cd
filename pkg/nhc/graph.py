import math
import numbers
from typing import List, Optional, Tuple

import networkx as nx

from .errors import GraphError, MissingEdgeError, MissingNodeError
from .types import NodeId


class DynamicGraph:
    """ Mutable undirected weighted graph with caller-supplied integer node ids.

    Adjacency is kept in a ``networkx.Graph`` (symmetric by construction, no
    parallel edges); this class adds the validation the clustering engine
    relies on: strictly positive weights, no self-loops, and node ids that are
    never reused within one graph's lifetime.
    """

    def __init__(self):
        self._g = nx.Graph()
        self._retired = set()

    @classmethod
    def from_edges(cls, edges, nodes=()):
        graph = cls()
        for u in nodes:
            graph.add_node(u)
        for edge in edges:
            graph.add_edge(*edge)
        return graph

    def add_node(self, u: NodeId):
        """ Idempotent; re-adding a removed id is an error. """
        if u in self._g:
            return
        self._g.add_node(self._as_id(u))

    def add_edge(self, u: NodeId, v: NodeId, w: float = 1.0) -> Optional[float]:
        """ Insert edge (u, v) or update its weight.

        :return: None for a new edge, otherwise the previous weight
            (the caller treats a different weight as remove + add)
        """
        u, v = self._as_id(u), self._as_id(v)
        if u == v:
            raise GraphError(f'Self-loop on node {u} is not allowed')
        w = float(w)
        if not w > 0 or math.isinf(w):
            raise GraphError(f'Edge ({u}, {v}) weight must be a positive finite number, got {w}')

        for node in (u, v):
            self.add_node(node)

        previous = self._g[u][v]['weight'] if self._g.has_edge(u, v) else None
        self._g.add_edge(u, v, weight=w)
        return previous

    def remove_edge(self, u: NodeId, v: NodeId) -> float:
        """ :return: the weight of the removed edge """
        if not self._g.has_edge(u, v):
            raise MissingEdgeError(f'No edge ({u}, {v})')
        w = self._g[u][v]['weight']
        self._g.remove_edge(u, v)
        return w

    def remove_node(self, u: NodeId) -> List[Tuple[NodeId, NodeId, float]]:
        """ Remove u with its incident edges.

        :return: the removed edges as (u, neighbor, weight), ascending by neighbor
        """
        self._require(u)
        removed = [(u, v, self._g[u][v]['weight']) for v in sorted(self._g[u])]
        self._g.remove_node(u)
        self._retired.add(u)
        return removed

    def degree(self, u: NodeId) -> int:
        self._require(u)
        return len(self._g[u])

    def neighbors(self, u: NodeId) -> List[Tuple[NodeId, float]]:
        """ :return: (neighbor, weight) pairs ascending by neighbor id """
        self._require(u)
        adj = self._g[u]
        return [(v, adj[v]['weight']) for v in sorted(adj)]

    def weight(self, u: NodeId, v: NodeId) -> float:
        try:
            return self._g[u][v]['weight']
        except KeyError:
            raise MissingEdgeError(f'No edge ({u}, {v})') from None

    def has_node(self, u: NodeId) -> bool:
        return u in self._g

    def has_edge(self, u: NodeId, v: NodeId) -> bool:
        return self._g.has_edge(u, v)

    @property
    def nodes(self) -> List[NodeId]:
        return sorted(self._g)

    @property
    def node_count(self) -> int:
        return self._g.number_of_nodes()

    @property
    def edge_count(self) -> int:
        return self._g.number_of_edges()

    def edges(self) -> List[Tuple[NodeId, NodeId, float]]:
        """ :return: (u, v, weight) with u < v, sorted """
        return sorted((min(u, v), max(u, v), w) for u, v, w in self._g.edges(data='weight'))

    def degrees(self) -> List[int]:
        return [d for _, d in sorted(self._g.degree())]

    def degree_map(self):
        return dict(self._g.degree())

    def to_networkx(self) -> nx.Graph:
        """ Read-only view for library algorithms (Dijkstra, Louvain, modularity). """
        return self._g.copy(as_view=True)

    def copy(self) -> 'DynamicGraph':
        other = DynamicGraph()
        other._g = self._g.copy()
        other._retired = set(self._retired)
        return other

    def __contains__(self, u):
        return u in self._g

    def __len__(self):
        return self._g.number_of_nodes()

    def __eq__(self, other):
        if not isinstance(other, DynamicGraph):
            return NotImplemented
        return nx.utils.graphs_equal(self._g, other._g)

    def __repr__(self):
        return f'DynamicGraph(nodes={self.node_count}, edges={self.edge_count})'

    def _as_id(self, u) -> NodeId:
        if isinstance(u, bool) or not isinstance(u, numbers.Integral) or u < 0:
            raise GraphError(f'Node ids must be non-negative integers, got {u!r}')
        u = int(u)
        if u in self._retired and u not in self._g:
            raise GraphError(f'Node id {u} was removed earlier and cannot be reused')
        return u

    def _require(self, u):
        if u not in self._g:
            raise MissingNodeError(f'No node {u}')
