import logging
from dataclasses import dataclass, field
from typing import Iterator, List, Optional

import networkx as nx
import numpy as np

from .errors import GraphError, ScriptError
from .graph import DynamicGraph
from .types import NodeId

logger = logging.getLogger(__name__)

ADD_EDGE = 'add_edge'
REMOVE_EDGE = 'remove_edge'
ADD_NODE = 'add_node'
REMOVE_NODE = 'remove_node'
EVENT_KINDS = (ADD_EDGE, REMOVE_EDGE, ADD_NODE, REMOVE_NODE)
EDGE_EVENTS = (ADD_EDGE, REMOVE_EDGE)

# Random pair draws before falling back to enumerating every non-edge.
_NON_EDGE_DRAWS = 64


@dataclass(frozen=True)
class HolmeKimParams:
    """ n nodes, m edges per new node, triangle-closure probability p. """
    n: int
    m: int
    p: float
    seed: int = 0

    def __post_init__(self):
        if not 1 <= self.m < self.n:
            raise GraphError(f'Holme-Kim needs 1 <= m < n, got m={self.m}, n={self.n}')
        if not 0.0 <= self.p <= 1.0:
            raise GraphError(f'Triangle probability must lie in [0, 1], got p={self.p}')


def holme_kim(params: HolmeKimParams) -> DynamicGraph:
    """ Grow a clustered power-law graph (Holme & Kim, 2002).

    Nodes 0..m-1 form an edgeless core. Each new node makes one preferential
    attachment step, then m-1 further steps, each of which is a triangle step
    with probability p (link to a not yet linked neighbor of the last
    preferential target) and a preferential step otherwise or when no such
    neighbor exists. Every new node therefore brings exactly m edges.
    """
    rng = np.random.default_rng(params.seed)
    n, m, p = params.n, params.m, params.p

    graph = DynamicGraph.from_edges((), nodes=range(n))
    # every endpoint once per incident edge, so uniform draws are degree-proportional
    repeated = list(range(m))

    for source in range(m, n):
        chosen = set()

        def attach(v):
            graph.add_edge(source, v)
            chosen.add(v)

        target = _preferential(rng, repeated, chosen)
        attach(target)
        while len(chosen) < m:
            if rng.random() < p:
                candidates = [v for v, _ in graph.neighbors(target) if v != source and v not in chosen]
                if candidates:
                    attach(candidates[rng.integers(len(candidates))])
                    continue
            target = _preferential(rng, repeated, chosen)
            attach(target)

        repeated.extend(sorted(chosen))
        repeated.extend([source] * m)

    logger.debug(f'Holme-Kim graph {params}: {graph.edge_count} edges')
    return graph


def _preferential(rng, repeated, exclude):
    while True:
        v = repeated[rng.integers(len(repeated))]
        if v not in exclude:
            return v


@dataclass(frozen=True)
class MutationEvent:
    kind: str
    u: NodeId
    v: Optional[NodeId] = None
    w: float = 1.0

    def __post_init__(self):
        if self.kind not in EVENT_KINDS:
            raise GraphError(f'Unknown event kind {self.kind!r}')
        if (self.kind in EDGE_EVENTS) != (self.v is not None):
            raise GraphError(f'Event {self.kind} takes {"two nodes" if self.kind in EDGE_EVENTS else "one node"}')

    def apply(self, graph: DynamicGraph):
        """ Apply to the graph alone (no clustering state). """
        if self.kind == ADD_EDGE:
            return graph.add_edge(self.u, self.v, self.w)
        if self.kind == REMOVE_EDGE:
            return graph.remove_edge(self.u, self.v)
        if self.kind == ADD_NODE:
            return graph.add_node(self.u)
        return graph.remove_node(self.u)


@dataclass
class MutationScript:
    events: List[MutationEvent] = field(default_factory=list)
    seed: Optional[int] = None

    def __len__(self):
        return len(self.events)

    def __iter__(self) -> Iterator[MutationEvent]:
        return iter(self.events)

    def __getitem__(self, item):
        return self.events[item]

    def replay(self, graph: DynamicGraph) -> DynamicGraph:
        for index, event in enumerate(self.events):
            try:
                event.apply(graph)
            except (GraphError, KeyError) as e:
                raise ScriptError(index, f'{event.kind} {event.u} {event.v}: {e}') from e
        return graph


def random_script(graph: DynamicGraph, n_add: int, n_remove: int, seed: int = 0) -> MutationScript:
    """ Uniformly sampled edge additions and removals, interleaved at random.

    Sampling runs against a working copy, so every removal targets an edge that
    exists at that point of the script (possibly one added earlier) and every
    addition targets a pair that is not connected at that point.
    """
    if n_add < 0 or n_remove < 0:
        raise ScriptError(0, f'Event counts must be >= 0, got add={n_add}, remove={n_remove}')

    rng = np.random.default_rng(seed)
    kinds = [ADD_EDGE] * n_add + [REMOVE_EDGE] * n_remove
    rng.shuffle(kinds)

    work = graph.copy()
    nodes = work.nodes
    edges = [(u, v) for u, v, _ in work.edges()]
    events = []

    for index, kind in enumerate(kinds):
        if kind == ADD_EDGE:
            u, v = _non_edge(rng, work, nodes, index)
            work.add_edge(u, v)
            edges.append((u, v))
        else:
            if not edges:
                raise ScriptError(index, 'no edge left to remove')
            i = int(rng.integers(len(edges)))
            u, v = edges[i]
            edges[i] = edges[-1]
            edges.pop()
            work.remove_edge(u, v)
        events.append(MutationEvent(kind, u, v))

    return MutationScript(events, seed=seed)


def _non_edge(rng, graph, nodes, index):
    if len(nodes) >= 2:
        for _ in range(_NON_EDGE_DRAWS):
            i, j = rng.choice(len(nodes), size=2, replace=False)
            u, v = sorted((nodes[i], nodes[j]))
            if not graph.has_edge(u, v):
                return u, v

    candidates = sorted(tuple(sorted(pair)) for pair in nx.non_edges(graph.to_networkx()))
    if not candidates:
        raise ScriptError(index, 'no unconnected node pair left to add')
    return candidates[rng.integers(len(candidates))]
