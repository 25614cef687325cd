import logging
import math
from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from ..errors import EngineStateError, MissingNodeError, StabilizationError
from ..graph import DynamicGraph
from ..types import UNASSIGNED, Cover, NodeId, Partition
from .queue import Message, MessageQueue
from .tables import (INF, NodeState, Table, hub_table, hub_weights, memberships,
                     normalized_payload, same_distance)

logger = logging.getLogger(__name__)

CAP_PER_EDGE = 64


@dataclass
class EventStats:
    messages_processed: int = 0

    def __add__(self, other):
        return EventStats(self.messages_processed + other.messages_processed)


class NHCEngine:
    """ Nearest Hub Clustering over a :class:`DynamicGraph`.

    Every node keeps a hub distance ``d`` and a table of (hub, parent, alpha)
    tuples, all realized at ``d``. Nodes exchange their normalized tables with
    neighbors; graph mutations and hub changes are handled by re-running the
    message exchange from the touched nodes until no table changes.

    The engine does not mutate the graph and does not apply a hub policy by
    itself: callers mutate the graph first, then call the matching ``on_*``
    hook (or ``promote_hub`` / ``demote_hub``).

    :param graph: the graph the engine reads
    :param ordered: (bool)  - distance-ordered message queue; FIFO otherwise
    """

    def __init__(self, graph: DynamicGraph, ordered: bool = True):
        self.graph = graph
        self.ordered = ordered
        self.hubs = set()
        self._dist: Dict[NodeId, float] = {}
        self._tables: Dict[NodeId, Table] = {}
        self._queue = MessageQueue(ordered=ordered)
        self.init_stats = EventStats()

    @classmethod
    def initialize(cls, graph: DynamicGraph, policy=None, hubs: Optional[Iterable[NodeId]] = None,
                   ordered: bool = True) -> 'NHCEngine':
        """ Seed every hub (chosen by ``policy`` or given explicitly) and stabilize. """
        engine = cls(graph, ordered=ordered)
        if hubs is None:
            hubs = policy.hub_set(graph) if policy is not None else ()

        for hub in sorted(hubs):
            engine._seed_hub(hub)
        engine.init_stats = engine.stabilize()

        logger.info(f'Initialized {len(engine.hubs)} hubs on {graph.node_count} nodes / '
                    f'{graph.edge_count} edges with {engine.init_stats.messages_processed} messages')
        return engine

    # State access

    def dist(self, u: NodeId) -> float:
        return self._dist.get(u, INF)

    def table(self, u: NodeId) -> Table:
        return dict(self._tables.get(u, {}))

    def state(self, u: NodeId) -> NodeState:
        return NodeState(self.dist(u), self.table(u))

    def states(self) -> Dict[NodeId, NodeState]:
        return {u: self.state(u) for u in self.graph.nodes}

    def pending_messages(self):
        return self._queue.pending()

    def is_hub(self, u: NodeId) -> bool:
        return u in self.hubs

    # Message processing

    def process_message(self, message: Message) -> bool:
        """ Apply one message at its target.

        :return: False when the message refers to a vanished edge and was dropped
        """
        x, y = message.source, message.target
        if not self.graph.has_edge(x, y):
            return False

        omega = self.graph.weight(x, y)
        d = self.dist(y)
        d_new = message.dist
        table = self._tables.get(y, {})
        from_parent = any(p == x for _, p in table)

        if d_new < d and not same_distance(d_new, d):
            # closer route: x becomes the only parent
            self._adopt(y, message)

        elif not math.isinf(d) and same_distance(d_new, d):
            # equal route: replace whatever x supplied before
            merged = {k: a for k, a in table.items() if k[1] != x}
            merged.update({(h, x): a for h, a in message.payload})
            if merged != table:
                self._set(y, d, merged)
                self._queue.discard(y, x)
                self._broadcast(y, exclude=x)

        elif from_parent:
            # the parent got worse: drop what it supplied
            if math.isinf(d_new) or any(p != x for _, p in table):
                self._drop_parent(y, x)
            else:
                # x was the only parent and its worse route is still the best known
                self._adopt(y, message)

        elif not math.isinf(d) and d_new > d + omega and not same_distance(d_new, d + omega):
            # the sender is strictly farther than we are: offer our route
            self._send(y, x)

        return True

    def stabilize(self) -> EventStats:
        """ Deliver open messages until the queue is empty. """
        cap = max(CAP_PER_EDGE * self.graph.edge_count, CAP_PER_EDGE)
        processed = 0
        while True:
            message = self._queue.pop()
            if message is None:
                break
            if processed >= cap:
                pending = [(m.source, m.target, m.dist) for m in [message] + self._queue.pending()]
                raise StabilizationError(processed, cap, pending)
            if self.process_message(message):
                processed += 1
        return EventStats(processed)

    # Mutation hooks (graph already updated by the caller)

    def on_edge_added(self, u: NodeId, v: NodeId) -> EventStats:
        self._send(u, v)
        self._send(v, u)
        return self.stabilize()

    def on_edge_removed(self, u: NodeId, v: NodeId) -> EventStats:
        self._queue.discard_edge(u, v)
        self._drop_parent(u, v)
        self._drop_parent(v, u)
        return self.stabilize()

    def on_node_removed(self, u: NodeId, removed_edges) -> EventStats:
        self.hubs.discard(u)
        self._dist.pop(u, None)
        self._tables.pop(u, None)
        for _, v, _ in removed_edges:
            self._queue.discard_edge(u, v)
            self._drop_parent(v, u)
        return self.stabilize()

    def promote_hub(self, u: NodeId) -> EventStats:
        if not self.graph.has_node(u):
            raise MissingNodeError(f'No node {u}')
        if u in self.hubs:
            raise EngineStateError(f'Node {u} is already a hub')
        self._seed_hub(u)
        return self.stabilize()

    def demote_hub(self, u: NodeId) -> EventStats:
        if u not in self.hubs:
            raise EngineStateError(f'Node {u} is not a hub')
        self.hubs.discard(u)
        self._set(u, INF, {})
        self._broadcast(u)
        return self.stabilize()

    # Community extraction

    def crisp_assignment(self) -> Partition:
        """ Hub with the largest alpha sum per node; ties go to the smallest hub id. """
        partition = {}
        for u in self.graph.nodes:
            weights = hub_weights(self._tables.get(u, {}))
            if not weights:
                partition[u] = UNASSIGNED
                continue
            best = max(weights.values())
            partition[u] = min(h for h, w in weights.items()
                               if w == best or math.isclose(w, best, rel_tol=1e-12))
        return partition

    def fuzzy_assignment(self) -> Cover:
        return {u: memberships(self._tables.get(u, {})) for u in self.graph.nodes}

    # Internals

    def _seed_hub(self, u: NodeId):
        self.hubs.add(u)
        self._set(u, 0.0, hub_table(u))
        self._broadcast(u)

    def _set(self, u: NodeId, dist: float, table: Table):
        if table:
            self._dist[u] = dist
            self._tables[u] = table
        else:
            self._dist.pop(u, None)
            self._tables.pop(u, None)

    def _adopt(self, y: NodeId, message: Message):
        x = message.source
        self._set(y, message.dist, {(h, x): a for h, a in message.payload})
        self._queue.discard(y, x)
        self._broadcast(y, exclude=x)

    def _drop_parent(self, y: NodeId, x: NodeId):
        """ Remove tuples of y whose parent is x and propagate the loss. """
        table = self._tables.get(y)
        if not table or not any(p == x for _, p in table):
            return

        kept = {k: a for k, a in table.items() if k[1] != x}
        if kept:
            self._set(y, self._dist[y], kept)
            self._broadcast(y)
        else:
            self._set(y, INF, {})
            # anything still queued toward x was built from the lost route
            self._queue.discard(y, x)
            self._broadcast(y, exclude=x)

    def _send(self, source: NodeId, target: NodeId):
        dist = self.dist(source)
        if math.isinf(dist):
            message = Message(source, target, (), INF)
        else:
            message = Message(source, target, normalized_payload(self._tables[source]),
                              dist + self.graph.weight(source, target))
        self._queue.push(message)

    def _broadcast(self, source: NodeId, exclude: Optional[NodeId] = None):
        dist = self.dist(source)
        payload = () if math.isinf(dist) else normalized_payload(self._tables[source])
        for target, omega in self.graph.neighbors(source):
            if target != exclude:
                self._queue.push(Message(source, target, payload, dist + omega))
