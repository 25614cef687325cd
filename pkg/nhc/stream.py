import logging
import math
from typing import Iterable, List, Optional

from tqdm import tqdm

from .engine import EventStats, NHCEngine, batch_recompute, diff_states
from .errors import DegenerateTailError, GraphError, HubPolicyError, ScriptError
from .generators import ADD_EDGE, ADD_NODE, REMOVE_EDGE, MutationEvent
from .graph import DynamicGraph
from .hub_policy import FRACTION, HubPolicy
from .types import EventRecord, NodeId

logger = logging.getLogger(__name__)


class StreamDriver:
    """ Applies mutation events to a graph and keeps an NHC engine in step.

    After every ``recheck_every`` events the hub policy is re-applied: under a
    degree threshold only the nodes touched since the last check can change
    status, under top-n the whole hub set is recomputed. Demotions run before
    promotions. A fraction policy is frozen into the threshold it implies on
    the initial graph (or, when that graph has no edges, at the first re-check
    whose degrees can be fitted); only :meth:`refit` re-derives it later.

    :param graph: the graph to mutate (owned by the driver from now on)
    :param policy: hub selection rule
    :param ordered: (bool)  - distance-ordered message queue
    :param recheck_every: (int)  - events between hub-policy checks
    """

    def __init__(self, graph: DynamicGraph, policy: HubPolicy, ordered: bool = True,
                 recheck_every: int = 1):
        if recheck_every < 1:
            raise HubPolicyError(f'recheck_every must be >= 1, got {recheck_every}')

        self.graph = graph
        self.policy = policy
        self.active_policy = policy
        if graph.edge_count:
            self._freeze()
        self.recheck_every = recheck_every
        if self.active_policy.mode == FRACTION:
            # nothing to fit yet: no hubs until the first successful freeze
            self.engine = NHCEngine.initialize(graph, hubs=(), ordered=ordered)
        else:
            self.engine = NHCEngine.initialize(graph, policy=self.active_policy, ordered=ordered)
        self.records: List[EventRecord] = []
        self._touched = set()
        self._since_check = 0

    def apply(self, event: MutationEvent) -> EventRecord:
        index = len(self.records)
        try:
            stats = self._apply(event)
        except (GraphError, KeyError) as e:
            raise ScriptError(index, f'{event.kind} {event.u} {"" if event.v is None else event.v}: {e}') from e

        self._since_check += 1
        if self._since_check >= self.recheck_every:
            stats += self.recheck()

        record = EventRecord(index, event.kind, event.u, event.v, stats.messages_processed)
        self.records.append(record)
        logger.debug(f'{record}')
        return record

    def run(self, events: Iterable[MutationEvent], progress: bool = False) -> List[EventRecord]:
        events = list(events)
        for event in tqdm(events, desc='events', disable=not progress):
            self.apply(event)
        if events:
            total = sum(r.messages for r in self.records[-len(events):])
            logger.info(f'Applied {len(events)} events with {total} messages '
                        f'({total / len(events):.2f} per event)')
        return self.records

    def recheck(self, nodes: Optional[Iterable[NodeId]] = None) -> EventStats:
        """ Promote and demote hubs so the engine matches the active policy. """
        if self.active_policy.mode == FRACTION:
            if not self._try_freeze():
                self._touched.clear()
                self._since_check = 0
                return EventStats()
            nodes = self.graph.nodes

        hubs = self.engine.hubs
        if self.active_policy.is_local:
            candidates = self._touched if nodes is None else set(nodes)
            candidates = {u for u in candidates if self.graph.has_node(u)}
            desired = {u for u in candidates if self.active_policy.is_hub(self.graph.degree(u))}
            demote = sorted((candidates & hubs) - desired)
            promote = sorted(desired - hubs)
        else:
            desired = self.active_policy.hub_set(self.graph)
            demote = sorted(hubs - desired)
            promote = sorted(desired - hubs)

        stats = EventStats()
        for u in demote:
            logger.debug(f'Demoting hub {u}')
            stats += self.engine.demote_hub(u)
        for u in promote:
            logger.debug(f'Promoting hub {u}')
            stats += self.engine.promote_hub(u)

        self._touched.clear()
        self._since_check = 0
        return stats

    def refit(self) -> EventStats:
        """ Re-derive a fraction policy's threshold from the current degrees and apply it. """
        if self.policy.mode != FRACTION:
            return EventStats()
        refitted = self.policy.resolve(self.graph.degrees())
        if refitted == self.active_policy:
            return EventStats()
        logger.info(f'Hub threshold refitted: d_min {self.active_policy.d_min} -> {refitted.d_min}')
        self.active_policy = refitted
        return self.recheck(nodes=self.graph.nodes)

    def _freeze(self):
        self.active_policy = self.policy.resolve(self.graph.degrees())
        logger.info(f'Hub fraction {self.policy.h} frozen at d_min {self.active_policy.d_min}')

    def _try_freeze(self) -> bool:
        """ Freeze a fraction policy that started on a graph too small to fit. """
        if not self.graph.edge_count:
            return False
        try:
            self._freeze()
        except DegenerateTailError as e:
            logger.debug(f'Hub threshold not fitted yet: {e}')
            return False
        return True

    def verify(self) -> List[str]:
        """ Differences between the incremental state and a batch recomputation. """
        return diff_states(self.engine.states(), batch_recompute(self.graph, self.engine.hubs))

    def _apply(self, event: MutationEvent) -> EventStats:
        u, v = event.u, event.v
        if event.kind == ADD_EDGE:
            stats = EventStats()
            if not float(event.w) > 0 or math.isinf(event.w):
                raise GraphError(f'weight must be positive and finite, got {event.w}')
            if self.graph.has_edge(u, v):
                if self.graph.weight(u, v) == float(event.w):
                    return stats
                # weight change: remove then add
                self.graph.remove_edge(u, v)
                stats += self.engine.on_edge_removed(u, v)
            self.graph.add_edge(u, v, event.w)
            self._touched.update((u, v))
            return stats + self.engine.on_edge_added(u, v)

        if event.kind == REMOVE_EDGE:
            self.graph.remove_edge(u, v)
            self._touched.update((u, v))
            return self.engine.on_edge_removed(u, v)

        if event.kind == ADD_NODE:
            self.graph.add_node(u)
            self._touched.add(u)
            return EventStats()

        removed = self.graph.remove_node(u)
        self._touched.update(w for _, w, _ in removed)
        return self.engine.on_node_removed(u, removed)
