import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..types import NodeId
from .tables import Payload

INVALIDATION_TIER = 0
DISTANCE_TIER = 1


@dataclass(frozen=True)
class Message:
    """ M_{source -> target}(payload, dist); an empty payload with dist=inf is an
    invalidation notice. """
    source: NodeId
    target: NodeId
    payload: Payload
    dist: float

    @property
    def is_invalidation(self) -> bool:
        return math.isinf(self.dist)


class MessageQueue:
    """ Open messages keyed by directed edge, at most one per edge.

    Sending on an edge that already holds a message replaces it. Heap entries of
    replaced or cancelled messages are skipped lazily on pop.

    :param ordered: (bool)  - pop by (tier, dist); otherwise FIFO within a tier
    """

    def __init__(self, ordered: bool = True):
        self.ordered = ordered
        self._slots: Dict[Tuple[NodeId, NodeId], Tuple[int, Message]] = {}
        self._heap = []
        self._counter = itertools.count()

    def push(self, message: Message):
        seq = next(self._counter)
        edge = (message.source, message.target)
        self._slots[edge] = (seq, message)
        tier = INVALIDATION_TIER if message.is_invalidation else DISTANCE_TIER
        key = (tier, message.dist, seq) if self.ordered else (tier, seq)
        heapq.heappush(self._heap, (key, edge))

    def pop(self) -> Optional[Message]:
        while self._heap:
            key, edge = heapq.heappop(self._heap)
            slot = self._slots.get(edge)
            if slot is None or slot[0] != key[-1]:
                continue
            del self._slots[edge]
            return slot[1]
        return None

    def discard(self, source: NodeId, target: NodeId):
        self._slots.pop((source, target), None)

    def discard_edge(self, u: NodeId, v: NodeId):
        self.discard(u, v)
        self.discard(v, u)

    def pending(self):
        """ :return: pending messages in pop order """
        entries = sorted((key, edge) for key, edge in self._heap
                         if edge in self._slots and self._slots[edge][0] == key[-1])
        return [self._slots[edge][1] for _, edge in entries]

    def __len__(self):
        return len(self._slots)
