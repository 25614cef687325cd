from .engine import CAP_PER_EDGE, EventStats, NHCEngine
from .oracle import batch_recompute, diff_states
from .queue import Message, MessageQueue
from .tables import INF, HubTuple, NodeState

__all__ = [
    'CAP_PER_EDGE',
    'EventStats',
    'HubTuple',
    'INF',
    'Message',
    'MessageQueue',
    'NHCEngine',
    'NodeState',
    'batch_recompute',
    'diff_states',
]
