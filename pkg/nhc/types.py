from typing import Dict, NamedTuple, Optional

NodeId = int
Label = int

# Label of nodes that no hub reaches (hub distance +inf).
UNASSIGNED: Label = -1

Partition = Dict[NodeId, Label]
Cover = Dict[NodeId, Dict[Label, float]]


class EventRecord(NamedTuple):
    """ One mutation of a stream run and the messages it cost; ``v`` is None for node events. """
    index: int
    kind: str
    u: NodeId
    v: Optional[NodeId]
    messages: int
