import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple

from ..types import NodeId

INF = math.inf

# Relative tolerance for real-valued distance comparisons; integer sums compare exactly.
DIST_RTOL = 1e-9

# (hub, parent) -> alpha
Table = Dict[Tuple[NodeId, Optional[NodeId]], float]
# ((hub, normalized alpha), ...) ascending by hub
Payload = Tuple[Tuple[NodeId, float], ...]


class HubTuple(NamedTuple):
    hub: NodeId
    parent: Optional[NodeId]  # None only on the hub itself
    alpha: float


@dataclass(frozen=True)
class NodeState:
    dist: float = INF
    table: Table = field(default_factory=dict)

    @property
    def tuples(self):
        """ Table entries ascending by (hub, parent); the hub's own entry has parent None. """
        return sorted((HubTuple(h, p, a) for (h, p), a in self.table.items()),
                      key=lambda t: (t.hub, -1 if t.parent is None else t.parent))

    @property
    def hubs(self):
        return {h for h, _ in self.table}

    @property
    def parents(self):
        return {p for _, p in self.table}


def same_distance(a: float, b: float) -> bool:
    if a == b:
        return True
    if math.isinf(a) or math.isinf(b):
        return False
    return math.isclose(a, b, rel_tol=DIST_RTOL)


def hub_weights(table: Table) -> Dict[NodeId, float]:
    """ Summed alpha per hub. """
    grouped = defaultdict(list)
    for (hub, _), alpha in table.items():
        grouped[hub].append(alpha)
    return {hub: math.fsum(alphas) for hub, alphas in grouped.items()}


def memberships(table: Table) -> Dict[NodeId, float]:
    """ Per-hub share of the total alpha; empty for an empty table. """
    weights = hub_weights(table)
    total = math.fsum(weights.values())
    if not total > 0:
        return {}
    return {hub: w / total for hub, w in weights.items()}


def normalized_payload(table: Table) -> Payload:
    return tuple(sorted(memberships(table).items()))


def hub_table(hub: NodeId) -> Table:
    return {(hub, None): 1.0}
