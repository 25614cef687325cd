import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from .errors import GraphError, LevelError
from .graph import DynamicGraph
from .metrics import modularity
from .types import Partition

logger = logging.getLogger(__name__)


@dataclass
class Dendrogram:
    """ Louvain hierarchy, finest level first.

    ``levels[0]`` maps original nodes to level-0 communities; ``levels[k]``
    maps level k-1 community ids to level-k community ids. Community ids are
    0-based and ordered by their smallest original node.
    """
    levels: List[Dict[int, int]] = field(default_factory=list)

    def __len__(self):
        return len(self.levels)

    def flatten(self, level: int = -1) -> Partition:
        return flatten(self, level)


def louvain(graph: DynamicGraph, seed: Optional[int] = 0, resolution: float = 1.0,
            threshold: float = 1e-7) -> Dendrogram:
    """ Louvain modularity optimization; one dendrogram level per improving pass. """
    if graph.edge_count == 0:
        raise GraphError('Louvain needs at least one edge')

    partitions = nx.community.louvain_partitions(graph.to_networkx(), weight='weight',
                                                 resolution=resolution, threshold=threshold, seed=seed)
    dendrogram = Dendrogram()
    previous = None
    for communities in partitions:
        ordered = sorted((sorted(c) for c in communities), key=lambda members: members[0])
        labels = {u: index for index, members in enumerate(ordered) for u in members}
        if previous is None:
            dendrogram.levels.append(labels)
        else:
            dendrogram.levels.append({old: labels[members[0]] for old, members in enumerate(previous)})
        previous = ordered

    logger.debug(f'Louvain (seed={seed}): {len(dendrogram)} levels, '
                 f'{len(previous) if previous else 0} communities at the top')
    return dendrogram


def flatten(dendrogram: Dendrogram, level: int = -1) -> Partition:
    """ Partition of the original nodes at ``level`` (negative counts from the top). """
    depth = len(dendrogram.levels)
    if not -depth <= level < depth:
        raise LevelError(f'Level {level} out of range for a dendrogram with {depth} levels')
    level %= depth

    partition = dict(dendrogram.levels[0])
    for mapping in dendrogram.levels[1:level + 1]:
        partition = {u: mapping[label] for u, label in partition.items()}
    return partition


def level_table(graph: DynamicGraph, dendrogram: Dendrogram) -> List[Tuple[int, int, float]]:
    """ (level, cluster count, modularity) for every level. """
    rows = []
    for level in range(len(dendrogram)):
        partition = flatten(dendrogram, level)
        rows.append((level, len(set(partition.values())), modularity(graph, partition)))
    return rows
