""" Modularity against cluster count: NHC with the k best-connected nodes as hubs,
next to every level of a Louvain run on the same graph. """

import logging
from typing import Iterable, List, NamedTuple

from tqdm import tqdm

from .baselines import level_table, louvain
from .engine import NHCEngine
from .graph import DynamicGraph
from .hub_policy import HubPolicy
from .metrics import modularity

logger = logging.getLogger(__name__)


class SweepRow(NamedTuple):
    method: str
    parameter: int  # requested hubs for NHC, dendrogram level for Louvain
    hubs: int
    clusters: int
    modularity: float


def modularity_sweep(graph: DynamicGraph, ks: Iterable[int], seed: int = 0, ordered: bool = True,
                     with_louvain: bool = True, progress: bool = False) -> List[SweepRow]:
    rows = []
    for k in tqdm(sorted(set(ks)), desc='k', disable=not progress):
        engine = NHCEngine.initialize(graph, policy=HubPolicy.top_n(k), ordered=ordered)
        partition = engine.crisp_assignment()
        rows.append(SweepRow('nhc', k, len(engine.hubs), len(set(partition.values())),
                             modularity(graph, partition)))
        logger.debug(f'{rows[-1]}')

    if with_louvain:
        for level, clusters, q in level_table(graph, louvain(graph, seed=seed)):
            rows.append(SweepRow('louvain', level, 0, clusters, q))
    return rows
