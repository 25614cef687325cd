from .baselines import Dendrogram, flatten, louvain
from .datasets import load_karate, load_karate_factions
from .engine import EventStats, NHCEngine, batch_recompute, diff_states
from .errors import NHCError
from .generators import HolmeKimParams, MutationEvent, MutationScript, holme_kim, random_script
from .graph import DynamicGraph
from .hub_policy import HubPolicy, PowerLawFit, dmin_from_fraction, estimate_gamma, is_hub
from .metrics import inter_sparseness, intra_density, modularity, nmi, v_measure
from .stream import StreamDriver
from .types import UNASSIGNED

__all__ = [
    'Dendrogram',
    'DynamicGraph',
    'EventStats',
    'HolmeKimParams',
    'HubPolicy',
    'MutationEvent',
    'MutationScript',
    'NHCEngine',
    'NHCError',
    'PowerLawFit',
    'StreamDriver',
    'UNASSIGNED',
    'batch_recompute',
    'diff_states',
    'dmin_from_fraction',
    'estimate_gamma',
    'flatten',
    'holme_kim',
    'inter_sparseness',
    'intra_density',
    'is_hub',
    'load_karate',
    'load_karate_factions',
    'louvain',
    'modularity',
    'nmi',
    'random_script',
    'v_measure',
]
