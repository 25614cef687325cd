from pathlib import Path

from .graph import DynamicGraph
from .io_formats import read_communities, read_edge_list

PACKAGE_ROOT_DIR = Path(__file__).resolve().parent
DATA_ROOT_DIR = PACKAGE_ROOT_DIR / 'data'

KARATE_EDGES = DATA_ROOT_DIR / 'karate.txt'
KARATE_FACTIONS = DATA_ROOT_DIR / 'karate_factions.cmty'


def load_karate() -> DynamicGraph:
    """ Zachary's karate club, node ids 1..34. """
    return read_edge_list(KARATE_EDGES)


def load_karate_factions():
    """ The two factions the club split into: [instructor's, officer's]. """
    return read_communities(KARATE_FACTIONS)
