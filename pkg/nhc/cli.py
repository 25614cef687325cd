"""
Command line for Nearest Hub Clustering.

Shared options go before the command name:

    nhc --min_degree 13 cluster nhc/data/karate.txt karate.tsv --truth nhc/data/karate_factions.cmty
    nhc --min_degree 13 stream graph.txt script.txt out.tsv --verify
    nhc bench_dynamic --config configs/bench_add.jsonnet --out results/add
    nhc evaluate out.tsv --truth truth.cmty --graph graph.txt
    nhc louvain graph.txt louvain.tsv --level 0
    nhc sweep graph.txt 2,3,4,5,6 sweep.tsv
    nhc generate 1000 10 0.7 graph.txt
    nhc script graph.txt 100 0 script.txt

The seed falls back to the NHC_SEED environment variable, then to 42.
"""

import logging
import os
import sys

import fire

from .baselines import flatten, level_table, louvain
from .bench import DynamicBenchmark
from .config_reader import ConfigReader
from .errors import EngineStateError, HubPolicyError, MetricError, NHCError
from .generators import HolmeKimParams, holme_kim, random_script
from .hub_policy import FIXED_THRESHOLD, HubPolicy
from .io_formats import (read_assignments, read_communities, read_edge_list, read_script,
                         write_assignments, write_edge_list, write_event_trace,
                         write_partition_table, write_script, write_summary)
from .metrics import evaluate as evaluate_partition
from .metrics import modularity, nmi, restrict, truth_partition, v_measure
from .stream import StreamDriver
from .sweep import modularity_sweep
from .types import UNASSIGNED

logger = logging.getLogger('nhc')

DEFAULT_SEED = 42


def _default_seed():
    value = os.environ.get('NHC_SEED')
    if value is None:
        return DEFAULT_SEED
    try:
        return int(value)
    except ValueError:
        raise HubPolicyError(f'NHC_SEED must be an integer, got {value!r}') from None


def _int_list(value):
    """ '2,3,4', '2:8' (half-open range), a single int, or a list from the command line. """
    if isinstance(value, int):
        return [value]
    if isinstance(value, (list, tuple)):
        return [int(v) for v in value]
    value = str(value)
    if ':' in value:
        start, stop = value.split(':', 1)
        return list(range(int(start), int(stop)))
    return [int(v) for v in value.split(',') if v.strip()]


class NHCCommands:
    def __init__(self,
                 min_degree: int = None,
                 top_hubs: int = None,
                 hub_fraction: float = None,
                 k_min: int = 1,
                 fitted_pmf: bool = False,
                 seed: int = None,
                 fuzzy: bool = False,
                 fifo: bool = False,
                 progress: bool = False,
                 verbose: bool = False):
        """
        :param min_degree: (int)  - hubs are nodes with at least this degree
        :param top_hubs: (int)  - hubs are the n best-connected nodes (ties included)
        :param hub_fraction: (float)  - hubs are the best-connected fraction of nodes
        :param k_min: (int)  - smallest degree used to fit the power law (fraction mode)
        :param fitted_pmf: (bool)  - derive d_min from the fitted power law instead of the empirical CCDF
        :param seed: (int)  - random seed for generators, scripts, Louvain and benchmarks
        :param fuzzy: (bool)  - also write fuzzy memberships
        :param fifo: (bool)  - FIFO message queue instead of the distance-ordered one
        :param progress: (bool)  - show progress bars
        :param verbose: (bool)  - debug logging
        """
        self.min_degree = min_degree
        self.top_hubs = top_hubs
        self.hub_fraction = hub_fraction
        self.k_min = k_min
        self.fitted_pmf = fitted_pmf
        self.seed_given = seed is not None
        self.seed = int(seed) if seed is not None else _default_seed()
        self.fuzzy = fuzzy
        self.ordered = not fifo
        self.progress = progress

        if verbose:
            logging.getLogger('nhc').setLevel(logging.DEBUG)

    def _policy(self) -> HubPolicy:
        given = [x is not None for x in (self.min_degree, self.top_hubs, self.hub_fraction)]
        if sum(given) != 1:
            raise HubPolicyError('Give exactly one of --min_degree, --top_hubs, --hub_fraction')
        if self.min_degree is not None:
            return HubPolicy.fixed_threshold(self.min_degree)
        if self.top_hubs is not None:
            return HubPolicy.top_n(self.top_hubs)
        return HubPolicy.fraction(self.hub_fraction, k_min=self.k_min, use_fitted_pmf=self.fitted_pmf)

    def _write_results(self, driver: StreamDriver, out, truth=None):
        engine, graph = driver.engine, driver.graph
        partition = engine.crisp_assignment()
        write_assignments(partition, out)
        if self.fuzzy:
            write_assignments(engine.fuzzy_assignment(), f'{out}.fuzzy')

        labels = set(partition.values()) - {UNASSIGNED}
        summary = {
            'nodes': graph.node_count,
            'edges': graph.edge_count,
            'hubs': set(engine.hubs),
            'hub_count': len(engine.hubs),
            'clusters': len(labels),
            'unassigned': sum(1 for label in partition.values() if label == UNASSIGNED),
            'init_messages': engine.init_stats.messages_processed,
            'modularity': modularity(graph, partition) if graph.edge_count else None,
        }
        if driver.active_policy.mode == FIXED_THRESHOLD:
            summary['d_min'] = driver.active_policy.d_min
        if truth is not None:
            truth = truth_partition(read_communities(truth))
            scored = restrict(partition, truth)
            summary['v_measure'] = v_measure(scored, truth)
            summary['nmi'] = nmi(scored, truth)
        write_summary(summary, f'{out}.summary.json')
        logger.info(f'{summary["hub_count"]} hubs, {summary["clusters"]} clusters, '
                    f'modularity {summary["modularity"]}; assignments written to {out}')
        return summary

    def cluster(self, graph, out, truth=None):
        """ Cluster a static graph.

        :param graph: edge list
        :param out: crisp assignments; <out>.fuzzy and <out>.summary.json are written next to it
        :param truth: optional community file to score against
        """
        driver = StreamDriver(read_edge_list(graph), self._policy(), ordered=self.ordered)
        self._write_results(driver, out, truth)

    def stream(self, graph, script, out, verify=False, recheck_every=1):
        """ Cluster a graph, then apply a mutation script event by event.

        :param verify: (bool)  - compare the final state with a batch recomputation
        :param recheck_every: (int)  - events between hub-policy checks
        """
        events = read_script(script)
        driver = StreamDriver(read_edge_list(graph), self._policy(), ordered=self.ordered,
                              recheck_every=recheck_every)
        driver.run(events, progress=self.progress)
        write_event_trace(driver.records, f'{out}.trace.tsv')
        self._write_results(driver, out)

        if verify:
            problems = driver.verify()
            if problems:
                for problem in problems[:20]:
                    print(problem)
                raise EngineStateError(f'Incremental state differs from the batch recomputation '
                                       f'on {len(problems)} node(s)')
            print('verified')

    def bench_dynamic(self, config=None, n=None, m=None, p=None, graphs=None, events=None, kind=None,
                      workers=None, out='bench_out', recheck_every=None):
        """ Message cost per mutation on generated graphs; writes counts, histogram and summary to ``out``. """
        overrides = {
            'graph__n': n, 'graph__m': m, 'graph__p': p,
            'bench__graphs': graphs, 'bench__events': events, 'bench__kind': kind,
            'bench__workers': workers, 'bench__recheck_every': recheck_every,
            'bench__ordered': self.ordered, 'bench__progress': self.progress,
            'bench__seed': self.seed if self.seed_given or config is None else None,
            'hubs__min_degree': self.min_degree, 'hubs__top_n': self.top_hubs,
            'hubs__fraction': self.hub_fraction,
        }
        if self.hub_fraction is not None:
            overrides.update(hubs__k_min=self.k_min, hubs__fitted_pmf=self.fitted_pmf)

        if config is not None:
            bench = ConfigReader(config).read(DynamicBenchmark, **overrides)
        else:
            bench = DynamicBenchmark(**{k: v for k, v in overrides.items() if v is not None})
        bench.run().save(out)
        logger.info(f'Benchmark results written to {out}')

    def evaluate(self, pred, truth=None, graph=None):
        """ Print quality scores of a crisp assignment file as key<TAB>value lines. """
        partition = read_assignments(pred)
        if any(isinstance(label, dict) for label in partition.values()):
            raise MetricError(f'{pred} holds fuzzy memberships; evaluate a crisp assignment file')

        truth = truth_partition(read_communities(truth)) if truth is not None else None
        graph = read_edge_list(graph) if graph is not None else None
        scores = evaluate_partition(partition, truth=truth, graph=graph)
        for key in sorted(scores):
            print(f'{key}\t{scores[key]}')

    def louvain(self, graph, out, level=None):
        """ Louvain baseline.

        Writes one level's partition to ``out`` (the top level unless ``level`` is given),
        every level's partition to <out>.level<k>.tsv and the per-level modularity to
        <out>.levels.tsv.
        """
        g = read_edge_list(graph)
        dendrogram = louvain(g, seed=self.seed)
        write_assignments(flatten(dendrogram, -1 if level is None else int(level)), out)
        for k in range(len(dendrogram)):
            write_assignments(flatten(dendrogram, k), f'{out}.level{k}.tsv')
        rows = level_table(g, dendrogram)
        write_partition_table(rows, ('level', 'clusters', 'modularity'), f'{out}.levels.tsv')
        for row in rows:
            logger.info(f'level {row[0]}: {row[1]} clusters, modularity {row[2]:.4f}')

    def sweep(self, graph, ks, out):
        """ Modularity of NHC with k top hubs for every k, plus the Louvain levels. """
        rows = modularity_sweep(read_edge_list(graph), _int_list(ks), seed=self.seed,
                                ordered=self.ordered, progress=self.progress)
        write_partition_table(rows, ('method', 'parameter', 'hubs', 'clusters', 'modularity'), out)
        logger.info(f'{len(rows)} sweep rows written to {out}')

    def generate(self, n, m, p, out):
        """ Holme-Kim graph as an edge list. """
        graph = holme_kim(HolmeKimParams(int(n), int(m), float(p), seed=self.seed))
        write_edge_list(graph, out)
        logger.info(f'{graph.node_count} nodes / {graph.edge_count} edges written to {out}')

    def script(self, graph, n_add, n_remove, out):
        """ Random mutation script for a graph. """
        script = random_script(read_edge_list(graph), int(n_add), int(n_remove), seed=self.seed)
        write_script(script, out)
        logger.info(f'{len(script)} events written to {out}')


def main(argv=None):
    logging.basicConfig(format='%(asctime)s %(levelname)s %(name)s: %(message)s', level=logging.INFO)
    try:
        fire.Fire(NHCCommands, command=argv, name='nhc')
    except (NHCError, OSError) as e:
        logger.error(f'{type(e).__name__}: {e}')
        sys.exit(1)


if __name__ == '__main__':
    main()
