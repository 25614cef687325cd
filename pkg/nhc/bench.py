"""
Dynamic benchmark: message cost of single mutations on Holme-Kim graphs.

For each replicate a graph is generated, the engine is initialized on it, and
a random script of edge additions (or removals) is streamed through; the
messages processed per event are collected over all replicates.
"""

import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np
from tqdm import tqdm

from .errors import HubPolicyError
from .generators import HolmeKimParams, holme_kim, random_script
from .hub_policy import HubPolicy
from .io_formats import write_histogram, write_partition_table, write_summary
from .stream import StreamDriver

logger = logging.getLogger(__name__)
logger.setLevel(logging.INFO)

KINDS = ('add', 'remove')
DEFAULT_HUB_FRACTION = 0.05


def log_histogram(counts) -> List[Tuple[int, int, int]]:
    """ (lower, upper, count) rows over bins {0}, [1, 2), [2, 4), [4, 8), ... """
    counts = np.asarray(counts, dtype=int)
    if counts.size == 0:
        return []
    rows = [(0, 1, int(np.count_nonzero(counts == 0)))]
    lower = 1
    while lower <= counts.max():
        upper = 2 * lower
        rows.append((lower, upper, int(np.count_nonzero((counts >= lower) & (counts < upper)))))
        lower = upper
    return rows


def summarize(counts) -> Dict[str, Optional[float]]:
    counts = np.asarray(counts, dtype=int)
    if counts.size == 0:
        return {'events': 0, 'min': None, 'fraction_at_min': None, 'mean': None, 'max': None}
    smallest = counts.min()
    return {
        'events': counts.size,
        'min': smallest,
        'fraction_at_min': np.count_nonzero(counts == smallest) / counts.size,
        'mean': counts.mean(),
        'max': counts.max(),
    }


def run_replicate(params: HolmeKimParams, kind: str, events: int, policy: HubPolicy,
                  script_seed: int, recheck_every: int = 1, ordered: bool = True) -> List[int]:
    """ Messages per event for one generated graph and one random script. """
    graph = holme_kim(params)
    n_add, n_remove = (events, 0) if kind == 'add' else (0, events)
    script = random_script(graph, n_add, n_remove, seed=script_seed)
    driver = StreamDriver(graph, policy, ordered=ordered, recheck_every=recheck_every)
    return [record.messages for record in driver.run(script)]


@dataclass
class BenchResult:
    counts: List[List[int]] = field(default_factory=list)
    summary: Dict = field(default_factory=dict)
    config: Optional[Dict] = None

    @property
    def flat_counts(self) -> List[int]:
        return [c for replicate in self.counts for c in replicate]

    @property
    def histogram(self):
        return log_histogram(self.flat_counts)

    def save(self, out_dir):
        os.makedirs(out_dir, exist_ok=True)
        write_partition_table(((i, j, c) for i, replicate in enumerate(self.counts) for j, c in enumerate(replicate)),
                              ('replicate', 'event', 'messages'), os.path.join(out_dir, 'counts.tsv'))
        write_histogram(self.histogram, os.path.join(out_dir, 'histogram.tsv'))
        write_summary(self.summary, os.path.join(out_dir, 'summary.json'))
        if self.config is not None:
            write_summary(self.config, os.path.join(out_dir, 'config.json'))


class DynamicBenchmark:
    def __init__(self,
                 graph__n: int = 1000,
                 graph__m: int = 10,
                 graph__p: float = 0.7,
                 bench__graphs: int = 100,
                 bench__events: int = 100,
                 bench__kind: str = 'add',
                 bench__seed: int = 42,
                 bench__workers: int = 1,
                 bench__recheck_every: int = 1,
                 bench__ordered: bool = True,
                 bench__progress: bool = False,
                 bench__config: Optional[dict] = None,
                 hubs__min_degree: Optional[int] = None,
                 hubs__top_n: Optional[int] = None,
                 hubs__fraction: Optional[float] = None,
                 hubs__k_min: Optional[int] = None,
                 hubs__fitted_pmf: bool = False):
        """
        :param graph__n, graph__m, graph__p: Holme-Kim parameters of every replicate
        :param bench__graphs: (int)  - number of replicates
        :param bench__events: (int)  - events per replicate
        :param bench__kind: (str)  - 'add' or 'remove'
        :param bench__workers: (int)  - worker processes (replicates are independent)
        :param hubs__*: at most one of min_degree / top_n / fraction; defaults to
            fraction 0.05 with k_min = m
        """
        if bench__kind not in KINDS:
            raise HubPolicyError(f'Benchmark kind must be one of {KINDS}, got {bench__kind!r}')

        self.graph_params = dict(n=int(graph__n), m=int(graph__m), p=float(graph__p))
        self.graphs = int(bench__graphs)
        self.events = int(bench__events)
        self.kind = bench__kind
        self.seed = int(bench__seed)
        self.workers = max(1, int(bench__workers))
        self.recheck_every = int(bench__recheck_every)
        self.ordered = bench__ordered
        self.progress = bench__progress
        self.config = bench__config
        self.policy = self._policy(hubs__min_degree, hubs__top_n, hubs__fraction,
                                   hubs__k_min if hubs__k_min is not None else self.graph_params['m'],
                                   hubs__fitted_pmf)

    @staticmethod
    def _policy(min_degree, top_n, fraction, k_min, fitted_pmf) -> HubPolicy:
        given = [x is not None for x in (min_degree, top_n, fraction)]
        if sum(given) > 1:
            raise HubPolicyError('Give at most one of min_degree, top_n, fraction')
        if min_degree is not None:
            return HubPolicy.fixed_threshold(min_degree)
        if top_n is not None:
            return HubPolicy.top_n(top_n)
        return HubPolicy.fraction(DEFAULT_HUB_FRACTION if fraction is None else fraction,
                                  k_min=k_min, use_fitted_pmf=fitted_pmf)

    def _jobs(self):
        for i, child in enumerate(np.random.SeedSequence(self.seed).spawn(self.graphs)):
            graph_seed, script_seed = (int(x) for x in child.generate_state(2))
            params = HolmeKimParams(seed=graph_seed, **self.graph_params)
            yield i, (params, self.kind, self.events, self.policy, script_seed, self.recheck_every, self.ordered)

    def run(self) -> BenchResult:
        jobs = list(self._jobs())
        counts = [None] * len(jobs)
        with tqdm(total=len(jobs), desc=f'{self.kind} replicates', disable=not self.progress) as bar:
            if self.workers == 1:
                for i, args in jobs:
                    counts[i] = run_replicate(*args)
                    bar.update()
            else:
                with ProcessPoolExecutor(max_workers=self.workers) as pool:
                    futures = {pool.submit(run_replicate, *args): i for i, args in jobs}
                    for future in as_completed(futures):
                        counts[futures[future]] = future.result()
                        bar.update()

        result = BenchResult(counts=counts, config=self.config)
        result.summary = dict(summarize(result.flat_counts), kind=self.kind, graphs=self.graphs,
                              events_per_graph=self.events, seed=self.seed, policy=self.policy.mode,
                              **self.graph_params)
        logger.info(f'{self.kind} benchmark: {result.summary["events"]} events, '
                    f'mean {result.summary["mean"]}, max {result.summary["max"]}, '
                    f'{result.summary["fraction_at_min"]} at the minimum {result.summary["min"]}')
        return result
