import json
from pathlib import Path

import pytest

from nhc.bench import DynamicBenchmark, log_histogram, run_replicate, summarize
from nhc.config_reader import ConfigReader
from nhc.errors import HubPolicyError
from nhc.generators import HolmeKimParams
from nhc.hub_policy import HubPolicy

CONFIGS = Path(__file__).resolve().parent.parent / 'configs'


def test_log_histogram_bins():
    assert log_histogram([0, 0, 1, 2, 3, 4, 9]) == [(0, 1, 2), (1, 2, 1), (2, 4, 2), (4, 8, 1), (8, 16, 1)]
    assert log_histogram([0]) == [(0, 1, 1)]
    assert log_histogram([]) == []


def test_summarize():
    summary = summarize([2, 2, 2, 6])
    assert summary['events'] == 4
    assert summary['min'] == 2
    assert summary['fraction_at_min'] == 0.75
    assert summary['mean'] == 3.0
    assert summary['max'] == 6
    assert summarize([])['mean'] is None


def test_replicates_are_reproducible():
    params = HolmeKimParams(150, 3, 0.7, seed=4)
    policy = HubPolicy.fraction(0.05, k_min=3)
    first = run_replicate(params, 'add', 20, policy, script_seed=8)
    assert len(first) == 20
    assert first == run_replicate(params, 'add', 20, policy, script_seed=8)


def test_cheapest_addition_costs_two_messages():
    params = HolmeKimParams(300, 4, 0.7, seed=1)
    counts = run_replicate(params, 'add', 50, HubPolicy.fraction(0.05, k_min=4), script_seed=2)
    # both endpoints hear from each other at least once
    assert min(counts) == 2


def test_removals_can_be_free():
    params = HolmeKimParams(300, 4, 0.7, seed=1)
    counts = run_replicate(params, 'remove', 50, HubPolicy.fraction(0.05, k_min=4), script_seed=2)
    assert min(counts) == 0


def test_empty_benchmark(tmp_path):
    result = DynamicBenchmark(graph__n=50, graph__m=2, bench__graphs=1, bench__events=0).run()
    assert result.counts == [[]]
    assert result.histogram == []
    assert result.summary['events'] == 0

    result.save(tmp_path)
    assert (tmp_path / 'histogram.tsv').read_text() == '# lower\tupper\tcount\n'
    assert not (tmp_path / 'config.json').exists()


def test_policy_flags():
    with pytest.raises(HubPolicyError):
        DynamicBenchmark(hubs__min_degree=5, hubs__top_n=3)
    with pytest.raises(HubPolicyError):
        DynamicBenchmark(bench__kind='rewire')
    assert DynamicBenchmark(graph__m=6).policy == HubPolicy.fraction(0.05, k_min=6)
    assert DynamicBenchmark(hubs__top_n=3).policy == HubPolicy.top_n(3)


def test_config_files_flatten():
    params = ConfigReader(CONFIGS / 'bench_remove.jsonnet').flatten()
    assert params['bench__kind'] == 'remove'
    assert params['graph__n'] == 1000
    assert params['hubs__k_min'] == params['graph__m'] == 10


def test_smoke_config(tmp_path):
    bench = ConfigReader(CONFIGS / 'bench_smoke.jsonnet').read(DynamicBenchmark, bench__events=5)
    assert bench.graph_params == {'n': 200, 'm': 4, 'p': 0.7}
    assert bench.events == 5

    result = bench.run()
    assert [len(replicate) for replicate in result.counts] == [5, 5, 5]
    result.save(tmp_path / 'out')

    summary = json.loads((tmp_path / 'out' / 'summary.json').read_text())
    assert summary['events'] == 15
    assert summary['kind'] == 'add'
    counts = (tmp_path / 'out' / 'counts.tsv').read_text().splitlines()
    assert counts[0] == '# replicate\tevent\tmessages'
    assert len(counts) == 16

    config = json.loads((tmp_path / 'out' / 'config.json').read_text())
    assert config['graph']['n'] == 200
    assert config['bench']['kind'] == 'add'


def test_worker_pool_matches_serial_run():
    kwargs = dict(graph__n=120, graph__m=3, bench__graphs=3, bench__events=5, bench__seed=7)
    serial = DynamicBenchmark(bench__workers=1, **kwargs).run()
    pooled = DynamicBenchmark(bench__workers=2, **kwargs).run()
    assert serial.counts == pooled.counts


@pytest.mark.slow
def test_full_addition_protocol():
    result = ConfigReader(CONFIGS / 'bench_add.jsonnet').read(DynamicBenchmark).run()
    counts = result.flat_counts
    assert len(counts) == 100 * 100
    assert sum(c == 2 for c in counts) / len(counts) >= 0.5
    assert result.summary['mean'] <= 20
    assert result.summary['max'] <= 2000


@pytest.mark.slow
def test_full_removal_protocol():
    result = ConfigReader(CONFIGS / 'bench_remove.jsonnet').read(DynamicBenchmark).run()
    counts = result.flat_counts
    assert sum(c == 0 for c in counts) / len(counts) >= 0.5
    assert result.summary['mean'] <= 35
    assert result.summary['max'] <= 2500
