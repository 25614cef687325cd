import pytest

from nhc.datasets import load_karate
from nhc.graph import DynamicGraph


def pytest_addoption(parser):
    parser.addoption('--runslow', action='store_true', default=False,
                     help='also run the full-scale acceptance runs')


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full-scale run, enabled with --runslow')


def pytest_collection_modifyitems(config, items):
    if config.getoption('--runslow'):
        return
    skip_slow = pytest.mark.skip(reason='needs --runslow')
    for item in items:
        if 'slow' in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def karate():
    return load_karate()


@pytest.fixture
def path_graph():
    def build(n, w=1.0):
        return DynamicGraph.from_edges([(i, i + 1, w) for i in range(n - 1)])
    return build


@pytest.fixture
def write_file(tmp_path):
    def write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return path
    return write
