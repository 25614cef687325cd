"""
Reading and writing graphs, ground truth, assignments, mutation scripts and
run results.

Text formats are UTF-8 with LF line endings; lines starting with '#' are
comments. Every writer sorts by node id (or event index) so identical inputs
give byte-identical files.

    edge list       u v [w]
    communities     one community per line, member ids separated by blanks
    crisp labels    node<TAB>label
    fuzzy labels    node<TAB>label:membership,label:membership,...
    script          add_edge U V [W] | remove_edge U V | add_node U | remove_node U
    event trace     index<TAB>kind<TAB>u<TAB>v<TAB>messages
    histogram       lower<TAB>upper<TAB>count
"""

import json
import logging
import math
import re
import warnings

import numpy as np

from .errors import FormatError, GraphError
from .generators import EDGE_EVENTS, EVENT_KINDS, MutationEvent, MutationScript
from .graph import DynamicGraph
from .types import EventRecord

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r'\S+')
_MISSING = '-'


def _records(path):
    """ (line number, [(column, token), ...]) for every non-blank, non-comment line. """
    with open(path, 'r', encoding='utf-8') as f:
        for line_no, line in enumerate(f, start=1):
            stripped = line.strip()
            if not stripped or stripped.startswith('#'):
                continue
            yield line_no, [(m.start() + 1, m.group()) for m in _TOKEN.finditer(line)]


def _node(path, line_no, column, token):
    try:
        u = int(token)
    except ValueError:
        raise FormatError(path, line_no, column, f'node id {token!r} is not an integer') from None
    if u < 0:
        raise FormatError(path, line_no, column, f'node id {u} is negative')
    return u


def _weight(path, line_no, column, token):
    try:
        w = float(token)
    except ValueError:
        raise FormatError(path, line_no, column, f'weight {token!r} is not a number') from None
    if not w > 0 or math.isinf(w):
        raise FormatError(path, line_no, column, f'weight {token} must be positive and finite')
    return w


def _fmt_weight(w):
    return repr(float(w))


# Graphs

def read_edge_list(path) -> DynamicGraph:
    """ SNAP-style edge list; self-loops are skipped and repeated pairs keep their first weight. """
    graph = DynamicGraph()
    duplicates = self_loops = 0

    for line_no, tokens in _records(path):
        if len(tokens) not in (2, 3):
            raise FormatError(path, line_no, tokens[0][0], f'expected "u v [w]", got {len(tokens)} fields')
        u = _node(path, line_no, *tokens[0])
        v = _node(path, line_no, *tokens[1])
        w = _weight(path, line_no, *tokens[2]) if len(tokens) == 3 else 1.0

        if u == v:
            self_loops += 1
            graph.add_node(u)
            continue
        if graph.has_edge(u, v):
            duplicates += 1
            continue
        graph.add_edge(u, v, w)

    if self_loops:
        warnings.warn(f'{path}: skipped {self_loops} self-loop(s)', RuntimeWarning)
    if duplicates:
        warnings.warn(f'{path}: collapsed {duplicates} duplicate edge(s)', RuntimeWarning)
    logger.info(f'Read {graph.node_count} nodes / {graph.edge_count} edges from {path}')
    return graph


def write_edge_list(graph: DynamicGraph, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for u, v, w in graph.edges():
            f.write(f'{u} {v}\n' if w == 1.0 else f'{u} {v} {_fmt_weight(w)}\n')


def read_communities(path):
    """ :return: list of communities, each a list of node ids in file order """
    communities = [[_node(path, line_no, column, token) for column, token in tokens]
                   for line_no, tokens in _records(path)]
    if not communities:
        raise FormatError(path, 1, 1, 'no communities found')
    logger.info(f'Read {len(communities)} communities from {path}')
    return communities


def write_communities(communities, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for members in communities:
            f.write('\t'.join(str(u) for u in members) + '\n')


# Assignments

def write_assignments(assignments, path):
    """ Crisp (node -> label) or fuzzy (node -> {label: membership}) assignments. """
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        for u in sorted(assignments):
            value = assignments[u]
            if isinstance(value, dict):
                value = ','.join(f'{label}:{_fmt_weight(value[label])}' for label in sorted(value))
            f.write(f'{u}\t{value}\n')


def read_assignments(path):
    """ Inverse of :func:`write_assignments`; the format is detected per line. """
    assignments = {}
    for line_no, tokens in _records(path):
        if len(tokens) not in (1, 2):
            raise FormatError(path, line_no, tokens[0][0], 'expected "node<TAB>label"')
        u = _node(path, line_no, *tokens[0])
        if len(tokens) == 1:
            # a node no hub reaches has an empty fuzzy vector
            assignments[u] = {}
            continue

        column, value = tokens[1]
        if ':' not in value:
            assignments[u] = _label(path, line_no, column, value)
            continue

        memberships = {}
        for item in value.split(','):
            label, _, membership = item.partition(':')
            try:
                memberships[_label(path, line_no, column, label)] = float(membership)
            except ValueError:
                raise FormatError(path, line_no, column, f'bad membership {item!r}') from None
        if not math.isclose(math.fsum(memberships.values()), 1.0, abs_tol=1e-9):
            raise FormatError(path, line_no, column, f'memberships of node {u} do not sum to 1')
        assignments[u] = memberships
    return assignments


def _label(path, line_no, column, token):
    try:
        return int(token)
    except ValueError:
        raise FormatError(path, line_no, column, f'label {token!r} is not an integer') from None


# Mutation scripts

def read_script(path) -> MutationScript:
    events = []
    for line_no, tokens in _records(path):
        kind = tokens[0][1]
        if kind not in EVENT_KINDS:
            raise FormatError(path, line_no, tokens[0][0], f'unknown event {kind!r}')
        arity = 2 if kind in EDGE_EVENTS else 1
        allowed = (arity + 1, arity + 2) if kind == 'add_edge' else (arity + 1,)
        if len(tokens) not in allowed:
            raise FormatError(path, line_no, tokens[0][0], f'{kind} takes {arity} node id(s)')

        nodes = [_node(path, line_no, *token) for token in tokens[1:arity + 1]]
        w = _weight(path, line_no, *tokens[-1]) if len(tokens) == arity + 2 else 1.0
        try:
            events.append(MutationEvent(kind, nodes[0], nodes[1] if arity == 2 else None, w))
        except GraphError as e:
            raise FormatError(path, line_no, tokens[0][0], str(e)) from None
    return MutationScript(events)


def write_script(script: MutationScript, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        if script.seed is not None:
            f.write(f'# seed {script.seed}\n')
        for event in script:
            fields = [event.kind, str(event.u)]
            if event.v is not None:
                fields.append(str(event.v))
            if event.kind == 'add_edge' and event.w != 1.0:
                fields.append(_fmt_weight(event.w))
            f.write(' '.join(fields) + '\n')


# Run results

def write_event_trace(records, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write('# index\tkind\tu\tv\tmessages\n')
        for record in sorted(records, key=lambda r: r.index):
            v = _MISSING if record.v is None else record.v
            f.write(f'{record.index}\t{record.kind}\t{record.u}\t{v}\t{record.messages}\n')


def read_event_trace(path):
    records = []
    for line_no, tokens in _records(path):
        if len(tokens) != 5:
            raise FormatError(path, line_no, tokens[0][0], 'expected 5 tab-separated fields')
        (i_col, index), (_, kind), u, (v_col, v), (m_col, messages) = tokens
        if not index.isdigit() or not messages.isdigit():
            raise FormatError(path, line_no, i_col if not index.isdigit() else m_col,
                              'index and messages must be non-negative integers')
        records.append(EventRecord(int(index), kind, _node(path, line_no, *u),
                                   None if v == _MISSING else _node(path, line_no, v_col, v),
                                   int(messages)))
    return records


def write_histogram(rows, path):
    """ :param rows: (lower, upper, count) with the upper bound exclusive """
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write('# lower\tupper\tcount\n')
        for lower, upper, count in rows:
            f.write(f'{lower}\t{upper}\t{count}\n')


def write_partition_table(rows, header, path):
    """ Tab-separated result table (sweeps, dendrogram levels). """
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write('# ' + '\t'.join(header) + '\n')
        for row in rows:
            f.write('\t'.join(_fmt_weight(x) if isinstance(x, float) else str(x) for x in row) + '\n')


class NpEncoder(json.JSONEncoder):
    def default(self, obj):
        if isinstance(obj, np.bool_):
            return bool(obj)
        if isinstance(obj, np.integer):
            return int(obj)
        if isinstance(obj, np.floating):
            return float(obj)
        if isinstance(obj, np.ndarray):
            return obj.tolist()
        if isinstance(obj, (set, frozenset)):
            return sorted(obj)
        return super(NpEncoder, self).default(obj)


def write_summary(summary, path):
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        json.dump(summary, f, cls=NpEncoder, sort_keys=True, indent=4)
        f.write('\n')
    logger.info(f'Summary written to {path}')
