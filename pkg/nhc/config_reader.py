import json
import logging

import _jsonnet

logger = logging.getLogger(__name__)


def _coerce(value):
    """ jsonnet std.extVar values arrive as strings. """
    if not isinstance(value, str):
        return value
    if value == 'true':
        return True
    if value == 'false':
        return False
    if value.lstrip('-').isnumeric():
        return int(value)
    if '.' in value and value.lstrip('-').replace('.', '', 1).isnumeric():
        return float(value)
    return value


class ConfigReader:
    """ Experiment config in jsonnet, handed to a class as ``section__key`` kwargs.

    ``{graph: {n: 1000}, bench: {kind: 'add'}}`` becomes
    ``cls(graph__n=1000, bench__kind='add', bench__config={...})``.
    """

    def __init__(self, config_file, ext_vars=None):
        self.config_file = config_file
        self.config = json.loads(_jsonnet.evaluate_file(str(config_file), ext_vars=ext_vars or {}))

    def flatten(self):
        params = {}
        stack = [('', self.config)]
        while stack:
            prefix, value = stack.pop()
            if isinstance(value, dict):
                for key, sub_value in value.items():
                    stack.append((f'{prefix}{key}__', _coerce(sub_value)))
            else:
                params[prefix[:-2]] = value
        return params

    def read(self, cls, **overrides):
        """ Instantiate ``cls``; ``overrides`` that are not None win over the file. """
        params = self.flatten()
        params.update({key: value for key, value in overrides.items() if value is not None})
        params['bench__config'] = self.config
        logger.info(f'Loaded {self.config_file}: {len(params) - 1} parameters')
        return cls(**params)
