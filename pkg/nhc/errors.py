class NHCError(Exception):
    """ Base class for every error raised by the library. """


class GraphError(NHCError, ValueError):
    pass


class MissingNodeError(NHCError, KeyError):
    pass


class MissingEdgeError(NHCError, KeyError):
    pass


class HubPolicyError(NHCError, ValueError):
    pass


class DegenerateTailError(HubPolicyError):
    pass


class EngineStateError(NHCError, RuntimeError):
    pass


class StabilizationError(NHCError, RuntimeError):
    """ Raised when one event needs more message deliveries than the cap allows.

    :param processed: (int)  - messages delivered before giving up
    :param cap: (int)  - the cap that was hit
    :param pending: (list)  - a sample of (source, target, dist) still queued
    """

    def __init__(self, processed, cap, pending):
        self.processed = processed
        self.cap = cap
        self.pending = pending
        super().__init__(f'No quiescence after {processed} messages (cap {cap}); '
                         f'{len(pending)} pending, e.g. {pending[:5]}')


class MetricError(NHCError, ValueError):
    pass


class FormatError(NHCError, ValueError):
    def __init__(self, path, line, column, message):
        self.path = path
        self.line = line
        self.column = column
        super().__init__(f'{path}:{line}:{column}: {message}')


class ScriptError(NHCError, ValueError):
    def __init__(self, index, message):
        self.index = index
        super().__init__(f'event #{index}: {message}')


class LevelError(NHCError, IndexError):
    pass
