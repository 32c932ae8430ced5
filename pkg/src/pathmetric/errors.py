"""Exception hierarchy.

Input problems derive from :class:`InputError` (CLI exit code 2); exceeding a
configured work bound raises :class:`ResourceCap` (exit code 3).
"""


class PathMetricError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PathMetricError, ValueError):
    """Malformed or out-of-contract input."""


class ResourceCap(PathMetricError):
    """A pivot, row or cell budget was exceeded."""


class VertexNotOnPath(InputError):
    pass


class MissingWeight(InputError):
    pass


class InconsistentSystem(InputError):
    pass


class NotInvariant(InputError):
    pass


class WordClosureViolation(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConditionOrder(InputError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class ConditionCollision(InputError):
    """Raised with ``witness = (g, i, h, j)`` such that ``i*g == j*h``."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class SamplingExhausted(PathMetricError):
    pass


class InvalidPrime(InputError):
    pass


class AmbiguousShortestPath(InputError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotAMetric(InputError):
    pass


class DegenerateCell(PathMetricError):
    pass


class SignAmbiguous(PathMetricError):
    pass


class NoThresholdInInterval(PathMetricError):
    pass
