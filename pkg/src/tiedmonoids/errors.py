"""Domain errors shared across the package.

Everything derives from ValueError so callers that only know stdlib
conventions can still catch malformed input the usual way.
"""


class DomainError(ValueError):
    """Base class for all input/domain errors raised by this package."""


class MalformedPartitionError(DomainError):
    """Blocks overlap, leave a gap, or contain out-of-range elements."""


class GroundMismatchError(DomainError):
    """Operands live on different ground sets / strand counts."""


class IndexRangeError(DomainError):
    """A generator or tie index is outside its admissible range."""


class BoundExceededError(DomainError):
    """An enumeration was requested beyond its configured bound."""


class BudgetExceededError(DomainError):
    """Closure ran out of its element budget.

    ``count`` carries the number of elements discovered before aborting.
    """

    def __init__(self, count, limit):
        super().__init__(f"element budget {limit} exceeded ({count} elements found)")
        self.count = count
        self.limit = limit


class UnknownFamilyError(DomainError):
    """Unrecognized monoid family / presentation name."""
