"""Exception types shared across the package."""


class TangleError(Exception):
    """Base class for all tanglekit errors."""


class DimensionError(TangleError, ValueError):
    """Widths of states, operators or filters do not match."""


class NormalizationError(TangleError, ValueError):
    """A normalized state was required but the input is not normalized."""


class InvalidStateError(TangleError, ValueError):
    """A state or density matrix violates its invariants."""


class FilterSpecError(TangleError, ValueError):
    """A filter specification is malformed or fails validation."""
