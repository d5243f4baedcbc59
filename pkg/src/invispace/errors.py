"""Exception hierarchy shared by all modules."""


class InvispaceError(Exception):
    """Base class for all library errors."""


class InvalidInputError(InvispaceError, ValueError):
    """Input violates a structural requirement (non-finite, wrong shape, ...)."""


class PreconditionError(InvispaceError):
    """A documented operation precondition does not hold for the given data."""


class UnsupportedDimensionError(InvispaceError):
    """A subspace has a dimension the operation cannot handle."""


class InfeasibleRecordError(InvispaceError):
    """A measurement record admits no consistent affine solution."""
