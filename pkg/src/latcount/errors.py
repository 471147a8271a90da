"""Exception hierarchy shared by the counting modules and the CLI."""


class LatcountError(Exception):
    """Base class for every error raised by this package."""


class InputError(LatcountError, ValueError):
    """The user supplied an instance that cannot be counted as given."""


class InvalidMatrixError(InputError):
    pass


class UnboundedPolytopeError(InputError):
    pass


class InvalidHypergraphError(InputError):
    pass


class InvalidArgumentError(InputError):
    pass


class NotStableError(InputError):
    """A proposed stable set has two members inside one column support."""

    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class ResourceLimitError(LatcountError):
    """An oracle would exceed its configured table or search-space cap."""


class StructuralViolation(LatcountError, ArithmeticError):
    """An internal algebraic invariant failed (e.g. a non-divisor pivot)."""
