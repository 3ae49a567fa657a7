"""Exception types raised across the package."""


class RocnError(ValueError):
    """Base class for all input errors raised by rocnbell."""


class DimensionError(RocnError):
    """Array shapes are inconsistent with the requested operation."""


class NotRocnError(RocnError):
    """A matrix fails the row-orthogonality / column-normalization conditions."""

    def __init__(self, message, outcome=None):
        super().__init__(message)
        self.outcome = outcome


class OddDimensionError(RocnError):
    """The operation is only defined for an even number of Alice observables."""


class SizeLimitError(RocnError):
    """The requested size exceeds a configured guard."""


class VerificationError(RuntimeError):
    """A numerical verification residual exceeded its tolerance."""
