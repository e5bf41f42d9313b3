"""Exception types shared across the package."""


class InvalidRankError(ValueError):
    """The requested rank is outside the valid range (rank >= 1)."""


class RankCapError(ValueError):
    """The requested rank exceeds a configured computational cap."""


class ConsistencyError(RuntimeError):
    """An internal mathematical cross-check failed.

    Raised when a computation contradicts an identity the whole
    construction depends on (e.g. an inversion set that belongs to no
    permutation).  This is never caused by bad user input; it would
    indicate a bug in the implementation.
    """
