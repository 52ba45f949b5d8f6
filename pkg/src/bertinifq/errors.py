"""Shared exception types, mapped to CLI exit codes in cli.py."""


class DomainError(ValueError):
    """Input outside an operation's mathematical domain."""


class DivergenceError(DomainError):
    """Series/product evaluated where it does not converge."""


class CapacityError(RuntimeError):
    """Requested computation exceeds a configured enumeration cap."""


class UnsatWithinCapError(RuntimeError):
    """No certified solution found below the configured scan limit.

    Never a claim of nonexistence; only that the scan gave up.
    """


class InconclusiveError(RuntimeError):
    """A certified comparison stayed inconclusive at the precision cap."""
