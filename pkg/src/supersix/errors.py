"""Exception types shared across the package."""


class SuperSixError(Exception):
    """Base class for package errors."""


class SingularSystem(SuperSixError):
    """Exact elimination found no nonzero pivot. Level systems built from
    valid inputs are strictly diagonally dominant, so this signals a
    modeling bug rather than a bad game position."""


class ExhaustiveCapExceeded(SuperSixError):
    """Exhaustive strategy enumeration was asked for a total beyond the
    configured cap."""


class StageAssumptionViolated(SuperSixError):
    """A staged-optimization dominance assumption (continue at lids 1-2,
    stop at lids 4-5) failed at some decision point."""

    def __init__(self, message: str, point=None):
        super().__init__(message)
        self.point = point


class NonConvergence(SuperSixError):
    """Policy iteration hit its iteration cap; carries the cycle of
    strategies visited."""

    def __init__(self, message: str, cycle=None):
        super().__init__(message)
        self.cycle = cycle or []


class TotalCapExceeded(SuperSixError):
    """A requested total lies above the configured maximum."""
