"""Exception hierarchy shared by every treescale module."""


class TreeScaleError(Exception):
    """Base class for all errors raised by this package."""


class AddressError(TreeScaleError):
    """A vertex address, edge or end is invalid for the given tree parameters."""


class RepresentationError(TreeScaleError):
    """An automorphism representation violates its construction constraints."""


class NotHyperbolicError(TreeScaleError):
    """An operation requiring a hyperbolic automorphism received an elliptic one."""


class DegenerateAxisError(TreeScaleError):
    """A translation was requested between two equal ends."""


class OracleBudgetError(TreeScaleError):
    """A brute-force oracle was asked to exceed its configured budget."""


class InconclusiveError(TreeScaleError):
    """A windowed decision procedure ran out of budget before deciding.

    Carries the window radius that was exhausted so callers can report it.
    """

    def __init__(self, message: str, radius: int | None = None):
        super().__init__(message)
        self.radius = radius


class InternalConsistencyError(TreeScaleError):
    """An internal assertion failed; indicates a broken representation."""
