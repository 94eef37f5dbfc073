"""Exception hierarchy.

Every domain failure raised by the library derives from :class:`RobustEntError`,
so callers (the CLI in particular) can separate domain errors from bugs.
"""


class RobustEntError(Exception):
    """Base class for all domain errors."""


class NonHermitianError(RobustEntError, ValueError):
    pass


class NonUnitaryError(RobustEntError, ValueError):
    pass


class InvalidStateError(RobustEntError, ValueError):
    """A matrix or vector fails the density / pure-state invariants."""


class IncompleteKrausError(RobustEntError, ValueError):
    pass


class NotCompletelyPositiveError(RobustEntError, ValueError):
    pass


class InvalidChannelError(RobustEntError, ValueError):
    """Malformed transfer matrix or channel description."""


class NotUnitalError(RobustEntError, ValueError):
    pass


class NotPositiveError(RobustEntError, ValueError):
    pass


class NoThresholdError(RobustEntError):
    """The pair is still not entanglement annihilating at the horizon."""


class AlreadyAnnihilatingError(RobustEntError):
    pass


class NoValidRootError(RobustEntError):
    pass


class PoleHitError(RobustEntError):
    pass


class DegenerateScalingError(RobustEntError):
    pass


class BoundaryChannelError(RobustEntError):
    """Channel on the boundary of the positive cone; no Sinkhorn reduction."""


class VerificationFailedError(RobustEntError):
    pass


class NoConvergenceError(RobustEntError):
    pass


class OutOfTableError(RobustEntError, ValueError):
    pass


class NeverAnnihilatingError(RobustEntError):
    pass


class OutOfRangeError(RobustEntError, ValueError):
    pass


class StillEntangledError(RobustEntError):
    pass
