"""Exception hierarchy shared by all modules."""


class JorgensenError(Exception):
    """Base class for every error raised by this package."""


class DegenerateLineError(JorgensenError):
    pass


class DomainError(JorgensenError, ValueError):
    """A family parameter lies outside its admissible range."""


class NoConvergenceError(JorgensenError):
    pass


class NoSeedError(JorgensenError, KeyError):
    pass


class InconsistentRootError(JorgensenError):
    """The solved endpoint does not make the expected element parabolic."""


class DegenerateError(JorgensenError):
    """The pair handed to the normalizer is not parabolic/non-elementary."""
