"""Exception hierarchy shared by every module."""


class TNetError(Exception):
    """Base class; the CLI prints ``type(err).__name__`` on stderr."""


class TooLarge(TNetError):
    pass


class TooSmall(TNetError):
    pass


class NeedsDedup(TNetError):
    pass


class DomainError(TNetError, ValueError):
    pass


class BadInput(TNetError, ValueError):
    pass


class GaveUp(TNetError):
    pass


class BadDimension(TNetError):
    pass


class NoProgress(TNetError):
    pass


class Infeasible(TNetError):
    pass


class WrongDimension(TNetError):
    pass


class SizeExceeded(TNetError):
    pass


class TooFewPoints(TNetError):
    pass


class ParseError(TNetError, ValueError):
    pass


class TransversalFound(TNetError):
    """Raised when a (d+1)-set met by every edge stops the stabbing loop.

    ``family`` holds the t-subsets of that set; every hyperedge with at
    least t vertices in it contains one of them, so callers may accept it
    as the net.
    """

    def __init__(self, message, family):
        super().__init__(message)
        self.family = family
