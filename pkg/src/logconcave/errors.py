"""Exception hierarchy shared by all logconcave modules."""


class LogconcaveError(Exception):
    """Base class for all package-specific errors."""


class FormatError(LogconcaveError):
    """Malformed input text (polynomial/point-set/SPS files)."""


class DegreeTooSmall(LogconcaveError):
    """Operation requires a larger polynomial degree."""


class ZeroPolynomial(LogconcaveError):
    """Operation is undefined for the zero polynomial."""


class ResourceLimit(LogconcaveError):
    """A configured size/work cap would be exceeded."""


class ExponentOverflow(ResourceLimit):
    """An exact power would exceed the configured bit budget."""


class CapExceeded(ResourceLimit):
    """Input larger than the configured instance cap."""


class ShapeError(LogconcaveError):
    """Expression does not have the required row/factor shape."""


class PreconditionFailed(LogconcaveError):
    """The mathematical hypothesis of an operation does not hold."""


class FatalInconsistency(LogconcaveError):
    """A proved statement failed to verify: indicates an implementation bug.

    Raising this is always a defect report, never a normal outcome; the
    CLI maps it to exit code 3.
    """
