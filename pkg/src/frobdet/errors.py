"""Exception types raised across the package."""


class FrobdetError(Exception):
    """Base class for all errors raised by frobdet."""


class ZeroInverse(FrobdetError):
    """Multiplicative inverse of zero was requested."""


class VarMismatch(FrobdetError):
    """Operands live over different fields or variable counts."""


class NotHomogeneous(FrobdetError):
    """A polynomial (or polynomial sum) is not homogeneous of one degree."""


class ZeroModP(FrobdetError):
    """All coefficients of an input vanish after reduction mod p."""


class ParseError(FrobdetError):
    """Polynomial text does not conform to the input grammar."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class NotACurve(FrobdetError):
    """A plane-curve operation was applied to a non-curve input."""


class GenusZero(FrobdetError):
    """A genus >= 1 operation was applied to a genus-0 curve."""


class NonInjectivePower(FrobdetError):
    """The p-th power map on the coordinate ring has a kernel.

    Signals a non-reduced (or otherwise degenerate) defining form; such
    inputs are rejected by the module builders.
    """


class NoStabilization(FrobdetError):
    """Saturation dimensions failed to stabilize within the power cap."""


class NotSquare(FrobdetError):
    """Generator and relation counts of a presentation differ."""


class FreenessCheckFailed(FrobdetError):
    """Kernel dimensions beyond the cutoff contradict a free first syzygy."""


class SizeCap(FrobdetError):
    """Exact determinant requested for a matrix above the size cap."""


class NotSkew(FrobdetError):
    """Pfaffian of a matrix that is not alternating skew-symmetric."""


class OddSize(FrobdetError):
    """Pfaffian of an odd-sized matrix."""


class DegenerateSamples(FrobdetError):
    """Every sampled point annihilated the reference form; re-seed."""


class Mismatch(FrobdetError):
    """The determinant is not a scalar multiple of the expected power."""

    def __init__(self, message, residual=None):
        self.residual = residual
        super().__init__(message)


class DegreeIncompatible(FrobdetError):
    """Determinant degree is incompatible with the form degree."""
