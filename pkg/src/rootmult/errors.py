"""Exception hierarchy shared by every module."""


class RootMultError(Exception):
    """Base class for all errors raised by rootmult."""


class DiskContainsZero(RootMultError, ZeroDivisionError):
    """A disk that must exclude the origin does not."""


class RepeatedRoot(RootMultError):
    """Two roots coincide (exact) or two root disks intersect."""


class ZeroRoot(RootMultError):
    """A listed root is zero; the zero root is tracked separately as m0."""


class MatrixSingular(RootMultError, ZeroDivisionError):
    """An exact linear system has no unique solution."""


class PrecisionTooCoarse(RootMultError):
    """The disk radius is too large for the requested bound."""


class AmbiguousDisk(RootMultError):
    """A result disk does not isolate exactly one integer.

    Carries enough information for a caller to retry with better data.
    """

    def __init__(self, index, diameter, recommended_bits=None, message=None):
        self.index = index
        self.diameter = diameter
        self.recommended_bits = recommended_bits
        if message is None:
            message = f"result disk {index} of diameter {diameter} does not isolate one integer"
            if recommended_bits is not None:
                message += f" (recommended root precision: {recommended_bits} bits)"
        super().__init__(message)


class NegativeMultiplicity(RootMultError):
    """A recovered multiplicity is below its admissible minimum."""


class NonIntegralSolution(RootMultError):
    """The exact solution vector is not made of positive integers."""


class NonZeroSkippedCoefficient(RootMultError):
    """A codegree skipped by a change of variable carries a nonzero coefficient."""

    def __init__(self, codegree):
        self.codegree = codegree
        super().__init__(f"coefficient at codegree {codegree} is nonzero; "
                         "the spectrum is not symmetric under this substitution")


class InconsistentInput(RootMultError):
    """Supplied data contradict each other (e.g. surplus coefficients disagree)."""
