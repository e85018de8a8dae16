"""Exception hierarchy shared by every fracgreen module."""

from __future__ import annotations


class FracGreenError(Exception):
    """Base class for all library errors."""


class InputError(FracGreenError, ValueError):
    """Parameters or data violate a stated constraint."""


class NumericalError(FracGreenError, ArithmeticError):
    """A numerical procedure could not deliver the requested accuracy."""


class DomainError(InputError):
    pass


class ThetaNotZero(InputError):
    pass


class EdgeDecayViolation(InputError):
    pass


class StabilityViolation(InputError):
    pass


class NonConvergence(NumericalError):
    pass


class SeriesDivergence(NumericalError):
    """Raised by the two-relaxation kernel series.

    ``k`` carries the offending wavenumber when the error is raised from a
    spectral solve; ``index`` is the position in a vectorized argument.
    """

    def __init__(self, message: str, k: float | None = None, index: int | None = None):
        super().__init__(message)
        self.k = k
        self.index = index


class QuadratureFailure(NumericalError):
    pass


class RealnessViolation(NumericalError):
    pass
