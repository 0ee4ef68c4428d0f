"""
Exception hierarchy shared by the library and the command line.

The CLI maps these onto exit codes: ``ParameterError`` and ``ConfigError``
exit with 2, I/O failures with 3.
"""


class GenHermiteError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(GenHermiteError, ValueError):
    """A parameter lies outside its admissible range."""


class ConfigError(GenHermiteError):
    """A tolerance profile could not be loaded or is malformed."""


class HermiteOverflowError(GenHermiteError, OverflowError):
    """The unnormalized Hermite recurrence left the double-precision range."""

    def __init__(self, degree, message=None):
        self.degree = degree
        super().__init__(message or f"H_n(x) overflows double precision at degree {degree}")


class QuadratureExactnessError(GenHermiteError):
    """The quadrature rule is too small to integrate the requested products exactly."""


class NonFiniteError(GenHermiteError, ArithmeticError):
    """An integrand or difference stencil produced a non-finite value."""
