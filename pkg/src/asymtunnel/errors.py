"""Exception hierarchy.

Domain errors (bad parameters, bad configuration) derive from ``ValueError``;
numerical failures derive from ``ArithmeticError``. The CLI maps the two
families to distinct exit codes.
"""


class TunnelingError(Exception):
    """Base class for every error raised by this package."""


class DomainError(TunnelingError, ValueError):
    """Parameters outside the model's domain (|alpha| >= 1, g == 0, ...)."""


class NonSquare(DomainError):
    """A matrix argument is not square (or is too large)."""


class StepTooLarge(DomainError):
    """Integrator step too coarse to resolve the probability oscillation."""


class WindowTooShort(DomainError):
    """Averaging window covers fewer oscillation periods than required."""


class NumericalError(TunnelingError, ArithmeticError):
    """A computation left the regime where its result can be trusted."""


class DegenerateSpectrum(NumericalError):
    """Eigenvalues too close to biorthogonalize (exceptional-point proximity)."""


class NonPositiveNorm(NumericalError):
    """Norm factor vanished, went negative, or picked up an imaginary part."""
