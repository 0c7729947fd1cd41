"""Exception types shared across the package."""


class SpinorSurfError(Exception):
    """Base class for all package-specific failures."""


class DomainError(SpinorSurfError, ValueError):
    """Evaluation requested outside a field's declared rectangle."""


class ConfigurationError(SpinorSurfError, ValueError):
    """Inconsistent or insufficient configuration (grid too small, bad paths, ...)."""


class DegenerateMetricError(SpinorSurfError, ValueError):
    """Conformal factor below tolerance where a positive metric is required."""


class UndefinedMapError(SpinorSurfError, ValueError):
    """Gauss map requested where both spinor components vanish."""


class PoleError(SpinorSurfError, ValueError):
    """Spectral parameter sits on the pole 2i*lambda - mu = 0 of the closed forms."""


class IntegrationError(SpinorSurfError, RuntimeError):
    """Numerical integration hit non-finite data; carries the offending location."""

    def __init__(self, message, location=None):
        super().__init__(message)
        self.location = location


class BlowUpError(SpinorSurfError, RuntimeError):
    """Time evolution produced non-finite values; carries the last good time."""

    def __init__(self, message, last_good_time):
        super().__init__(message)
        self.last_good_time = last_good_time
