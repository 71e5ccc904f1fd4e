"""Exception types shared across the toolkit."""


class ColdwaveError(Exception):
    """Base class for all toolkit errors."""


class CyclotronResonance(ColdwaveError):
    """Requested frequency sits on (or too near) a cyclotron resonance,
    where the cold-plasma response diverges."""


class MissingElectrons(ColdwaveError):
    """Operation requires an electron species and none is present."""


class LengthMismatch(ColdwaveError):
    """Paired sequences have inconsistent lengths."""


class DegenerateQuartic(ColdwaveError):
    """Both leading dispersion coefficients vanish; no finite root."""


class BracketTooWide(ColdwaveError):
    """A frequency bracket could not be subdivided around its poles."""


class SingularCoefficient(ColdwaveError):
    """Leading ODE coefficient vanishes inside the integration interval."""


class StartNotHyperbolic(ColdwaveError):
    """Characteristic tracing must start strictly inside the hyperbolic
    region."""


class DualNormSingular(ColdwaveError):
    """Dual-weighted norm requested for a field supported on cells that
    straddle the sonic curve."""


class SpecInvalid(ColdwaveError):
    """Multiplier specification violates its admissibility constraints."""


class InadmissibleBoundary(ColdwaveError):
    """Boundary sign conditions for the mixed problem do not hold."""


class FactorizationFailure(ColdwaveError):
    """Dense factorization produced non-finite values."""

    def __init__(self, message, condition_estimate=None):
        super().__init__(message)
        self.condition_estimate = condition_estimate


class InsufficientLevels(ColdwaveError):
    """Diagnostic needs at least three refinement levels."""
