"""Exception types shared across the package."""


class LegHeightsError(Exception):
    """Base class for all package-specific errors."""


class AllZero(LegHeightsError):
    """Every projective coordinate vanishes (or a polynomial map hit 0:0:0)."""


class ArityMismatch(LegHeightsError):
    """Argument list length does not match the polynomial's variable count."""


class BadLambda(LegHeightsError):
    """The base parameter is a singular value (0 or 1)."""


class LambdaMismatch(LegHeightsError):
    """Group-law operands live on fibers over different base parameters."""


class NonConvergence(LegHeightsError):
    """A height limit could not be certified within the configured budget."""


class DomainError(LegHeightsError):
    """Argument outside the analytic domain of definition."""


class PoleError(LegHeightsError):
    """Evaluation too close to a lattice point."""


class LowImaginaryPart(LegHeightsError):
    """tau is below the certified strip of the series evaluator."""


class NoConvergence(LegHeightsError):
    """An iterative inversion failed to converge."""


class InvalidInput(LegHeightsError):
    """Malformed user input (CLI arguments, family files, sample ranges)."""
