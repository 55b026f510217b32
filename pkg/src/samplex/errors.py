"""Exception hierarchy for samplex.

Two broad families matter for the CLI exit codes: problems with the
inputs/configuration (``ValidationError``, exit code 2) and numerical
breakdowns inside a computation (``NumericalError``, exit code 3).
"""


class SamplexError(Exception):
    """Base class for all samplex errors."""


class ValidationError(SamplexError):
    """Invalid input, configuration, or regime for the requested operation."""


class NumericalError(SamplexError):
    """A numerical routine failed to produce a trustworthy result."""


class NotPositiveDefiniteError(NumericalError):
    """Matrix passed to an SPD factorization is not positive definite."""


class ConvergenceFailureError(NumericalError):
    """Iterative spectral routine exhausted its budget without converging."""


class RateRegimeError(ValidationError):
    """Sample count M falls outside the regime required by the formula."""


class DivisibilityError(ValidationError):
    """Band parameters violate a divisibility condition of the construction."""


class SchemeCollisionError(ValidationError):
    """Generated sampling instants collide after reduction modulo the period."""


class SizeOverflowError(ValidationError):
    """Requested construction would exceed the configured size guard."""


class NoiseRequiredError(ValidationError):
    """Operation needs strictly positive noise variance (sigma^2 > 0)."""


class UniformVarianceRequiredError(ValidationError):
    """Formula assumes equal per-harmonic coefficient variances."""


class FilterViolationError(ValidationError):
    """Pre-sampling filter gain exceeds the passivity limit |H|^2 <= 1."""


class RegimeMismatchError(ValidationError):
    """Sampling scheme fails the optimality condition its regime requires."""


class SearchSpaceTooLargeError(ValidationError):
    """Exhaustive enumeration would exceed the candidate-count guard."""


class ConfigError(ValidationError):
    """Malformed experiment configuration (bad JSON shape or unknown keys)."""
