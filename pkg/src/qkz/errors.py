"""Typed errors. Every failure mode is an exception; no silent wrong answers.

``DegenerateParameterError`` signals a non-generic parameter point (some
denominator or resonance condition collapsed); callers are expected to
resample and retry rather than recover in place.
"""


class QkzError(Exception):
    pass


class ConfigError(QkzError):
    """Invalid CLI / suite configuration."""


class SamplingError(QkzError):
    """Generic-point sampler exhausted its retry budget."""


class DegenerateParameterError(QkzError):
    """A parameter point failed a genericity requirement at use time."""


class ResonanceError(DegenerateParameterError):
    """A diagonal eigenvalue of the level-by-level solve hit 1."""


class SingularMatrixError(QkzError):
    """Exact linear solve met a non-invertible pivot chain."""
