"""Exception hierarchy for qspt.

Validation problems (bad inputs, violated preconditions) derive from
``ValidationError``; failures discovered mid-computation derive directly from
``QsptError``.  The command line maps ``ConfigError`` to exit status 2 and any
other ``QsptError`` to exit status 3.
"""


class QsptError(Exception):
    """Base class for all package errors."""


class ValidationError(QsptError, ValueError):
    """Invalid input or violated precondition."""


class NonPositiveSplitting(ValidationError):
    """Doublet splitting must be strictly positive."""


class DetuningTooSmall(ValidationError):
    """Carrier detuning below the adiabaticity floor."""


class NonPositiveInput(ValidationError):
    """Quantity required to be strictly positive was not."""


class SelectionRuleViolation(ValidationError):
    """Angular momentum projection rules violated."""


class UnsupportedBranch(ValidationError):
    """Total angular momentum change beyond one unit."""


class ZeroDetuning(ValidationError):
    """Scaled detuning of zero makes the adiabatic reduction singular."""


class ComplexRoots(QsptError):
    """Characteristic polynomial has no real roots; outside model validity."""


class DegenerateBranch(QsptError):
    """Characteristic value coincides with the lower-branch pole."""


class PhaseConventionViolation(ValidationError):
    """Superposition coefficients do not satisfy the radiation-prepared phases."""


class GridError(ValidationError):
    """Propagation grid malformed (unsorted, too short, or wrong origin)."""


class IntegrationFailure(QsptError):
    """Adaptive integrator failed or produced inadmissible values."""


class InsufficientSamples(QsptError):
    """Trace too short or too coarse for pulse metric extraction."""


class NoModulation(QsptError):
    """Trace is flat; pulse metrics are undefined except the depth."""

    def __init__(self, depth: float):
        super().__init__(f"modulation depth {depth:.3e} below threshold")
        self.depth = depth


class ConfigError(QsptError):
    """Malformed configuration or species file."""
