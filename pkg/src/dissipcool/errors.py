"""Exception types raised across the package.

Numerical failures that a CLI run maps to exit status 3 derive from
:class:`NumericalError`; configuration/usage problems derive from
:class:`UsageError` (exit status 2).
"""


class DissipcoolError(Exception):
    """Base class for all package-specific errors."""


class NotHermitian(DissipcoolError):
    """A matrix required to be Hermitian is not, within tolerance."""


class BadLabel(DissipcoolError):
    """An atomic level label is not one of g0, g1, e0, e1."""


class DimensionMismatch(DissipcoolError):
    """Operator/state dimensions are incompatible."""


class DegenerateGround(DissipcoolError):
    """The interaction ground state is degenerate; the cooling target is not unique."""


class MultipleFrequencies(DissipcoolError):
    """More than one distinct laser detuning where a single frequency is required."""


class ZeroRabi(DissipcoolError):
    """A closed form requires a nonzero Rabi frequency."""


class BadConfig(DissipcoolError):
    """A scenario configuration is inconsistent or incomplete."""


class NumericalError(DissipcoolError):
    """Base class for failures of the numerical pipeline (CLI exit status 3)."""


class StepTooLarge(NumericalError):
    """Integrator state validation failed; reduce the time step."""


class DegenerateSteadyState(NumericalError):
    """The Liouvillian null space is (numerically) more than one-dimensional."""


class NotConverged(NumericalError):
    """A trajectory did not get close enough to the steady state for rate fitting."""


class NonMonotone(NumericalError):
    """The fidelity gap does not decrease over the fit window."""


class UsageError(DissipcoolError):
    """Invalid command line or configuration input (CLI exit status 2)."""
