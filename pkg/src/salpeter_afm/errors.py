"""Exception hierarchy shared by every solver in the package."""

from __future__ import annotations


class AfmError(Exception):
    """Base class for all package errors."""


class DomainError(AfmError, ValueError):
    """An argument lies outside the domain where the formula is defined."""


class BracketError(AfmError, ValueError):
    """The supplied bracket does not enclose a sign change."""


class ExtremizationError(AfmError, RuntimeError):
    """No interior stationary point was found for the auxiliary field."""


class NoBoundState(AfmError):
    """The requested state does not exist for these parameters."""


class Unphysical(NoBoundState):
    """The parameters describe a potential excluded from physical study."""


class CriticalExceeded(NoBoundState):
    """A coupling is beyond the value where the approximate spectrum ends."""


class NoSpectrum(NoBoundState):
    """No bound level with these quantum numbers can appear at any coupling."""


class ConvergenceFailure(AfmError, RuntimeError):
    """The numerical eigensolver did not converge within its size budget."""


class NoBoundStateWarning(UserWarning):
    """Issued when a formula returns a value that cannot describe a bound state."""


class RangeWarning(UserWarning):
    """Issued when a fitted model is evaluated outside its validated range."""
