"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class RecolorError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionError(RecolorError):
    """An input violates a documented precondition (wrong family,
    palette out of range, size mismatch, invalid bipartition, ...)."""


class InfeasibleError(PreconditionError):
    """The requested transformation provably does not exist."""


class StateSpaceError(PreconditionError):
    """A brute-force search would exceed the configured limits."""


class RoundLimitError(RecolorError):
    """The synchronous simulator exceeded its round cap."""


class VerificationError(RecolorError):
    """An operation required a feasible schedule and got an infeasible one."""
