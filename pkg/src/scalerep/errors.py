"""Exception types shared across the package.

Three failure families are kept apart on purpose: caller mistakes
(``UsageError``), quantities that came out but not at the requested
accuracy (``AccuracyError``), and iterations that never met their
stopping rule (``ConvergenceError``).  The CLI maps ``UsageError`` to
exit code 2; everything else surfaces as a failed check.
"""

from __future__ import annotations


class UsageError(ValueError):
    """Bad arguments, sizes, or configuration supplied by the caller."""


class AccuracyError(RuntimeError):
    """A result was produced but its measured residual exceeds the threshold.

    The offending residual is kept on the exception so reports can record it.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = float(residual)


class ConvergenceError(RuntimeError):
    """An iteration hit its hard cap before meeting its tolerance."""

    def __init__(self, message: str, last_term: float, trace=None):
        super().__init__(message)
        self.last_term = float(last_term)
        self.trace = list(trace) if trace is not None else []


class SingularOperatorError(RuntimeError):
    """A linear solve was requested at (numerically) singular data."""

    def __init__(self, message: str, condition_estimate: float):
        super().__init__(message)
        self.condition_estimate = float(condition_estimate)
