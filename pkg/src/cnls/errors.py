"""Exception types shared across the package.

Configuration and parameter problems derive from :class:`ValueError` so that
callers using plain ``except ValueError`` still catch them; runtime failures
of the solvers derive from :class:`RuntimeError`.
"""

from __future__ import annotations

__all__ = [
    "ConfigError",
    "DomainError",
    "IntegrationDivergedError",
    "NonConvergenceError",
    "SingularSystemError",
    "StepFailureError",
]


class ConfigError(ValueError):
    """Invalid configuration: bad constructor argument, config file, or CLI value."""


class DomainError(ValueError):
    """Mathematically invalid input (non-positive frequency, zero mass, ...)."""


class IntegrationDivergedError(RuntimeError):
    """Time stepping produced a non-finite field.

    Attributes
    ----------
    t_failed : float
        Time at which the non-finite value appeared.
    t_last : float
        Last time with a fully finite state.
    """

    def __init__(self, t_failed: float, t_last: float):
        super().__init__(
            f"integration diverged at t = {t_failed!r} (last finite state at t = {t_last!r})"
        )
        self.t_failed = t_failed
        self.t_last = t_last


class SingularSystemError(RuntimeError):
    """A linear system encountered a zero pivot and cannot be solved."""


class StepFailureError(RuntimeError):
    """A gradient-flow step could not be completed (try a smaller time step)."""


class NonConvergenceError(RuntimeError):
    """An iteration hit its step limit before meeting the tolerance.

    Attributes
    ----------
    residual : float
        Stopping measure at the moment the limit was reached.
    """

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual
