"""Model types, closed-form soliton profiles, and initial-data construction.

The coupled cubic system evolves two complex fields ``(u1, u2)`` with
self-interaction strengths ``mu1, mu2`` and cross coupling ``beta``:

    i dt u_j + dxx u_j + mu_j |u_j|^2 u_j + beta |u_{3-j}|^2 u_j = 0.

With the other component zero, each equation has the solitary-wave family

    R(t, x) = exp(i(omega t - v^2 t / 4 + v x / 2 + gamma))
              * Q_omega(x - v t - x0) / sqrt(mu),

built on the positive even profile ``Q_omega(x) = sqrt(2 omega) sech(sqrt(omega) x)``,
which solves ``-Q'' + omega Q = Q^3``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DomainError
from .grid import GridSpec

__all__ = [
    "SolitonSpec",
    "CoupledParams",
    "FieldPair",
    "sech",
    "ground_profile",
    "soliton_field",
    "initial_data",
]


@dataclass(frozen=True)
class SolitonSpec:
    """Parameters of one solitary wave: frequency, velocity, center, phase, slot.

    ``component`` selects which of the two fields the wave occupies.
    """

    omega: float
    v: float
    x0: float = 0.0
    gamma: float = 0.0
    component: int = 1

    def __post_init__(self):
        if not np.isfinite(self.omega) or self.omega <= 0:
            raise ConfigError(f"soliton frequency must be positive, got {self.omega!r}")
        for name in ("v", "x0", "gamma"):
            if not np.isfinite(getattr(self, name)):
                raise ConfigError(f"soliton {name} must be finite")
        if self.component not in (1, 2):
            raise ConfigError(f"soliton component must be 1 or 2, got {self.component!r}")


@dataclass(frozen=True)
class CoupledParams:
    """System constants: self-interaction strengths ``mu1, mu2`` and coupling ``beta``.

    ``beta`` may be any real number, zero included; the two equations then
    decouple, which is useful for single-component validation runs.
    """

    mu1: float
    mu2: float
    beta: float

    def __post_init__(self):
        if not np.isfinite(self.mu1) or self.mu1 <= 0:
            raise ConfigError(f"mu1 must be positive, got {self.mu1!r}")
        if not np.isfinite(self.mu2) or self.mu2 <= 0:
            raise ConfigError(f"mu2 must be positive, got {self.mu2!r}")
        if not np.isfinite(self.beta):
            raise ConfigError(f"beta must be finite, got {self.beta!r}")

    def mu(self, component: int) -> float:
        """Self-interaction strength of the given component (1 or 2)."""
        if component == 1:
            return self.mu1
        if component == 2:
            return self.mu2
        raise ValueError(f"component must be 1 or 2, got {component!r}")


@dataclass
class FieldPair:
    """The two complex component fields sampled on a shared grid, plus time.

    Both arrays must have the same length; entries are expected to stay
    finite (the steppers check and abort when they do not).
    """

    u1: np.ndarray
    u2: np.ndarray
    t: float

    def __post_init__(self):
        self.u1 = np.asarray(self.u1, dtype=complex)
        self.u2 = np.asarray(self.u2, dtype=complex)
        if self.u1.shape != self.u2.shape or self.u1.ndim != 1:
            raise ValueError(
                f"component fields must be 1-d arrays of equal length, "
                f"got shapes {self.u1.shape} and {self.u2.shape}"
            )
        if not np.isfinite(self.t):
            raise ValueError(f"field time must be finite, got {self.t!r}")

    def copy(self) -> "FieldPair":
        """Deep copy (fresh arrays, same time)."""
        return FieldPair(self.u1.copy(), self.u2.copy(), self.t)


def sech(z: np.ndarray) -> np.ndarray:
    """Hyperbolic secant, computed without overflow for large ``|z|``."""
    e = np.exp(-np.abs(z))
    return 2.0 * e / (1.0 + e * e)


def ground_profile(omega: float, x: np.ndarray) -> np.ndarray:
    """Positive even ground-state profile ``sqrt(2 omega) sech(sqrt(omega) x)``.

    Solves ``-Q'' + omega Q - Q^3 = 0`` with ``Q > 0`` and ``Q -> 0`` at
    infinity; the whole family is the rescaling
    ``Q_omega(x) = sqrt(omega) Q_1(sqrt(omega) x)`` of the unit-frequency
    profile.

    Parameters
    ----------
    omega : float
        Frequency parameter, must be positive.
    x : array_like
        Evaluation points (scalar or array).

    Returns
    -------
    numpy.ndarray or float
        Profile values, same shape as ``x``.
    """
    if not np.isfinite(omega) or omega <= 0:
        raise DomainError(f"ground profile needs omega > 0, got {omega!r}")
    root = np.sqrt(omega)
    return np.sqrt(2.0 * omega) * sech(root * np.asarray(x, dtype=float))


def soliton_field(spec: SolitonSpec, mu: float, t: float, grid: GridSpec) -> np.ndarray:
    """Sample the solitary wave of one decoupled component on the grid.

    Parameters
    ----------
    spec : SolitonSpec
        Wave parameters ``(omega, v, x0, gamma)``.
    mu : float
        Self-interaction strength of the component the wave lives in; the
        amplitude carries a ``1/sqrt(mu)`` factor.
    t : float
        Evaluation time.
    grid : GridSpec
        Spatial grid to sample on.

    Returns
    -------
    numpy.ndarray
        Complex field ``exp(i(omega t - v^2 t/4 + v x/2 + gamma))
        * Q_omega(x - v t - x0) / sqrt(mu)``.
    """
    if not np.isfinite(mu) or mu <= 0:
        raise DomainError(f"soliton field needs mu > 0, got {mu!r}")
    phase = spec.omega * t - 0.25 * spec.v**2 * t + 0.5 * spec.v * grid.x + spec.gamma
    envelope = ground_profile(spec.omega, grid.x - spec.v * t - spec.x0)
    return np.exp(1j * phase) * envelope / np.sqrt(mu)


def initial_data(
    spec1: SolitonSpec,
    spec2: SolitonSpec,
    params: CoupledParams,
    t0: float,
    grid: GridSpec,
) -> FieldPair:
    """Two-soliton initial state: one solitary wave in each component field.

    Component ``j`` receives the wave of ``spec_j`` evaluated at ``t0``, so a
    wave with velocity ``v`` and center ``x0`` starts at ``x = v t0 + x0``.

    Raises
    ------
    ConfigError
        If ``spec1.component != 1`` or ``spec2.component != 2``.
    """
    if spec1.component != 1 or spec2.component != 2:
        raise ConfigError(
            "initial data expects spec1 on component 1 and spec2 on component 2, "
            f"got components {spec1.component} and {spec2.component}"
        )
    u1 = soliton_field(spec1, params.mu1, t0, grid)
    u2 = soliton_field(spec2, params.mu2, t0, grid)
    return FieldPair(u1, u2, t0)
