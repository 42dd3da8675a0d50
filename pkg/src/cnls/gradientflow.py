"""Normalized gradient flow for the coupled ground-state problem.

Given target masses ``(a1, a2)`` the flow seeks positive profiles
``(phi1, phi2)`` with ``h sum phi_j^2 = a_j^2`` solving the coupled
eigenvalue system

    -phi_j'' + omega_j phi_j = mu_j phi_j^3 + beta phi_{3-j}^2 phi_j.

Each iteration takes one semi-implicit backward-Euler step per component,

    (1/tau - Lap_h - mu_j phi_j^2 - beta phi_{3-j}^2) phi_j_star = phi_j / tau,

with the interaction potentials frozen at the current iterate and ``Lap_h``
the 3-point Laplacian with homogeneous Dirichlet ends on a truncated
interval, then projects back onto the mass constraint.  The eigenvalues are
recovered from the converged profiles as Rayleigh-type quotients.

The flow grid is an ordinary finite-difference grid, independent of the
spectral grid used for time evolution; comparisons between the two use the
band-limited resampling in the analysis module.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ConfigError,
    DomainError,
    NonConvergenceError,
    SingularSystemError,
    StepFailureError,
)
from .profiles import CoupledParams

__all__ = [
    "GroundStateResult",
    "tridiagonal_solve",
    "befd_step",
    "compute_omega",
    "flow_energy",
    "equation_residual",
    "default_flow_domain",
    "solve_ground_state",
]


@dataclass(frozen=True)
class GroundStateResult:
    """Converged profiles of the normalized gradient flow.

    ``phi1, phi2`` hold interior-node values of the finite-difference grid;
    the Dirichlet endpoint values (zero) are not stored.  ``x`` holds the
    interior nodes, ``h`` the spacing, and ``half_width`` the truncation
    radius, so ``x`` runs from ``-half_width + h`` to ``half_width - h``.
    ``residual`` is the stopping metric ``max_k |phi^{n+1} - phi^n| / tau``
    at the final iteration and ``energy_trace[i]`` the discrete energy after
    ``i`` steps.
    """

    phi1: np.ndarray
    phi2: np.ndarray
    omega1: float
    omega2: float
    iterations: int
    residual: float
    energy_trace: np.ndarray = field(repr=False)
    x: np.ndarray = field(repr=False)
    h: float
    half_width: float


def tridiagonal_solve(
    lower: np.ndarray, diag: np.ndarray, upper: np.ndarray, rhs: np.ndarray
) -> np.ndarray:
    """Solve a tridiagonal system by elimination without pivoting.

    Parameters
    ----------
    lower, diag, upper : numpy.ndarray
        The three bands, all of length ``n``; ``lower[0]`` and ``upper[-1]``
        are ignored.  Row ``i`` of the system reads
        ``lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]``.
    rhs : numpy.ndarray
        Right-hand side, length ``n``.

    Returns
    -------
    numpy.ndarray
        The solution vector.

    Raises
    ------
    SingularSystemError
        On a zero (or numerically degenerate) pivot.  Diagonally dominant
        systems, such as the ones the flow assembles, never trigger this.
    """
    n = len(diag)
    if not (len(lower) == len(upper) == len(rhs) == n):
        raise ValueError("tridiagonal bands and rhs must share one length")
    work_diag = np.array(diag, dtype=float)
    work_rhs = np.array(rhs, dtype=float)
    for i in range(1, n):
        pivot = work_diag[i - 1]
        if abs(pivot) <= 1e-13 * (abs(diag[i - 1]) + abs(upper[i - 1]) + abs(lower[i])):
            raise SingularSystemError(f"zero pivot at row {i - 1}")
        factor = lower[i] / pivot
        work_diag[i] -= factor * upper[i - 1]
        work_rhs[i] -= factor * work_rhs[i - 1]
    if work_diag[-1] == 0.0:
        raise SingularSystemError(f"zero pivot at row {n - 1}")
    out = np.empty(n)
    out[-1] = work_rhs[-1] / work_diag[-1]
    for i in range(n - 2, -1, -1):
        out[i] = (work_rhs[i] - upper[i] * out[i + 1]) / work_diag[i]
    return out


def _normalize(phi: np.ndarray, target_mass: float, h: float) -> np.ndarray:
    norm = np.sqrt(h * np.sum(phi**2))
    if norm == 0.0:
        raise StepFailureError("flow iterate collapsed to zero; try a smaller tau")
    return (target_mass / norm) * phi


def befd_step(
    phi_pair: tuple[np.ndarray, np.ndarray],
    params: CoupledParams,
    masses: tuple[float, float],
    tau: float,
    h: float,
) -> tuple[np.ndarray, np.ndarray]:
    """One backward-Euler step of the flow followed by mass projection.

    ``phi_pair`` holds interior-node values (Dirichlet zeros implied at both
    ends).  Returns the new pair; inputs are not modified.  After the
    projection ``h sum phi_j^2 = a_j^2`` holds exactly up to rounding.

    Raises
    ------
    StepFailureError
        If the frozen-potential system is singular (possible for large
        ``tau * beta`` with attractive coupling); a smaller ``tau`` helps.
    """
    if tau <= 0:
        raise ConfigError(f"flow step must be positive, got {tau!r}")
    phi1, phi2 = phi_pair
    density1 = phi1**2
    density2 = phi2**2
    inv_h2 = 1.0 / (h * h)
    out = []
    for phi, own, other, target in (
        (phi1, params.mu1 * density1, params.beta * density2, masses[0]),
        (phi2, params.mu2 * density2, params.beta * density1, masses[1]),
    ):
        n = len(phi)
        diag = (1.0 / tau + 2.0 * inv_h2) - own - other
        band = np.full(n, -inv_h2)
        try:
            star = tridiagonal_solve(band, diag, band, phi / tau)
        except SingularSystemError as exc:
            raise StepFailureError(
                f"flow step singular at tau = {tau!r}; try a smaller tau"
            ) from exc
        out.append(_normalize(star, target, h))
    return out[0], out[1]


def compute_omega(
    phi_pair: tuple[np.ndarray, np.ndarray], params: CoupledParams, h: float
) -> tuple[float, float]:
    """Eigenvalues of the coupled system as quotients of the profiles.

    ``omega_j = int(-(dx phi_j)^2 + mu_j phi_j^4 + beta phi_1^2 phi_2^2)
    / int phi_j^2`` with the ``h sum`` quadrature (endpoint values vanish).
    The gradient term is the summation-by-parts form of the 3-point stencil,
    ``sum (phi[i+1] - phi[i])^2 / h`` over cells, so the quotient is exactly
    the eigenvalue satisfied by a fixed point of the discrete flow; a
    centered-difference gradient would bias it by ``O(h^2)`` relative to the
    stencil and break that identity.

    Raises
    ------
    DomainError
        If a component has zero mass.
    """
    phi1, phi2 = phi_pair
    cross = phi1**2 * phi2**2
    omegas = []
    for phi, mu in ((phi1, params.mu1), (phi2, params.mu2)):
        denominator = h * np.sum(phi**2)
        if denominator == 0.0:
            raise DomainError("cannot form the eigenvalue quotient of a zero profile")
        padded = np.concatenate(([0.0], phi, [0.0]))
        kinetic = np.sum(np.diff(padded) ** 2) / h
        numerator = h * np.sum(mu * phi**4 + params.beta * cross) - kinetic
        omegas.append(numerator / denominator)
    return omegas[0], omegas[1]


def flow_energy(
    phi_pair: tuple[np.ndarray, np.ndarray], params: CoupledParams, h: float
) -> float:
    """Discrete energy of real profiles: the time-evolution energy functional
    with one-sided differences for the gradient terms (Dirichlet ends)."""
    phi1, phi2 = phi_pair
    total = 0.0
    for phi, mu in ((phi1, params.mu1), (phi2, params.mu2)):
        padded = np.concatenate(([0.0], phi, [0.0]))
        total += 0.5 * np.sum(np.diff(padded) ** 2) / h
        total -= 0.25 * mu * h * np.sum(phi**4)
    return total - 0.5 * params.beta * h * np.sum(phi1**2 * phi2**2)


def equation_residual(
    phi_pair: tuple[np.ndarray, np.ndarray],
    params: CoupledParams,
    omegas: tuple[float, float],
    h: float,
) -> tuple[float, float]:
    """Sup norm of the discrete eigenvalue equations at the given profiles.

    Evaluates ``-Lap_h phi_j + omega_j phi_j - mu_j phi_j^3
    - beta phi_{3-j}^2 phi_j`` on interior nodes (Dirichlet ghosts) and
    returns the two sup norms.
    """
    phi1, phi2 = phi_pair
    residuals = []
    for phi, mu, omega, other in (
        (phi1, params.mu1, omegas[0], phi2),
        (phi2, params.mu2, omegas[1], phi1),
    ):
        padded = np.concatenate(([0.0], phi, [0.0]))
        laplacian = (padded[2:] - 2.0 * phi + padded[:-2]) / (h * h)
        residual = -laplacian + omega * phi - mu * phi**3 - params.beta * other**2 * phi
        residuals.append(float(np.abs(residual).max()))
    return residuals[0], residuals[1]


def default_flow_domain(
    masses: tuple[float, float], params: CoupledParams
) -> tuple[float, int]:
    """Truncation radius and interval count from the scalar mass-frequency relation.

    Each component alone would have ``omega_j = (mu_j a_j^2 / 4)^2``; the
    radius ``16 max(1, 1 / sqrt(min omega))`` keeps several decay lengths of
    the widest such profile inside the domain, and the interval count targets
    a spacing of ``1/16``.
    """
    omega_guess = min(
        (params.mu1 * masses[0] ** 2 / 4.0) ** 2,
        (params.mu2 * masses[1] ** 2 / 4.0) ** 2,
    )
    if omega_guess <= 0:
        raise DomainError("masses must be positive to size the flow domain")
    half_width = 16.0 * max(1.0, 1.0 / np.sqrt(omega_guess))
    intervals = int(round(2.0 * half_width * 16.0))
    return half_width, intervals


def solve_ground_state(
    params: CoupledParams,
    masses: tuple[float, float],
    domain: tuple[float, int] | None = None,
    tau: float = 0.1,
    tol: float = 1e-8,
    max_iter: int = 100_000,
) -> GroundStateResult:
    """Run the normalized flow to convergence from a Gaussian initial guess.

    Parameters
    ----------
    params : CoupledParams
        System constants.
    masses : tuple of float
        Constraint values ``(a1, a2)``; component ``j`` is normalized so
        ``h sum phi_j^2 = a_j^2``.
    domain : tuple (half_width, intervals), optional
        Truncation radius and number of grid intervals; by default sized
        from the masses via :func:`default_flow_domain`.
    tau, tol, max_iter
        Flow step, stopping tolerance on ``max |dphi| / tau``, and the
        iteration budget.

    Returns
    -------
    GroundStateResult

    Raises
    ------
    NonConvergenceError
        If the tolerance is not met within ``max_iter`` iterations.
    """
    a1, a2 = masses
    if a1 <= 0 or a2 <= 0:
        raise ConfigError(f"masses must be positive, got {masses!r}")
    if tol <= 0:
        raise ConfigError(f"tolerance must be positive, got {tol!r}")
    if tau <= 0:
        raise ConfigError(f"flow step must be positive, got {tau!r}")
    if domain is None:
        domain = default_flow_domain(masses, params)
    half_width, intervals = domain
    if half_width <= 0 or intervals < 4:
        raise ConfigError(f"invalid flow domain {domain!r}")
    h = 2.0 * half_width / intervals
    x = -half_width + h * np.arange(1, intervals)

    seed = np.exp(-0.5 * x**2)
    phi1 = _normalize(seed, a1, h)
    phi2 = _normalize(seed, a2, h)
    trace = [flow_energy((phi1, phi2), params, h)]

    residual = np.inf
    for iteration in range(1, max_iter + 1):
        new1, new2 = befd_step((phi1, phi2), params, masses, tau, h)
        residual = max(
            np.abs(new1 - phi1).max(),
            np.abs(new2 - phi2).max(),
        ) / tau
        phi1, phi2 = new1, new2
        trace.append(flow_energy((phi1, phi2), params, h))
        if residual <= tol:
            break
    else:
        raise NonConvergenceError(
            f"flow did not reach tol = {tol!r} in {max_iter} iterations "
            f"(last residual {residual!r})",
            residual,
        )

    if phi1.min() < 0 or phi2.min() < 0:
        raise StepFailureError("flow lost positivity; try a smaller tau")
    omega1, omega2 = compute_omega((phi1, phi2), params, h)
    return GroundStateResult(
        phi1=phi1,
        phi2=phi2,
        omega1=omega1,
        omega2=omega2,
        iterations=iteration,
        residual=float(residual),
        energy_trace=np.array(trace),
        x=x,
        h=h,
        half_width=half_width,
    )
