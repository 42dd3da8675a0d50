"""Post-collision outcome analysis: splitting, mass bookkeeping, peak tracking.

The collision experiments are judged by what ends up on each side of the
origin: the fields are split by the sharp indicator of ``x <= 0`` (not the
smooth cutoff used for localized momenta; the two serve different purposes),
per-component squared norms of the halves feed the ground-state mass
constraints, and peak trajectories over the recorded snapshots give outgoing
velocity estimates.  The left-going waves can then be compared pointwise,
after peak alignment, against profiles produced by the gradient-flow module
on its own finite-difference grid, resampled here by band-limited
interpolation.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .grid import GridSpec, quadrature, trig_interpolate
from .gradientflow import GroundStateResult
from .profiles import FieldPair

__all__ = [
    "AmbiguousPeakWarning",
    "CollisionReport",
    "PeakTrack",
    "split_at_origin",
    "l2_masses",
    "refine_peak",
    "peak_track",
    "compare_to_ground_state",
]


class AmbiguousPeakWarning(UserWarning):
    """A density profile had no unique maximum; the first index was used."""


@dataclass(frozen=True)
class CollisionReport:
    """Outcome summary of one collision run.

    Masses are squared norms (no 1/2 factor) of the split fields; peaks
    refer to the final-state densities ``|u_j|^2``; velocities are fitted
    over the trailing window of recorded snapshots.  The two optional error
    pairs are present only when the corresponding comparison was requested:
    against gradient-flow profiles, and against the elastic closed-form
    prediction.

    The split is exact bookkeeping: ``left_masses[j] + right_masses[j]``
    equals the total squared norm of component ``j`` to rounding error.
    """

    t_final: float
    left_masses: tuple[float, float]
    right_masses: tuple[float, float]
    peak_positions: tuple[float, float]
    peak_heights: tuple[float, float]
    velocity_estimates: tuple[float, float]
    ground_state_sup_errors: tuple[float, float] | None = None
    elastic_sup_errors: tuple[float, float] | None = None

    def to_json_dict(self) -> dict:
        """Flatten to scalar keys for JSON serialization."""
        out = {
            "t_final": self.t_final,
            "left_mass1": self.left_masses[0],
            "left_mass2": self.left_masses[1],
            "right_mass1": self.right_masses[0],
            "right_mass2": self.right_masses[1],
            "peak_position1": self.peak_positions[0],
            "peak_position2": self.peak_positions[1],
            "peak_height1": self.peak_heights[0],
            "peak_height2": self.peak_heights[1],
            "velocity1": self.velocity_estimates[0],
            "velocity2": self.velocity_estimates[1],
        }
        if self.ground_state_sup_errors is not None:
            out["ground_state_sup_error1"] = self.ground_state_sup_errors[0]
            out["ground_state_sup_error2"] = self.ground_state_sup_errors[1]
        if self.elastic_sup_errors is not None:
            out["elastic_sup_error1"] = self.elastic_sup_errors[0]
            out["elastic_sup_error2"] = self.elastic_sup_errors[1]
        return out


@dataclass(frozen=True)
class PeakTrack:
    """Peak trajectories over recorded snapshots plus fitted velocities."""

    times: np.ndarray = field(repr=False)
    positions1: np.ndarray = field(repr=False)
    positions2: np.ndarray = field(repr=False)
    velocity1: float = 0.0
    velocity2: float = 0.0


def split_at_origin(pair: FieldPair, grid: GridSpec) -> tuple[FieldPair, FieldPair]:
    """Split fields by the sharp indicator of ``x <= 0``.

    The left pair keeps values at nodes with ``x_k <= 0`` and is zero
    elsewhere; the right pair is the complement, so left + right reproduces
    the input pointwise and the squared norms partition exactly.
    """
    left_mask = grid.x <= 0.0
    left = FieldPair(np.where(left_mask, pair.u1, 0), np.where(left_mask, pair.u2, 0), pair.t)
    right = FieldPair(np.where(left_mask, 0, pair.u1), np.where(left_mask, 0, pair.u2), pair.t)
    return left, right


def l2_masses(pair: FieldPair, grid: GridSpec) -> tuple[float, float]:
    """Squared norms ``int |u_j|^2`` per component.

    No 1/2 factor: this is the constraint convention of the gradient flow,
    distinct from the conserved masses ``M(u) = (1/2) ||u||^2`` of the
    diagnostics module.  Both are provided on purpose.
    """
    return (
        quadrature(np.abs(pair.u1) ** 2, grid),
        quadrature(np.abs(pair.u2) ** 2, grid),
    )


def _refine(density: np.ndarray, index: int, n: int, periodic: bool) -> float:
    """Sub-grid offset (in cells) of a parabola through the 3 points at ``index``."""
    if periodic:
        before = density[index - 1]
        after = density[(index + 1) % n]
    else:
        if index == 0 or index == n - 1:
            return 0.0
        before = density[index - 1]
        after = density[index + 1]
    curvature = before + after - 2.0 * density[index]
    if curvature == 0.0:
        return 0.0
    return 0.5 * (before - after) / curvature


def refine_peak(density: np.ndarray, x: np.ndarray, h: float, periodic: bool = True) -> tuple[float, float]:
    """Locate the density maximum with parabolic sub-grid refinement.

    Returns ``(position, height)`` where the height is the discrete maximum.
    Warns with :class:`AmbiguousPeakWarning` and uses the first index when
    the maximum is not unique to relative 1e-12.
    """
    density = np.asarray(density)
    peak_value = density.max()
    candidates = np.flatnonzero(density >= peak_value - 1e-12 * abs(peak_value))
    if len(candidates) > 1:
        warnings.warn(
            f"density maximum not unique ({len(candidates)} candidates); using the first",
            AmbiguousPeakWarning,
            stacklevel=2,
        )
    k = int(candidates[0])
    offset = _refine(density, k, len(density), periodic)
    return float(x[k] + offset * h), float(peak_value)


def peak_track(
    snapshots: "list[tuple[float, np.ndarray, np.ndarray]]",
    grid: GridSpec,
    window: float = 0.2,
) -> PeakTrack:
    """Track per-component density peaks across snapshots and fit velocities.

    Parameters
    ----------
    snapshots : list of (t, density1, density2)
        At least two entries, in increasing time order.
    grid : GridSpec
        The periodic grid the densities live on.
    window : float
        Fraction of trailing snapshots used for the least-squares velocity
        fit (at least two points are always used).

    Notes
    -----
    Positions are unwrapped across the periodic boundary so a wave leaving
    one edge and re-entering the other yields a continuous trajectory.
    """
    if len(snapshots) < 2:
        raise ValueError("peak tracking needs at least two snapshots")
    if not 0.0 < window <= 1.0:
        raise ValueError(f"window must be in (0, 1], got {window!r}")
    times = np.array([s[0] for s in snapshots])
    period = 2.0 * grid.a
    tracks = []
    for component in (1, 2):
        raw = np.array(
            [refine_peak(s[component], grid.x, grid.h)[0] for s in snapshots]
        )
        jumps = np.round(np.diff(raw) / period)
        raw[1:] -= period * np.cumsum(jumps)
        tracks.append(raw)
    count = max(2, int(np.ceil(window * len(snapshots))))
    v1 = float(np.polyfit(times[-count:], tracks[0][-count:], 1)[0])
    v2 = float(np.polyfit(times[-count:], tracks[1][-count:], 1)[0])
    return PeakTrack(times=times, positions1=tracks[0], positions2=tracks[1], velocity1=v1, velocity2=v2)


def compare_to_ground_state(
    left_pair: FieldPair, gs: GroundStateResult, grid: GridSpec
) -> tuple[float, float]:
    """Sup density error of the left-going waves against flow profiles.

    For each component the flow profile ``phi_j`` (living on its own
    finite-difference grid) is evaluated on the spectral grid by band-limited
    interpolation of its periodic extension, translated so its density peak
    coincides with the peak of ``|u_j|^2`` (both located with sub-grid
    parabolic refinement), and zero outside its truncation interval.
    Returns the two values ``max_k | |u_j(x_k)|^2 - phi_j^2(x_k - shift) |``.
    """
    errors = []
    for u, phi in ((left_pair.u1, gs.phi1), (left_pair.u2, gs.phi2)):
        density = np.abs(u) ** 2
        peak_u, _ = refine_peak(density, grid.x, grid.h)
        peak_phi, _ = refine_peak(phi**2, gs.x, gs.h, periodic=False)
        shift = peak_u - peak_phi
        # One period of the Dirichlet-extended profile: left endpoint zero
        # plus interior nodes; the right endpoint duplicates the left.
        samples = np.concatenate(([0.0], phi))
        y = grid.x - shift
        inside = np.abs(y) <= gs.half_width
        resampled = np.zeros(grid.n)
        resampled[inside] = trig_interpolate(samples, gs.half_width, y[inside])
        errors.append(float(np.abs(density - resampled**2).max()))
    return errors[0], errors[1]
