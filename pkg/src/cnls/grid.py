"""Periodic spatial grid, discrete Fourier transforms, and spectral helpers.

The domain is the symmetric interval ``(-a, a)`` with periodic boundary
conditions, sampled at ``n`` uniformly spaced points ``x_k = -a + k h`` with
``h = 2 a / n``.  Fourier modes carry the wavenumbers ``nu_m = pi m / a`` for
``m = -n/2, ..., n/2 - 1``; the array ``nu`` stores them in FFT order so that
they line up with :func:`numpy.fft.fft` output without reshuffling.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

__all__ = [
    "GridSpec",
    "make_grid",
    "spectral_transform",
    "spectral_derivative",
    "quadrature",
    "periodic_shift",
    "trig_interpolate",
]


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid on ``(-a, a)`` with ``n`` points.

    Attributes
    ----------
    a : float
        Half width of the spatial interval.
    n : int
        Number of grid points; must be a power of two, at least 8.
    h : float
        Grid spacing ``2 a / n``.
    x : numpy.ndarray
        Grid nodes ``-a + k h`` for ``k = 0, ..., n - 1`` (the right endpoint
        ``+a`` is identified with ``-a`` and not stored).
    nu : numpy.ndarray
        Spectral wavenumbers ``pi m / a`` in FFT order.
    """

    a: float
    n: int
    h: float = field(init=False)
    x: np.ndarray = field(init=False, repr=False)
    nu: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        if not np.isfinite(self.a) or self.a <= 0:
            raise ConfigError(f"grid half width must be positive, got {self.a!r}")
        n = self.n
        if not isinstance(n, (int, np.integer)) or n < 8 or n & (n - 1):
            raise ConfigError(f"grid size must be a power of two >= 8, got {n!r}")
        h = 2.0 * self.a / n
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "h", h)
        object.__setattr__(self, "x", -self.a + h * np.arange(n))
        object.__setattr__(self, "nu", 2.0 * np.pi * np.fft.fftfreq(n, d=h))


def make_grid(a: float, n: int) -> GridSpec:
    """Build a :class:`GridSpec` for the interval ``(-a, a)`` with ``n`` points."""
    return GridSpec(a, n)


def spectral_transform(field: np.ndarray, grid: GridSpec, direction: str) -> np.ndarray:
    """Discrete Fourier transform between grid values and modal coefficients.

    Parameters
    ----------
    field : numpy.ndarray
        Length ``grid.n`` array of grid values (``direction="forward"``) or
        modal coefficients in FFT order (``direction="inverse"``).
    direction : str
        Either ``"forward"`` (values to coefficients, no normalization) or
        ``"inverse"`` (coefficients to values, ``1/n`` normalization).

    Returns
    -------
    numpy.ndarray
        The transformed complex array, same length as the input.

    Notes
    -----
    The forward coefficient of mode ``m`` is
    ``sum_k field[k] * exp(-1j * nu_m * (x_k - x_0))``, which reduces to the
    standard DFT because ``nu_m * (x_k - x_0) = 2 pi m k / n``.  Composing the
    two directions returns the input to rounding error.
    """
    if len(field) != grid.n:
        raise ValueError(f"field has {len(field)} samples, grid expects {grid.n}")
    if direction == "forward":
        return np.fft.fft(field)
    if direction == "inverse":
        return np.fft.ifft(field)
    raise ValueError(f"direction must be 'forward' or 'inverse', got {direction!r}")


def spectral_derivative(field: np.ndarray, grid: GridSpec, order: int = 1) -> np.ndarray:
    """Differentiate a periodic grid function by Fourier multiplication.

    Multiplies the spectrum by ``(1j * nu) ** order``.  For odd orders the
    Nyquist mode is zeroed: it carries no sign information for real input and
    keeping it would make the derivative of a real field complex.

    Returns a complex array; take ``.real`` for real input fields.
    """
    if order < 1 or not isinstance(order, (int, np.integer)):
        raise ValueError(f"derivative order must be a positive integer, got {order!r}")
    multiplier = (1j * grid.nu) ** order
    if order % 2:
        multiplier[grid.n // 2] = 0.0
    return np.fft.ifft(multiplier * np.fft.fft(field))


def quadrature(values: np.ndarray, grid: GridSpec) -> float | complex:
    """Integrate grid samples over the period: ``h * sum(values)``.

    Exact for trigonometric polynomials below the Nyquist frequency, which
    makes it spectrally accurate for smooth periodic integrands.
    """
    if len(values) != grid.n:
        raise ValueError(f"values has {len(values)} samples, grid expects {grid.n}")
    total = grid.h * np.sum(values)
    return complex(total) if np.iscomplexobj(values) else float(total)


def periodic_shift(field: np.ndarray, grid: GridSpec, shift: float) -> np.ndarray:
    """Translate a periodic grid function by ``shift`` (positive moves right).

    Works in Fourier space, ``exp(-1j * nu * shift)`` on the spectrum, so the
    shift need not be a multiple of ``h``.  Returns a complex array.
    """
    if len(field) != grid.n:
        raise ValueError(f"field has {len(field)} samples, grid expects {grid.n}")
    return np.fft.ifft(np.exp(-1j * grid.nu * shift) * np.fft.fft(field))


def trig_interpolate(samples: np.ndarray, half_width: float, targets: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant of uniform samples at new points.

    Parameters
    ----------
    samples : numpy.ndarray
        Values on the uniform grid ``-half_width + i * H``,
        ``i = 0, ..., M - 1`` with ``H = 2 * half_width / M``, of a function
        with period ``2 * half_width``.
    half_width : float
        Half period of the sampled function.
    targets : numpy.ndarray
        Points at which to evaluate the interpolant (any real values; the
        interpolant is periodic).

    Returns
    -------
    numpy.ndarray
        Interpolant values at ``targets``; real if ``samples`` is real.

    Notes
    -----
    For an even number of samples the Nyquist coefficient is split evenly
    between ``+M/2`` and ``-M/2`` so real input yields a real interpolant.
    """
    samples = np.asarray(samples)
    m_count = len(samples)
    if m_count < 2:
        raise ValueError("need at least two samples to interpolate")
    coef = np.fft.fftshift(np.fft.fft(samples)) / m_count
    modes = np.arange(-(m_count // 2), (m_count + 1) // 2, dtype=float)
    if m_count % 2 == 0:
        # fftshift puts the lone -M/2 coefficient first; share it with +M/2.
        coef = np.concatenate([coef, [0.5 * coef[0]]])
        coef[0] *= 0.5
        modes = np.append(modes, m_count / 2)
    phases = np.exp(1j * np.pi / half_width * np.outer(np.asarray(targets) + half_width, modes))
    values = phases @ coef
    return values.real if np.isrealobj(samples) else values
