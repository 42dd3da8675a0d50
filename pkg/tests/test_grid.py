"""Grid construction, transforms, quadrature, shifting, interpolation."""

import numpy as np
import pytest

from cnls import (
    ConfigError,
    make_grid,
    periodic_shift,
    quadrature,
    spectral_derivative,
    spectral_transform,
    trig_interpolate,
)


def test_grid_layout():
    grid = make_grid(20.0, 256)
    assert grid.h == 2.0 * 20.0 / 256
    assert grid.x[0] == -20.0
    assert grid.x[-1] == pytest.approx(20.0 - grid.h)
    assert len(grid.x) == len(grid.nu) == 256
    # FFT ordering: mode m sits where numpy's fft puts it
    assert grid.nu[0] == 0.0
    assert grid.nu[1] == pytest.approx(np.pi / 20.0)
    assert grid.nu[128] == pytest.approx(-np.pi * 128 / 20.0)
    assert grid.nu[-1] == pytest.approx(-np.pi / 20.0)


@pytest.mark.parametrize(
    "a, n",
    [(0.0, 64), (-1.0, 64), (np.inf, 64), (10.0, 0), (10.0, 4), (10.0, 100), (10.0, -64)],
)
def test_grid_validation(a, n):
    with pytest.raises(ConfigError):
        make_grid(a, n)


def test_forward_transform_matches_direct_sum():
    # O(n^2) evaluation of sum_l f_l exp(-i nu_m (x_l - x_0)) as the oracle
    rng = np.random.default_rng(7)
    grid = make_grid(5.0, 64)
    field = rng.standard_normal(64) + 1j * rng.standard_normal(64)
    direct = np.array(
        [np.sum(field * np.exp(-1j * nu * (grid.x - grid.x[0]))) for nu in grid.nu]
    )
    computed = spectral_transform(field, grid, "forward")
    assert np.abs(computed - direct).max() < 1e-11


def test_transform_roundtrip_and_parseval():
    rng = np.random.default_rng(11)
    grid = make_grid(8.0, 128)
    field = rng.standard_normal(128) + 1j * rng.standard_normal(128)
    coefficients = spectral_transform(field, grid, "forward")
    back = spectral_transform(coefficients, grid, "inverse")
    assert np.abs(back - field).max() < 1e-13
    physical = quadrature(np.abs(field) ** 2, grid)
    spectral = grid.h / grid.n * np.sum(np.abs(coefficients) ** 2)
    assert physical == pytest.approx(spectral, rel=1e-12)


def test_transform_rejects_bad_direction_and_length():
    grid = make_grid(8.0, 128)
    with pytest.raises(ValueError):
        spectral_transform(np.zeros(128), grid, "sideways")
    with pytest.raises(ValueError):
        spectral_transform(np.zeros(64), grid, "forward")


def test_derivative_single_mode():
    grid = make_grid(10.0, 64)
    nu = np.pi * 3 / 10.0
    field = np.exp(1j * nu * grid.x)
    first = spectral_derivative(field, grid)
    second = spectral_derivative(field, grid, order=2)
    assert np.abs(first - 1j * nu * field).max() < 1e-12
    assert np.abs(second + nu**2 * field).max() < 1e-11


def test_derivative_zeroes_nyquist_for_odd_orders():
    grid = make_grid(10.0, 64)
    nyquist = np.cos(np.pi * 32 / 10.0 * grid.x)  # pure Nyquist mode
    first = spectral_derivative(nyquist, grid)
    assert np.abs(first).max() < 1e-12
    # even order keeps it: second derivative is -nu_max^2 cos(...)
    second = spectral_derivative(nyquist, grid, order=2)
    assert np.abs(second.real + (np.pi * 32 / 10.0) ** 2 * nyquist).max() < 1e-9


def test_derivative_of_smooth_profile():
    # domain wide enough that the periodization tail e^{-30} is negligible
    grid = make_grid(30.0, 512)
    field = 1.0 / np.cosh(grid.x)
    exact = -np.tanh(grid.x) / np.cosh(grid.x)
    assert np.abs(spectral_derivative(field, grid).real - exact).max() < 1e-11


@pytest.mark.parametrize("order", [0, -1, 1.5])
def test_derivative_order_validation(order):
    grid = make_grid(10.0, 64)
    with pytest.raises(ValueError):
        spectral_derivative(np.zeros(64), grid, order=order)


def test_quadrature_sech_squared():
    # int sech^2 = 2 with exponentially small truncation on (-20, 20)
    grid = make_grid(20.0, 256)
    assert quadrature(1.0 / np.cosh(grid.x) ** 2, grid) == pytest.approx(2.0, abs=1e-13)
    value = quadrature((1.0 + 1j) * np.ones(256), grid)
    assert isinstance(value, complex)
    assert value == pytest.approx(40.0 + 40.0j)


def test_periodic_shift_matches_roll_on_grid_multiples():
    rng = np.random.default_rng(3)
    grid = make_grid(10.0, 128)
    field = np.fft.ifft(
        np.where(np.abs(grid.nu) < 0.5 * grid.nu.max(), rng.standard_normal(128), 0.0)
    )
    shifted = periodic_shift(field, grid, 5 * grid.h)
    assert np.abs(shifted - np.roll(field, 5)).max() < 1e-13


def test_periodic_shift_subgrid():
    grid = make_grid(30.0, 512)
    field = 1.0 / np.cosh(grid.x)
    amount = 3.7 * grid.h
    shifted = periodic_shift(field, grid, amount)
    assert np.abs(shifted.real - 1.0 / np.cosh(grid.x - amount)).max() < 1e-10
    assert np.abs(shifted.imag).max() < 1e-10
    full_period = periodic_shift(field, grid, 2 * grid.a)
    assert np.abs(full_period - field).max() < 1e-10


def test_trig_interpolate_reproduces_samples_and_polynomials():
    half_width = 7.0
    m = 48
    nodes = -half_width + 2 * half_width / m * np.arange(m)

    def poly(y):
        return np.cos(3 * np.pi * y / half_width) + 0.5 * np.sin(np.pi * y / half_width)

    samples = poly(nodes)
    assert np.abs(trig_interpolate(samples, half_width, nodes) - samples).max() < 1e-12
    rng = np.random.default_rng(5)
    targets = rng.uniform(-half_width, half_width, 40)
    assert np.abs(trig_interpolate(samples, half_width, targets) - poly(targets)).max() < 1e-12
    # periodicity: evaluation one period away matches
    assert trig_interpolate(samples, half_width, np.array([2 * half_width])) == pytest.approx(
        poly(np.array([0.0]))
    )


def test_trig_interpolate_decaying_profile():
    half_width = 16.0
    m = 512
    nodes = -half_width + 2 * half_width / m * np.arange(m)
    samples = np.sqrt(2.0) / np.cosh(nodes)
    targets = np.linspace(-8.0, 8.0, 101) + 0.37 * (2 * half_width / m)
    values = trig_interpolate(samples, half_width, targets)
    assert np.isrealobj(values)
    assert np.abs(values - np.sqrt(2.0) / np.cosh(targets)).max() < 1e-9


def test_trig_interpolate_validation():
    with pytest.raises(ValueError):
        trig_interpolate(np.array([1.0]), 1.0, np.array([0.0]))
