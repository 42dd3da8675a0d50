"""Closed-form profiles: the residual oracle, scaling, masses, initial data."""

import numpy as np
import pytest

from cnls import (
    ConfigError,
    CoupledParams,
    DomainError,
    FieldPair,
    SolitonSpec,
    ground_profile,
    initial_data,
    make_grid,
    quadrature,
    soliton_field,
)


def _profile_extended(omega, x):
    # independent longdouble evaluation of sqrt(2 w) sech(sqrt(w) x)
    x = np.asarray(x, dtype=np.longdouble)
    root = np.sqrt(np.longdouble(omega))
    decay = np.exp(-np.abs(root * x))
    return np.sqrt(2 * np.longdouble(omega)) * 2 * decay / (1 + decay * decay)


def test_equation_residual_oracle():
    # -Q'' + omega Q - Q^3 must vanish; finite-difference second derivative
    # with step 1e-4, evaluated in extended precision so difference-quotient
    # rounding stays far below the 1e-8 budget.
    step = np.longdouble(1e-4)
    for omega in (1.0, 4.0, 0.3):
        x = np.linspace(-5.0, 5.0, 201, dtype=np.longdouble)
        second = (
            _profile_extended(omega, x + step)
            - 2 * _profile_extended(omega, x)
            + _profile_extended(omega, x - step)
        ) / step**2
        q = _profile_extended(omega, x)
        residual = -second + omega * q - q**3
        # truncation of the difference quotient scales like Q'''' ~ omega^2.5
        assert float(np.abs(residual).max()) < 1e-8 * max(1.0, omega**2.5)


def test_profile_values_match_closed_form():
    assert ground_profile(1.0, 0.0) == pytest.approx(np.sqrt(2.0), abs=1e-12)
    x = np.linspace(-30.0, 30.0, 400)
    expected = np.asarray(_profile_extended(2.5, x), dtype=float)
    assert np.abs(ground_profile(2.5, x) - expected).max() < 1e-14


def test_profile_scaling_identity():
    # Q_w(x) = sqrt(w) Q_1(sqrt(w) x) pointwise, for random (w, x)
    rng = np.random.default_rng(17)
    for _ in range(20):
        omega = rng.uniform(0.05, 20.0)
        x = rng.uniform(-10.0, 10.0, 50)
        left = ground_profile(omega, x)
        right = np.sqrt(omega) * ground_profile(1.0, np.sqrt(omega) * x)
        assert np.abs(left - right).max() < 1e-12 * np.sqrt(2 * omega)


def test_profile_decay_monotone_and_overflow_safe():
    x = np.linspace(0.0, 2000.0, 500)
    values = ground_profile(1.0, x)
    assert (np.diff(values) <= 0).all()
    assert values[-1] == 0.0  # underflows cleanly, no overflow warnings


@pytest.mark.parametrize("omega", [0.0, -1.0, np.nan])
def test_profile_rejects_bad_omega(omega):
    with pytest.raises(DomainError):
        ground_profile(omega, 0.0)


def test_soliton_field_at_rest_is_real_profile():
    grid = make_grid(20.0, 256)
    field = soliton_field(SolitonSpec(omega=1.0, v=0.0), 1.0, 0.0, grid)
    assert np.abs(field - ground_profile(1.0, grid.x)).max() < 1e-14


def test_soliton_modulus_translates():
    grid = make_grid(30.0, 512)
    rng = np.random.default_rng(23)
    for _ in range(10):
        spec = SolitonSpec(
            omega=rng.uniform(0.5, 5.0),
            v=rng.uniform(-2.0, 2.0),
            x0=rng.uniform(-2.0, 2.0),
            gamma=rng.uniform(0.0, 2 * np.pi),
        )
        mu = rng.uniform(0.5, 2.0)
        t = rng.uniform(-1.0, 1.0)
        field = soliton_field(spec, mu, t, grid)
        expected = ground_profile(spec.omega, grid.x - spec.v * t - spec.x0) / np.sqrt(mu)
        assert np.abs(np.abs(field) - expected).max() < 1e-12


def test_soliton_mass_oracle():
    # quadrature of |R|^2 = 4 sqrt(omega) / mu independently of v, gamma, t
    grid = make_grid(30.0, 512)
    rng = np.random.default_rng(29)
    for _ in range(10):
        omega = rng.uniform(0.5, 5.0)
        mu = rng.uniform(0.5, 2.0)
        spec = SolitonSpec(
            omega=omega, v=rng.uniform(-2, 2), x0=rng.uniform(-2, 2), gamma=rng.uniform(0, 6)
        )
        field = soliton_field(spec, mu, rng.uniform(-1, 1), grid)
        assert quadrature(np.abs(field) ** 2, grid) == pytest.approx(
            4.0 * np.sqrt(omega) / mu, rel=1e-12
        )


def test_soliton_field_rejects_bad_mu():
    grid = make_grid(10.0, 64)
    with pytest.raises(DomainError):
        soliton_field(SolitonSpec(omega=1.0, v=0.0), 0.0, 0.0, grid)


def test_initial_data_peak_locations():
    # the two waves start at v_j t0 + x0_j: -10 and +10 for opposite unit speeds
    grid = make_grid(20.0, 1024)
    params = CoupledParams(1.0, 1.0, 1.0)
    pair = initial_data(
        SolitonSpec(omega=5.0, v=1.0, component=1),
        SolitonSpec(omega=1.0, v=-1.0, component=2),
        params,
        -10.0,
        grid,
    )
    assert pair.t == -10.0
    peak1 = grid.x[np.argmax(np.abs(pair.u1))]
    peak2 = grid.x[np.argmax(np.abs(pair.u2))]
    assert abs(peak1 - (-10.0)) <= grid.h
    assert abs(peak2 - 10.0) <= grid.h


def test_initial_data_masses_and_rest_case():
    grid = make_grid(30.0, 512)
    params = CoupledParams(2.0, 0.5, -1.0)
    pair = initial_data(
        SolitonSpec(omega=2.0, v=0.0, component=1),
        SolitonSpec(omega=1.0, v=0.0, x0=3.0, component=2),
        params,
        0.0,
        grid,
    )
    assert quadrature(np.abs(pair.u1) ** 2, grid) == pytest.approx(4 * np.sqrt(2.0) / 2.0, rel=1e-12)
    assert quadrature(np.abs(pair.u2) ** 2, grid) == pytest.approx(4.0 / 0.5, rel=1e-12)
    assert np.abs(pair.u1.imag).max() < 1e-14
    assert (pair.u1.real >= 0).all()
    assert grid.x[np.argmax(np.abs(pair.u2))] == pytest.approx(3.0, abs=grid.h)


def test_initial_data_component_mismatch():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 0.0)
    good1 = SolitonSpec(omega=1.0, v=0.0, component=1)
    good2 = SolitonSpec(omega=1.0, v=0.0, component=2)
    with pytest.raises(ConfigError):
        initial_data(good2, good2, params, 0.0, grid)
    with pytest.raises(ConfigError):
        initial_data(good1, good1, params, 0.0, grid)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"omega": 0.0, "v": 1.0},
        {"omega": -2.0, "v": 1.0},
        {"omega": 1.0, "v": np.nan},
        {"omega": 1.0, "v": 0.0, "component": 3},
    ],
)
def test_soliton_spec_validation(kwargs):
    with pytest.raises(ConfigError):
        SolitonSpec(**kwargs)


@pytest.mark.parametrize("args", [(0.0, 1.0, 0.0), (1.0, -1.0, 0.0), (1.0, 1.0, np.inf)])
def test_coupled_params_validation(args):
    with pytest.raises(ConfigError):
        CoupledParams(*args)


def test_field_pair_checks_shapes_and_copies():
    with pytest.raises(ValueError):
        FieldPair(np.zeros(8), np.zeros(4), 0.0)
    with pytest.raises(ValueError):
        FieldPair(np.zeros(8), np.zeros(8), np.nan)
    pair = FieldPair(np.ones(8), np.zeros(8), 1.0)
    assert pair.u1.dtype == complex
    clone = pair.copy()
    clone.u1[0] = 5.0
    assert pair.u1[0] == 1.0
