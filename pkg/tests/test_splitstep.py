"""Tests for the Strang splitting propagator."""

import numpy as np
import pytest

from cnls import (
    ConfigError,
    CoupledParams,
    EvolveConfig,
    FieldPair,
    IntegrationDivergedError,
    SolitonSpec,
    evolve,
    initial_data,
    linear_full_step,
    make_grid,
    nonlinear_half_step,
    quadrature,
    soliton_field,
    strang_step,
)


def _random_pair(grid, seed, t=0.0):
    rng = np.random.default_rng(seed)
    u1 = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    u2 = rng.standard_normal(grid.n) + 1j * rng.standard_normal(grid.n)
    return FieldPair(u1, u2, t)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"tau": 0.0, "t_final": 1.0},
        {"tau": -0.1, "t_final": 1.0},
        {"tau": float("nan"), "t_final": 1.0},
        {"tau": 0.1, "t_final": float("inf")},
        {"tau": 0.1, "t_final": 1.0, "snapshot_stride": 0},
        {"tau": 0.1, "t_final": 1.0, "diagnostics_stride": -3},
        {"tau": 0.1, "t_final": 1.0, "snapshot_stride": 1.5},
    ],
)
def test_evolve_config_validation(kwargs):
    with pytest.raises(ConfigError):
        EvolveConfig(**kwargs)


def test_nonlinear_half_step_exact_phase():
    grid = make_grid(10.0, 64)
    params = CoupledParams(2.0, 0.5, 1.3)
    state = _random_pair(grid, seed=11, t=0.25)
    dt = 0.37
    out = nonlinear_half_step(state, params, dt)
    d1 = np.abs(state.u1) ** 2
    d2 = np.abs(state.u2) ** 2
    expected1 = np.exp(1j * dt * (2.0 * d1 + 1.3 * d2)) * state.u1
    expected2 = np.exp(1j * dt * (0.5 * d2 + 1.3 * d1)) * state.u2
    assert np.abs(out.u1 - expected1).max() < 1e-14
    assert np.abs(out.u2 - expected2).max() < 1e-14
    # the subflow is a pure phase: pointwise moduli are untouched
    assert np.abs(np.abs(out.u1) - np.abs(state.u1)).max() < 1e-14
    assert np.abs(np.abs(out.u2) - np.abs(state.u2)).max() < 1e-14
    assert out.t == state.t


def test_nonlinear_step_reads_both_moduli_before_updating():
    # if the second component saw the already-rotated first one, the cross
    # phase would differ; moduli are invariant, so the check is exact
    grid = make_grid(10.0, 32)
    params = CoupledParams(1.0, 1.0, 2.0)
    state = _random_pair(grid, seed=12)
    out = nonlinear_half_step(state, params, 0.5)
    cross = np.exp(1j * 0.5 * (np.abs(state.u2) ** 2 - np.abs(out.u2) ** 2))
    assert np.abs(cross - 1.0).max() < 1e-14


def test_linear_full_step_single_mode():
    grid = make_grid(10.0, 128)
    k = grid.nu[5]
    state = FieldPair(np.exp(1j * k * grid.x), np.zeros(grid.n), 0.0)
    tau = 0.21
    out = linear_full_step(state, grid, tau)
    expected = np.exp(-1j * tau * k**2) * state.u1
    assert np.abs(out.u1 - expected).max() < 1e-12
    assert np.abs(out.u2).max() == 0.0
    assert out.t == 0.0


def test_linear_full_step_preserves_mass():
    grid = make_grid(10.0, 128)
    state = _random_pair(grid, seed=13)
    out = linear_full_step(state, grid, 0.4)
    before = quadrature(np.abs(state.u1) ** 2, grid)
    after = quadrature(np.abs(out.u1) ** 2, grid)
    assert abs(after - before) < 1e-12 * before


def test_strang_step_reversible():
    grid = make_grid(15.0, 256)
    params = CoupledParams(1.0, 1.0, 3.0)
    spec1 = SolitonSpec(1.0, 1.0, x0=-3.0, component=1)
    spec2 = SolitonSpec(2.0, -1.0, x0=3.0, component=2)
    state = initial_data(spec1, spec2, params, 0.0, grid)
    forward = strang_step(state, params, grid, 0.05)
    assert forward.t == pytest.approx(0.05)
    back = strang_step(forward, params, grid, -0.05)
    assert np.abs(back.u1 - state.u1).max() < 1e-12
    assert np.abs(back.u2 - state.u2).max() < 1e-12
    assert back.t == pytest.approx(0.0, abs=1e-15)


def test_strang_step_conserves_mass_over_many_steps():
    grid = make_grid(15.0, 256)
    params = CoupledParams(1.0, 1.0, 3.0)
    spec1 = SolitonSpec(1.0, 1.0, x0=-3.0, component=1)
    spec2 = SolitonSpec(2.0, -1.0, x0=3.0, component=2)
    state = initial_data(spec1, spec2, params, 0.0, grid)
    m1 = quadrature(np.abs(state.u1) ** 2, grid)
    m2 = quadrature(np.abs(state.u2) ** 2, grid)
    for _ in range(200):
        state = strang_step(state, params, grid, 0.01)
    assert abs(quadrature(np.abs(state.u1) ** 2, grid) - m1) < 1e-12 * m1
    assert abs(quadrature(np.abs(state.u2) ** 2, grid) - m2) < 1e-12 * m2


def test_strang_step_rejects_nonfinite_state():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    u1 = np.ones(grid.n, dtype=complex)
    u1[3] = np.nan
    state = FieldPair(u1, np.zeros(grid.n), 1.5)
    with pytest.raises(IntegrationDivergedError) as excinfo:
        strang_step(state, params, grid, 0.1)
    assert excinfo.value.t_last == pytest.approx(1.5)
    assert excinfo.value.t_failed == pytest.approx(1.6)


def test_second_order_in_time():
    # single focusing soliton against its closed form after t = 1
    grid = make_grid(20.0, 512)
    params = CoupledParams(1.0, 1.0, 1.0)
    spec = SolitonSpec(1.0, 1.0, component=1)
    errors = []
    for tau in (0.04, 0.02, 0.01):
        state = FieldPair(
            soliton_field(spec, 1.0, 0.0, grid), np.zeros(grid.n), 0.0
        )
        state = evolve(state, params, grid, EvolveConfig(tau, 1.0))
        exact = soliton_field(spec, 1.0, 1.0, grid)
        errors.append(np.abs(state.u1 - exact).max())
    order1 = np.log2(errors[0] / errors[1])
    order2 = np.log2(errors[1] / errors[2])
    assert 1.9 < order1 < 2.1
    assert 1.9 < order2 < 2.1


def test_evolve_matches_composed_steps():
    grid = make_grid(15.0, 128)
    params = CoupledParams(1.0, 2.0, 0.5)
    state = _random_pair(grid, seed=14)
    manual = state.copy()
    for _ in range(7):
        manual = strang_step(manual, params, grid, 0.05)
    final = evolve(state, params, grid, EvolveConfig(0.05, 0.35))
    assert np.abs(final.u1 - manual.u1).max() < 1e-13
    assert np.abs(final.u2 - manual.u2).max() < 1e-13
    assert final.t == 0.35


def test_evolve_rejects_fractional_step_count():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    state = _random_pair(grid, seed=15)
    with pytest.raises(ConfigError):
        evolve(state, params, grid, EvolveConfig(0.3, 1.0))


def test_evolve_rejects_backwards_interval():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    state = _random_pair(grid, seed=16, t=2.0)
    with pytest.raises(ConfigError):
        evolve(state, params, grid, EvolveConfig(0.1, 1.0))


def test_evolve_sink_schedule():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    state = _random_pair(grid, seed=17)
    config = EvolveConfig(0.1, 1.0, snapshot_stride=3, diagnostics_stride=4)
    snap_steps, diag_steps, stamps = [], [], []

    def on_snapshot(step, pair):
        snap_steps.append(step)
        stamps.append(pair.t)

    final = evolve(
        state, params, grid, config,
        on_snapshot=on_snapshot,
        on_diagnostics=lambda step, pair: diag_steps.append(step),
    )
    assert snap_steps == [0, 3, 6, 9, 10]
    assert diag_steps == [0, 4, 8, 10]
    assert stamps[0] == 0.0
    assert stamps[-1] == 1.0
    assert final.t == 1.0


def test_evolve_snapshot_copies_are_independent():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    state = _random_pair(grid, seed=18)
    kept = []
    evolve(
        state, params, grid, EvolveConfig(0.1, 0.2, snapshot_stride=1),
        on_snapshot=lambda step, pair: kept.append(pair),
    )
    kept[1].u1[:] = 0.0
    assert np.abs(kept[2].u1).max() > 0.0


def test_evolve_zero_steps():
    grid = make_grid(10.0, 64)
    params = CoupledParams(1.0, 1.0, 1.0)
    state = _random_pair(grid, seed=19, t=0.5)
    calls = []
    final = evolve(
        state, params, grid, EvolveConfig(0.1, 0.5),
        on_snapshot=lambda step, pair: calls.append(step),
    )
    assert calls == [0]
    assert final.t == 0.5
    assert np.abs(final.u1 - state.u1).max() == 0.0


def test_dealias_mask_removes_high_modes():
    grid = make_grid(10.0, 128)
    params = CoupledParams(1.0, 1.0, 1.0)
    # a mode above the two-thirds cutoff survives without the mask and is
    # annihilated with it
    k = grid.nu[grid.n // 2 - 2]
    assert abs(k) > (2.0 / 3.0) * np.pi * (grid.n // 2) / grid.a
    mode = 1e-8 * np.exp(1j * k * grid.x)
    state = FieldPair(mode, np.zeros(grid.n), 0.0)
    plain = evolve(state, params, grid, EvolveConfig(0.1, 0.1))
    masked = evolve(state, params, grid, EvolveConfig(0.1, 0.1, dealias=True))
    assert np.abs(plain.u1).max() > 0.9e-8
    assert np.abs(masked.u1).max() < 1e-20
