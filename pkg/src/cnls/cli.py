"""Experiment harness: config files, the four collision presets, output writing.

Config files are line oriented: ``[section]`` headers, ``key = value`` pairs,
``#`` comments, blank lines.  Sections ``[grid] [params] [soliton1]
[soliton2] [run]`` are required for a simulation; ``[output]`` and
``[groundstate]`` are optional.  Values are plain decimal numbers (no
quoting); the few non-numeric values are listed with their keys below.

    [grid]        a, n
    [params]      mu1, mu2, beta
    [soliton1]    omega, v, x0, gamma
    [soliton2]    omega, v, x0, gamma
    [run]         t0, t_final, tau, snapshot_stride, diagnostics_stride,
                  cutoff_L, velocity_window
    [output]      directory, formats ("csv", "json", or "csv,json")
    [groundstate] masses ("a1sq, a2sq" squared norms, or "from-left-split"),
                  fd_half_width, fd_intervals, tau, tol, max_iter

Any config key can be overridden on the command line as
``--section.key=value``; the environment variable ``CNLS_OUTPUT_DIR``
overrides the output directory.  Exit codes: 0 success, 1 failed
convergence self-test, 2 configuration error, 3 diverged integration,
4 non-convergence of an iteration, 5 output I/O failure.

Outputs are plain text written by a dedicated writer thread (stepping never
waits on the disk): per-snapshot CSVs ``x,re_u1,im_u1,re_u2,im_u2``, one
diagnostics CSV ``t,M1,M2,E,P,Ploc1,Ploc2``, and a flat JSON report.  Floats
are printed with 17 significant digits, so files round-trip to the exact
in-memory values and identical configs give bit-identical outputs.
"""

from __future__ import annotations

import argparse
import json
import os
import queue
import re
import sys
import threading
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .analysis import (
    CollisionReport,
    compare_to_ground_state,
    l2_masses,
    peak_track,
    refine_peak,
    split_at_origin,
)
from .diagnostics import measure_diagnostics
from .errors import (
    ConfigError,
    DomainError,
    IntegrationDivergedError,
    NonConvergenceError,
    StepFailureError,
)
from .gradientflow import GroundStateResult, solve_ground_state
from .grid import GridSpec, make_grid
from .manakov import collision_shift, elastic_error, predicted_outgoing
from .profiles import CoupledParams, FieldPair, SolitonSpec, initial_data
from .splitstep import EvolveConfig, evolve

__all__ = [
    "GroundStateBlock",
    "RunConfig",
    "parse_config",
    "run_experiment",
    "main",
]

_SCHEMA = {
    "grid": {"a": float, "n": int},
    "params": {"mu1": float, "mu2": float, "beta": float},
    "soliton1": {"omega": float, "v": float, "x0": float, "gamma": float},
    "soliton2": {"omega": float, "v": float, "x0": float, "gamma": float},
    "run": {
        "t0": float,
        "t_final": float,
        "tau": float,
        "snapshot_stride": int,
        "diagnostics_stride": int,
        "cutoff_L": float,
        "velocity_window": float,
    },
    "output": {"directory": str, "formats": str},
    "groundstate": {
        "masses": str,
        "fd_half_width": float,
        "fd_intervals": int,
        "tau": float,
        "tol": float,
        "max_iter": int,
    },
}

_REQUIRED_SECTIONS = ("grid", "params", "soliton1", "soliton2", "run")


@dataclass(frozen=True)
class GroundStateBlock:
    """Parsed ``[groundstate]`` request.

    ``masses`` holds the squared norms ``(a1^2, a2^2)`` to impose, or
    ``None`` to take them from the left split of the final state.  The flow
    domain defaults to the mass-derived heuristic when the fd keys are
    absent.
    """

    masses: tuple[float, float] | None
    fd_half_width: float | None = None
    fd_intervals: int | None = None
    tau: float = 0.1
    tol: float = 1e-8
    max_iter: int = 100_000


@dataclass(frozen=True)
class RunConfig:
    """Validated simulation setup: grid, system, waves, schedule, outputs."""

    grid: GridSpec
    params: CoupledParams
    soliton1: SolitonSpec
    soliton2: SolitonSpec
    t0: float
    t_final: float
    tau: float
    snapshot_stride: int = 1000
    diagnostics_stride: int = 100
    cutoff_length: float = 4.0
    velocity_window: float = 0.2
    directory: str = "out"
    formats: tuple[str, ...] = ("csv", "json")
    groundstate: GroundStateBlock | None = None

    def __post_init__(self):
        if not self.t_final > self.t0:
            raise ConfigError(
                f"t_final = {self.t_final!r} must exceed t0 = {self.t0!r}"
            )
        if not 0.0 < self.velocity_window <= 1.0:
            raise ConfigError(
                f"velocity_window must be in (0, 1], got {self.velocity_window!r}"
            )
        if self.cutoff_length <= 0:
            raise ConfigError(f"cutoff_L must be positive, got {self.cutoff_length!r}")


def _parse_sections(text: str) -> dict[str, dict[str, tuple[str, int]]]:
    """Tokenize config text into ``{section: {key: (value, line)}}``, strictly."""
    sections: dict[str, dict[str, tuple[str, int]]] = {}
    current: str | None = None
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            if not line.endswith("]"):
                raise ConfigError(f"line {number}: malformed section header {raw.strip()!r}")
            name = line[1:-1].strip()
            if name not in _SCHEMA:
                raise ConfigError(f"line {number}: unknown section [{name}]")
            if name in sections:
                raise ConfigError(f"line {number}: duplicate section [{name}]")
            sections[name] = {}
            current = name
            continue
        if "=" not in line:
            raise ConfigError(f"line {number}: expected 'key = value', got {raw.strip()!r}")
        if current is None:
            raise ConfigError(f"line {number}: key outside any [section]")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _SCHEMA[current]:
            raise ConfigError(f"line {number}: unknown key {key!r} in section [{current}]")
        if key in sections[current]:
            raise ConfigError(f"line {number}: duplicate key {key!r} in section [{current}]")
        if not value:
            raise ConfigError(f"line {number}: empty value for key {key!r}")
        sections[current][key] = (value, number)
    return sections


_OVERRIDE_PATTERN = re.compile(r"^--([a-z0-9]+)\.([A-Za-z0-9_]+)=(.*)$")


def _apply_overrides(
    sections: dict[str, dict[str, tuple[str, int]]], overrides: "list[str]"
) -> None:
    for token in overrides:
        match = _OVERRIDE_PATTERN.match(token)
        if match is None:
            raise ConfigError(
                f"override {token!r} does not match --section.key=value"
            )
        section, key, value = match.groups()
        if section not in _SCHEMA:
            raise ConfigError(f"override {token!r}: unknown section [{section}]")
        if key not in _SCHEMA[section]:
            raise ConfigError(f"override {token!r}: unknown key {key!r} in [{section}]")
        sections.setdefault(section, {})[key] = (value, 0)


def _convert(section: str, key: str, entry: tuple[str, int]):
    value, number = entry
    where = f"line {number}" if number else "command line"
    kind = _SCHEMA[section][key]
    if kind is str:
        return value
    if kind is int:
        if not re.fullmatch(r"[+-]?\d+", value):
            raise ConfigError(f"{where}: key {key!r} expects an integer, got {value!r}")
        return int(value)
    try:
        return float(value)
    except ValueError:
        raise ConfigError(f"{where}: key {key!r} expects a number, got {value!r}") from None


def _section_values(
    sections: dict[str, dict[str, tuple[str, int]]],
    name: str,
    required: tuple[str, ...] = (),
) -> dict:
    if name not in sections and required:
        raise ConfigError(f"missing required section [{name}]")
    entries = sections.get(name, {})
    for key in required:
        if key not in entries:
            raise ConfigError(f"section [{name}] is missing required key {key!r}")
    return {key: _convert(name, key, entry) for key, entry in entries.items()}


def _build_groundstate(sections) -> GroundStateBlock | None:
    if "groundstate" not in sections:
        return None
    values = _section_values(sections, "groundstate", required=("masses",))
    raw_masses = values.pop("masses")
    if raw_masses == "from-left-split":
        masses = None
    else:
        parts = [part.strip() for part in raw_masses.split(",")]
        if len(parts) != 2:
            raise ConfigError(
                f"groundstate masses must be 'a1sq, a2sq' or 'from-left-split', got {raw_masses!r}"
            )
        try:
            masses = (float(parts[0]), float(parts[1]))
        except ValueError:
            raise ConfigError(f"groundstate masses are not numbers: {raw_masses!r}") from None
        if masses[0] <= 0 or masses[1] <= 0:
            raise ConfigError(f"groundstate masses must be positive, got {raw_masses!r}")
    block = GroundStateBlock(masses=masses, **values)
    if block.tau <= 0 or block.tol <= 0 or block.max_iter < 1:
        raise ConfigError("groundstate tau, tol must be positive and max_iter >= 1")
    if (block.fd_half_width is None) != (block.fd_intervals is None):
        raise ConfigError("groundstate fd_half_width and fd_intervals go together")
    return block


def parse_config(text: str, overrides: "list[str] | None" = None) -> RunConfig:
    """Parse and validate a simulation config (see the module docstring).

    ``overrides`` are command-line tokens of the form ``--section.key=value``
    applied on top of the file before validation.

    Raises
    ------
    ConfigError
        On grammar violations, unknown sections or keys, non-numeric values
        (all with line numbers), missing requirements, or constraint
        violations in the assembled objects.
    """
    sections = _parse_sections(text)
    _apply_overrides(sections, overrides or [])
    for name in _REQUIRED_SECTIONS:
        if name not in sections:
            raise ConfigError(f"missing required section [{name}]")

    grid_values = _section_values(sections, "grid", required=("a", "n"))
    params_values = _section_values(sections, "params", required=("mu1", "mu2", "beta"))
    wave1 = _section_values(sections, "soliton1", required=("omega", "v"))
    wave2 = _section_values(sections, "soliton2", required=("omega", "v"))
    run_values = _section_values(sections, "run", required=("t0", "t_final", "tau"))
    output_values = _section_values(sections, "output")

    formats = tuple(
        token.strip() for token in output_values.get("formats", "csv,json").split(",")
    )
    for token in formats:
        if token not in ("csv", "json"):
            raise ConfigError(f"unknown output format {token!r} (expected csv or json)")

    run_kwargs = {
        "t0": run_values["t0"],
        "t_final": run_values["t_final"],
        "tau": run_values["tau"],
    }
    if "snapshot_stride" in run_values:
        run_kwargs["snapshot_stride"] = run_values["snapshot_stride"]
    if "diagnostics_stride" in run_values:
        run_kwargs["diagnostics_stride"] = run_values["diagnostics_stride"]
    if "cutoff_L" in run_values:
        run_kwargs["cutoff_length"] = run_values["cutoff_L"]
    if "velocity_window" in run_values:
        run_kwargs["velocity_window"] = run_values["velocity_window"]

    return RunConfig(
        grid=make_grid(grid_values["a"], grid_values["n"]),
        params=CoupledParams(**params_values),
        soliton1=SolitonSpec(component=1, **wave1),
        soliton2=SolitonSpec(component=2, **wave2),
        directory=output_values.get("directory", "out"),
        formats=formats,
        groundstate=_build_groundstate(sections),
        **run_kwargs,
    )


def _format_row(values) -> str:
    return ",".join(f"{value:.17g}" for value in values)


class _Writer:
    """Dedicated output thread: formatting and disk writes off the step loop."""

    def __init__(self, directory: Path):
        self.directory = directory
        self.jobs: queue.Queue = queue.Queue()
        self.error: Exception | None = None
        self.thread = threading.Thread(target=self._work, name="cnls-writer", daemon=True)
        self.thread.start()

    def _work(self):
        diagnostics_file = None
        try:
            while True:
                job = self.jobs.get()
                if job is None:
                    return
                kind = job[0]
                if kind == "snapshot":
                    _, step, x, u1, u2 = job
                    lines = ["x,re_u1,im_u1,re_u2,im_u2"]
                    lines.extend(
                        _format_row((xk, a.real, a.imag, b.real, b.imag))
                        for xk, a, b in zip(x, u1, u2)
                    )
                    path = self.directory / f"snapshot_{step:07d}.csv"
                    path.write_text("\n".join(lines) + "\n")
                elif kind == "diagnostics":
                    _, record = job
                    if diagnostics_file is None:
                        diagnostics_file = (self.directory / "diagnostics.csv").open("w")
                        diagnostics_file.write("t,M1,M2,E,P,Ploc1,Ploc2\n")
                    diagnostics_file.write(
                        _format_row(
                            (record.t, record.M1, record.M2, record.E,
                             record.P, record.Ploc1, record.Ploc2)
                        )
                        + "\n"
                    )
                elif kind == "text":
                    _, name, payload = job
                    (self.directory / name).write_text(payload)
        except Exception as exc:
            self.error = exc
            while self.jobs.get() is not None:  # drain until the sentinel
                pass
        finally:
            if diagnostics_file is not None:
                diagnostics_file.close()

    def submit(self, job):
        self.jobs.put(job)

    def close(self):
        """Flush everything, stop the thread, re-raise any worker failure."""
        self.jobs.put(None)
        self.thread.join()
        if self.error is not None:
            raise self.error


def _resolve_directory(configured: str) -> Path:
    return Path(os.environ.get("CNLS_OUTPUT_DIR") or configured)


def _flow_domain(block: GroundStateBlock) -> tuple[float, int] | None:
    if block.fd_half_width is None:
        return None
    return (block.fd_half_width, block.fd_intervals)


def run_experiment(config: RunConfig) -> CollisionReport:
    """Run one collision experiment end to end and write its outputs.

    Builds the two-soliton initial data, evolves to ``t_final`` while
    streaming diagnostics and snapshots to the writer thread, then analyzes
    the final state: origin split, squared-norm bookkeeping, peak positions
    and velocity fit.  A ``[groundstate]`` block adds the gradient-flow
    comparison of the left-going waves; the integrable case
    ``mu1 = mu2 = beta`` adds the closed-form elastic prediction and its
    fitted shifts.  Returns the report; the same content plus provenance
    extras lands in ``report.json``.
    """
    directory = _resolve_directory(config.directory)
    directory.mkdir(parents=True, exist_ok=True)
    write_csv = "csv" in config.formats
    write_json = "json" in config.formats

    grid = config.grid
    params = config.params
    state = initial_data(config.soliton1, config.soliton2, params, config.t0, grid)
    evolve_config = EvolveConfig(
        tau=config.tau,
        t_final=config.t_final,
        snapshot_stride=config.snapshot_stride,
        diagnostics_stride=config.diagnostics_stride,
    )

    writer = _Writer(directory)
    density_snapshots: list[tuple[float, np.ndarray, np.ndarray]] = []
    records = []

    def on_snapshot(step: int, pair: FieldPair):
        density_snapshots.append(
            (pair.t, np.abs(pair.u1) ** 2, np.abs(pair.u2) ** 2)
        )
        if write_csv:
            writer.submit(("snapshot", step, grid.x, pair.u1, pair.u2))

    def on_diagnostics(step: int, pair: FieldPair):
        record = measure_diagnostics(pair, params, grid, config.cutoff_length)
        records.append(record)
        if write_csv:
            writer.submit(("diagnostics", record))

    try:
        final = evolve(state, params, grid, evolve_config, on_snapshot, on_diagnostics)

        left, right = split_at_origin(final, grid)
        left_masses = l2_masses(left, grid)
        right_masses = l2_masses(right, grid)
        total_masses = l2_masses(final, grid)
        peaks = [
            refine_peak(dens, grid.x, grid.h)
            for dens in (np.abs(final.u1) ** 2, np.abs(final.u2) ** 2)
        ]
        track = peak_track(density_snapshots, grid, config.velocity_window)

        extras: dict = {
            "total_mass1": total_masses[0],
            "total_mass2": total_masses[1],
        }
        first = records[0]
        extras["energy_initial"] = first.E
        extras["momentum_initial"] = first.P
        extras["energy_drift"] = max(abs(r.E - first.E) for r in records)
        extras["momentum_drift"] = max(abs(r.P - first.P) for r in records)
        extras["mass_drift1"] = max(abs(r.M1 - first.M1) for r in records) / first.M1
        extras["mass_drift2"] = max(abs(r.M2 - first.M2) for r in records) / first.M2

        gs_errors = None
        if config.groundstate is not None:
            block = config.groundstate
            if block.masses is None:
                targets = (np.sqrt(left_masses[0]), np.sqrt(left_masses[1]))
            else:
                targets = (np.sqrt(block.masses[0]), np.sqrt(block.masses[1]))
            gs = solve_ground_state(
                params,
                targets,
                domain=_flow_domain(block),
                tau=block.tau,
                tol=block.tol,
                max_iter=block.max_iter,
            )
            gs_errors = compare_to_ground_state(left, gs, grid)
            extras.update(
                gs_omega1=gs.omega1,
                gs_omega2=gs.omega2,
                gs_iterations=gs.iterations,
                gs_residual=gs.residual,
                gs_mass1=targets[0] ** 2,
                gs_mass2=targets[1] ** 2,
            )
            if write_csv:
                writer.submit(("text", "groundstate.csv", _groundstate_csv(gs)))

        elastic_errors = None
        if params.mu1 == params.mu2 == params.beta:
            shift = collision_shift(
                config.soliton1.omega, config.soliton2.omega,
                config.soliton1.v, config.soliton2.v,
            )
            predicted = predicted_outgoing(
                shift, config.soliton1, config.soliton2, final.t, grid, params
            )
            elastic_errors, fitted = elastic_error(final, predicted, grid)
            extras.update(
                manakov_tau1=shift.tau1,
                manakov_tau2=shift.tau2,
                fitted_shift1=fitted[0],
                fitted_shift2=fitted[1],
            )

        report = CollisionReport(
            t_final=final.t,
            left_masses=left_masses,
            right_masses=right_masses,
            peak_positions=(peaks[0][0], peaks[1][0]),
            peak_heights=(peaks[0][1], peaks[1][1]),
            velocity_estimates=(track.velocity1, track.velocity2),
            ground_state_sup_errors=gs_errors,
            elastic_sup_errors=elastic_errors,
        )
        if write_json:
            payload = report.to_json_dict()
            payload.update(extras)
            writer.submit(("text", "report.json", json.dumps(payload, indent=2) + "\n"))
    finally:
        writer.close()
    return report


def _groundstate_csv(gs: GroundStateResult) -> str:
    lines = ["x,phi1,phi2"]
    lines.extend(_format_row(row) for row in zip(gs.x, gs.phi1, gs.phi2))
    return "\n".join(lines) + "\n"


def _cmd_run(path: str, overrides: "list[str]") -> int:
    config = parse_config(Path(path).read_text(), overrides)
    report = run_experiment(config)
    directory = _resolve_directory(config.directory)
    print(f"wrote {directory}/")
    print(f"t_final        {report.t_final:g}")
    print(f"left masses    {report.left_masses[0]:.6g}  {report.left_masses[1]:.6g}")
    print(f"right masses   {report.right_masses[0]:.6g}  {report.right_masses[1]:.6g}")
    print(f"peaks at       {report.peak_positions[0]:.6g}  {report.peak_positions[1]:.6g}")
    print(f"velocities     {report.velocity_estimates[0]:.6g}  {report.velocity_estimates[1]:.6g}")
    if report.ground_state_sup_errors is not None:
        errors = report.ground_state_sup_errors
        print(f"gs sup errors  {errors[0]:.6g}  {errors[1]:.6g}")
    if report.elastic_sup_errors is not None:
        errors = report.elastic_sup_errors
        print(f"elastic errors {errors[0]:.6g}  {errors[1]:.6g}")
    return 0


def _cmd_groundstate(path: str, overrides: "list[str]") -> int:
    sections = _parse_sections(Path(path).read_text())
    _apply_overrides(sections, overrides)
    params = CoupledParams(**_section_values(sections, "params", required=("mu1", "mu2", "beta")))
    block = _build_groundstate(sections)
    if block is None:
        raise ConfigError("groundstate subcommand needs a [groundstate] section")
    if block.masses is None:
        raise ConfigError("groundstate subcommand needs literal masses, not from-left-split")
    output_values = _section_values(sections, "output")
    directory = _resolve_directory(output_values.get("directory", "out"))
    directory.mkdir(parents=True, exist_ok=True)

    gs = solve_ground_state(
        params,
        (np.sqrt(block.masses[0]), np.sqrt(block.masses[1])),
        domain=_flow_domain(block),
        tau=block.tau,
        tol=block.tol,
        max_iter=block.max_iter,
    )
    summary = {
        "omega1": gs.omega1,
        "omega2": gs.omega2,
        "iterations": gs.iterations,
        "residual": gs.residual,
        "half_width": gs.half_width,
        "h": gs.h,
    }
    (directory / "groundstate.csv").write_text(_groundstate_csv(gs))
    (directory / "groundstate.json").write_text(json.dumps(summary, indent=2) + "\n")
    print(json.dumps(summary, indent=2))
    return 0


def _cmd_manakov(args) -> int:
    shift = collision_shift(args.omega1, args.omega2, args.v1, args.v2)
    print(
        json.dumps(
            {
                "chi1_re": shift.chi1.real,
                "chi1_im": shift.chi1.imag,
                "chi2_re": shift.chi2.real,
                "chi2_im": shift.chi2.imag,
                "tau1": shift.tau1,
                "tau2": shift.tau2,
                "theta1_re": shift.theta1.real,
                "theta1_im": shift.theta1.imag,
                "theta2_re": shift.theta2.real,
                "theta2_im": shift.theta2.imag,
            },
            indent=2,
        )
    )
    return 0


def _cmd_convergence(path: str, overrides: "list[str]") -> int:
    config = parse_config(Path(path).read_text(), overrides)
    grid = config.grid
    state = initial_data(config.soliton1, config.soliton2, config.params, config.t0, grid)

    def final_at(tau: float) -> FieldPair:
        stepping = EvolveConfig(
            tau=tau, t_final=config.t_final,
            snapshot_stride=10**9, diagnostics_stride=10**9,
        )
        return evolve(state.copy(), config.params, grid, stepping)

    reference = final_at(config.tau / 16.0)
    errors = []
    for tau in (config.tau, config.tau / 2.0):
        candidate = final_at(tau)
        errors.append(
            max(
                np.abs(candidate.u1 - reference.u1).max(),
                np.abs(candidate.u2 - reference.u2).max(),
            )
        )
    order = float(np.log2(errors[0] / errors[1]))
    print(
        json.dumps(
            {
                "tau": config.tau,
                "error_coarse": errors[0],
                "error_half": errors[1],
                "observed_order": order,
            },
            indent=2,
        )
    )
    return 0 if 1.8 <= order <= 2.2 else 1


_PRESETS = {
    "elastic.cfg": """\
# Integrable elastic collision: distinct frequencies, opposite velocities.
[grid]
a = 20
n = 1024

[params]
mu1 = 1
mu2 = 1
beta = 1

[soliton1]
omega = 5
v = 1

[soliton2]
omega = 1
v = -1

[run]
t0 = -10
t_final = 10
tau = 1e-3

[output]
directory = out-elastic
""",
    "symmetric.cfg": """\
# Symmetric attractive collision with mass extraction; the left-going
# waves are compared against gradient-flow profiles at the end.
[grid]
a = 200
n = 4096

[params]
mu1 = 1
mu2 = 1
beta = 3

[soliton1]
omega = 1
v = 2

[soliton2]
omega = 1
v = -2

[run]
t0 = -10
t_final = 40
tau = 1e-3

[output]
directory = out-symmetric

[groundstate]
masses = from-left-split
fd_half_width = 16
fd_intervals = 512
""",
    "dispersive.cfg": """\
# Fast repulsive collision shedding a small dispersive part.
[grid]
a = 500
n = 8192

[params]
mu1 = 1
mu2 = 1
beta = -1

[soliton1]
omega = 1
v = 2.7

[soliton2]
omega = 1
v = -2.7

[run]
t0 = -10
t_final = 90
tau = 1e-3

[output]
directory = out-dispersive
""",
    "reflexion.cfg": """\
# Slow repulsive collision: the solitons bounce back with flipped velocities.
[grid]
a = 20
n = 1024

[params]
mu1 = 1
mu2 = 1
beta = -1

[soliton1]
omega = 1
v = 0.5

[soliton2]
omega = 1
v = -0.5

[run]
t0 = -10
t_final = 10
tau = 1e-3

[output]
directory = out-reflexion
""",
}


def _cmd_presets(directory: str) -> int:
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    for name, content in _PRESETS.items():
        (target / name).write_text(content)
        print(f"wrote {target / name}")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cnls",
        description="Coupled cubic Schrodinger collision experiments.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for name, help_text in (
        ("run", "run a collision experiment from a config file"),
        ("groundstate", "run only the gradient flow from a config file"),
        ("convergence", "tau-halving self-test on a config's problem"),
    ):
        command = sub.add_parser(name, help=help_text)
        command.add_argument("config", help="path to a config file")

    manakov = sub.add_parser("manakov", help="print elastic collision shifts as JSON")
    for flag in ("--omega1", "--omega2", "--v1", "--v2"):
        manakov.add_argument(flag, type=float, required=True)

    presets = sub.add_parser("presets", help="write the four experiment config files")
    presets.add_argument("--dir", default=".", help="target directory (default: .)")
    return parser


def main(argv: "list[str] | None" = None) -> int:
    """Console entry point; returns the process exit code."""
    argv = list(sys.argv[1:] if argv is None else argv)
    known, extra = _build_parser().parse_known_args(argv)
    try:
        if extra and known.command not in ("run", "groundstate", "convergence"):
            raise ConfigError(f"unexpected arguments: {' '.join(extra)}")
        if known.command == "run":
            return _cmd_run(known.config, extra)
        if known.command == "groundstate":
            return _cmd_groundstate(known.config, extra)
        if known.command == "convergence":
            return _cmd_convergence(known.config, extra)
        if known.command == "manakov":
            return _cmd_manakov(known)
        return _cmd_presets(known.dir)
    except (ConfigError, DomainError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except IntegrationDivergedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (NonConvergenceError, StepFailureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5


if __name__ == "__main__":
    sys.exit(main())
