"""Command-line front end.

Four subcommands drive the library from a JSON config file:

    zenopur run      --config cfg.json   protocol trace (n, fidelity, P)
    zenopur spectrum --config cfg.json   spectral report of V as JSON
    zenopur sweep    --config cfg.json   parameter sweep as CSV
    zenopur shots    --config cfg.json   Monte Carlo vs exact as CSV

Exit codes: 0 ok, 1 config error, 2 numeric failure.  Output goes to
stdout unless an output path is configured (or given via --out).  Reals
are printed with 12 significant digits so repeated runs diff clean.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from .engine import (
    DensityMatrix,
    ProbeSpec,
    projected_evolution,
    run_protocol,
    spectral_report,
)
from .exceptions import ZenopurError
from .linalg import Operator
from .model3q import (
    INV_SQRT2,
    ModelParams,
    bell_basis,
    build_hamiltonian,
    check_conditions,
    probe_spec,
    singlet_eigenvalue,
)
from .trajectories import ShotConfig, run_shots

RUN_HEADER = "n,fidelity,success_probability"
SWEEP_HEADER = "value,singlet_magnitude,gap_ratio,dominant_fidelity"
SHOTS_HEADER = "n,mc_frequency,exact_probability,abs_error"

DEFAULT_SHOTS = 10000
DEFAULT_SEED = 0


class ConfigError(Exception):
    """Invalid configuration; carries the offending field path."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


@dataclass
class SweepSpec:
    axis: str
    start: float
    stop: float
    count: int


@dataclass
class RunConfig:
    """Fully resolved configuration for one CLI invocation."""

    kind: str
    params: ModelParams | None
    h_tot: Operator
    tau: float
    probe: ProbeSpec
    rho_tot: DensityMatrix | None
    n_steps: int
    target: np.ndarray | None
    out_path: str | None
    out_format: str
    sweep: SweepSpec | None
    shot_cfg: ShotConfig | None


def _fmt(x: float) -> str:
    return format(float(x), ".12g")


def _round12(x: float) -> float:
    x = float(x)
    return float(_fmt(x)) if math.isfinite(x) else x


def _get(mapping, key, path, required=True, default=None):
    if not isinstance(mapping, dict):
        raise ConfigError(path or "config", "expected an object")
    if key not in mapping:
        if required:
            raise ConfigError(f"{path}.{key}" if path else key, "missing required field")
        return default
    return mapping[key]


def _as_real(value, path) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, "expected a real number")
    return float(value)


def _as_int(value, path) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, "expected an integer")
    return value


def _as_complex(value, path) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(path, "expected a number or an [re, im] pair")


def _as_vector(value, path, length) -> np.ndarray:
    if not isinstance(value, list) or len(value) != length:
        raise ConfigError(path, f"expected a list of {length} entries")
    return np.array(
        [_as_complex(v, f"{path}[{i}]") for i, v in enumerate(value)], dtype=complex
    )


def _as_matrix(value, path, dim) -> np.ndarray:
    if not isinstance(value, list) or len(value) != dim:
        raise ConfigError(path, f"expected {dim} rows")
    return np.array(
        [_as_vector(row, f"{path}[{i}]", dim) for i, row in enumerate(value)]
    )


def _preset_state(name: str, probe: ProbeSpec, path: str) -> DensityMatrix:
    if probe.dim_x != 2 or probe.dim_a != 4:
        raise ConfigError(path, f"preset '{name}' needs a 2 x 4 qubit split")
    right = np.array([1.0, 1.0], dtype=complex) * INV_SQRT2
    basis = bell_basis()
    up_down = np.zeros(4, dtype=complex)
    up_down[1] = 1.0
    down_up = np.zeros(4, dtype=complex)
    down_up[2] = 1.0
    if name == "paper-product":
        return DensityMatrix.pure(np.kron(right, up_down), (2, 2, 2))
    if name == "paper-mixed":
        rho_ab = (np.outer(up_down, up_down) + np.outer(down_up, down_up)) / 2.0
        rho = np.kron(np.outer(right, right.conj()), rho_ab)
        return DensityMatrix(Operator(rho, (2, 2, 2)))
    raise ConfigError(path, f"unknown preset '{name}'")


def _load_system(root):
    system = _get(root, "system", "")
    kind = _get(system, "kind", "system")
    if kind not in ("model3q", "custom"):
        raise ConfigError("system.kind", "expected 'model3q' or 'custom'")
    units = _get(root, "units", "", required=False, default="absolute")
    if units not in ("absolute", "omega"):
        raise ConfigError("units", "expected 'absolute' or 'omega'")

    if kind == "model3q":
        if units == "omega":
            omega = _as_real(
                _get(system, "omega", "system", required=False, default=1.0),
                "system.omega",
            )
            if omega != 1.0:
                raise ConfigError(
                    "system.omega", "must be 1 (or omitted) when units = 'omega'"
                )
        else:
            omega = _as_real(_get(system, "omega", "system"), "system.omega")
        g = _as_real(_get(system, "g", "system"), "system.g")
        tau = _as_real(_get(system, "tau", "system"), "system.tau")
        alpha = _as_complex(
            _get(system, "alpha", "system", required=False, default=INV_SQRT2),
            "system.alpha",
        )
        beta = _as_complex(
            _get(system, "beta", "system", required=False, default=INV_SQRT2),
            "system.beta",
        )
        try:
            params = ModelParams(omega=omega, g=g, tau=tau, alpha=alpha, beta=beta)
        except ValueError as exc:
            raise ConfigError("system.alpha", str(exc)) from None
        if tau < 0:
            raise ConfigError("system.tau", "must be nonnegative")
        return "model3q", params, build_hamiltonian(params), tau, probe_spec(params)

    if units == "omega":
        raise ConfigError("units", "'omega' applies only to model3q systems")
    dim_x = _as_int(_get(system, "dim_x", "system"), "system.dim_x")
    dim_a = _as_int(_get(system, "dim_a", "system"), "system.dim_a")
    if dim_x < 1 or dim_a < 1:
        raise ConfigError("system.dim_x", "dimensions must be positive")
    tau = _as_real(_get(system, "tau", "system"), "system.tau")
    if tau < 0:
        raise ConfigError("system.tau", "must be nonnegative")
    dim = dim_x * dim_a
    h = _as_matrix(_get(system, "hamiltonian", "system"), "system.hamiltonian", dim)
    try:
        h_tot = Operator(h, (dim_x, dim_a))
    except ValueError as exc:
        raise ConfigError("system.hamiltonian", str(exc)) from None
    phi = _as_vector(_get(system, "probe", "system"), "system.probe", dim_x)
    try:
        probe = ProbeSpec(phi, dim_x, dim_a)
    except (ValueError, ZenopurError) as exc:
        raise ConfigError("system.probe", str(exc)) from None
    return "custom", None, h_tot, tau, probe


def _load_initial_state(root, probe, required):
    value = _get(root, "initial_state", "", required=required)
    if value is None:
        return None
    if isinstance(value, str):
        return _preset_state(value, probe, "initial_state")
    matrix = _as_matrix(value, "initial_state", probe.dim_total)
    factors = (probe.dim_x, probe.dim_a)
    try:
        return DensityMatrix(Operator(matrix, factors))
    except ValueError as exc:
        raise ConfigError("initial_state", str(exc)) from None


def _load_target(root, probe, command):
    value = _get(root, "target", "", required=False)
    if value is None:
        if command == "run" and probe.dim_a == 4:
            return bell_basis().psi_minus
        return None
    if isinstance(value, str):
        if value != "psi-minus":
            raise ConfigError("target", f"unknown preset '{value}'")
        if probe.dim_a != 4:
            raise ConfigError("target", "preset 'psi-minus' needs a 4-dim target space")
        return bell_basis().psi_minus
    vec = _as_vector(value, "target", probe.dim_a)
    norm = np.linalg.norm(vec)
    if abs(norm - 1.0) > 1e-8:
        raise ConfigError("target", f"vector norm {norm!r} is not 1")
    return vec


def _load_sweep(root, kind):
    section = _get(root, "sweep", "")
    axis = _get(section, "axis", "sweep")
    if axis not in ("tau", "g", "alpha-angle"):
        raise ConfigError("sweep.axis", "expected 'tau', 'g' or 'alpha-angle'")
    if kind != "model3q":
        raise ConfigError("sweep.axis", "sweeps need a model3q system")
    start = _as_real(_get(section, "start", "sweep"), "sweep.start")
    stop = _as_real(_get(section, "stop", "sweep"), "sweep.stop")
    count = _as_int(_get(section, "count", "sweep"), "sweep.count")
    if count < 2:
        raise ConfigError("sweep.count", "must be at least 2")
    if axis == "tau" and (start < 0 or stop < 0):
        raise ConfigError("sweep.start", "tau values must be nonnegative")
    return SweepSpec(axis, start, stop, count)


def _load_shot_config(root, n_steps, args):
    section = _get(root, "shots", "", required=False, default={})
    shots = _as_int(
        _get(section, "shots", "shots", required=False, default=DEFAULT_SHOTS),
        "shots.shots",
    )
    seed = _as_int(
        _get(section, "seed", "shots", required=False, default=DEFAULT_SEED),
        "shots.seed",
    )
    if args.shots is not None:
        shots = args.shots
    if args.seed is not None:
        seed = args.seed
    try:
        return ShotConfig(shots=shots, seed=seed, n_steps=n_steps)
    except ValueError as exc:
        raise ConfigError("shots", str(exc)) from None


def load_config(path: str, command: str, args) -> RunConfig:
    """Read and validate a JSON config file for the given subcommand."""
    try:
        with open(path, encoding="utf-8") as fh:
            root = json.load(fh)
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"invalid JSON: {exc}") from None
    if not isinstance(root, dict):
        raise ConfigError("config", "top level must be an object")

    kind, params, h_tot, tau, probe = _load_system(root)

    needs_state = command in ("run", "shots")
    rho_tot = _load_initial_state(root, probe, required=needs_state)

    n_steps = _get(root, "n_steps", "", required=needs_state, default=0)
    n_steps = _as_int(n_steps, "n_steps")
    if args.steps is not None:
        n_steps = args.steps
    if n_steps < 0:
        raise ConfigError("n_steps", "must be nonnegative")

    target = _load_target(root, probe, command)

    out_section = _get(root, "output", "", required=False, default={})
    out_path = _get(out_section, "path", "output", required=False)
    if out_path is not None and not isinstance(out_path, str):
        raise ConfigError("output.path", "expected a string")
    expected_format = "json" if command == "spectrum" else "csv"
    out_format = _get(
        out_section, "format", "output", required=False, default=expected_format
    )
    if out_format not in ("csv", "json"):
        raise ConfigError("output.format", "expected 'csv' or 'json'")
    if out_format != expected_format:
        raise ConfigError(
            "output.format", f"'{command}' emits {expected_format} output"
        )
    if args.out is not None:
        out_path = args.out

    sweep = _load_sweep(root, kind) if command == "sweep" else None
    shot_cfg = _load_shot_config(root, n_steps, args) if command == "shots" else None

    return RunConfig(
        kind=kind,
        params=params,
        h_tot=h_tot,
        tau=tau,
        probe=probe,
        rho_tot=rho_tot,
        n_steps=n_steps,
        target=target,
        out_path=out_path,
        out_format=out_format,
        sweep=sweep,
        shot_cfg=shot_cfg,
    )


def cmd_run(cfg: RunConfig) -> str:
    """Protocol trace as CSV rows (n, fidelity, success_probability)."""
    trace = run_protocol(
        cfg.rho_tot, cfg.h_tot, cfg.tau, cfg.probe, cfg.n_steps, target=cfg.target
    )
    lines = [RUN_HEADER]
    for step in trace.steps:
        fid = "" if step.fidelity is None else _fmt(step.fidelity)
        lines.append(f"{step.n},{fid},{_fmt(step.success_prob)}")
    return "\n".join(lines) + "\n"


def cmd_spectrum(cfg: RunConfig) -> str:
    """Spectral report of the projected evolution operator as JSON."""
    v = projected_evolution(cfg.h_tot, cfg.tau, cfg.probe)
    report = spectral_report(v)
    eigenvalues = [
        {"re": _round12(lam.real), "im": _round12(lam.imag), "magnitude": _round12(abs(lam))}
        for lam in report.eigensystem.eigenvalues
    ]
    payload = {
        "eigenvalues": eigenvalues,
        "dominant_index": report.dominant_index,
        "dominant_unique": report.dominant_unique,
        "gap_ratio": _round12(report.gap_ratio),
    }
    if cfg.params is not None:
        flags = check_conditions(cfg.params)
        payload["tuning_ok"] = flags.tuning_ok
        payload["probe_ok"] = flags.probe_ok
        payload["coupling_ok"] = flags.coupling_ok
    return json.dumps(payload, indent=2) + "\n"


def _sweep_params(base: ModelParams, axis: str, value: float) -> ModelParams:
    if axis == "tau":
        return replace(base, tau=value)
    if axis == "g":
        return replace(base, g=value)
    return replace(base, alpha=math.cos(value), beta=math.sin(value))


def cmd_sweep(cfg: RunConfig) -> str:
    """Sweep one model parameter; CSV of singlet magnitude, gap, fidelity."""
    spec = cfg.sweep
    values = np.sort(np.linspace(spec.start, spec.stop, spec.count))
    psi_minus = bell_basis().psi_minus
    lines = [SWEEP_HEADER]
    for value in values:
        params = _sweep_params(cfg.params, spec.axis, float(value))
        h_tot = build_hamiltonian(params)
        v = projected_evolution(h_tot, params.tau, probe_spec(params))
        report = spectral_report(v)
        u0 = report.eigensystem.right_vectors[:, 0]
        dom_fid = abs(np.vdot(psi_minus, u0)) ** 2
        lam_s = abs(singlet_eigenvalue(params))
        lines.append(
            f"{_fmt(value)},{_fmt(lam_s)},{_fmt(report.gap_ratio)},{_fmt(dom_fid)}"
        )
    return "\n".join(lines) + "\n"


def cmd_shots(cfg: RunConfig) -> str:
    """Monte Carlo shot frequencies against the exact protocol, as CSV."""
    summary = run_shots(cfg.rho_tot, cfg.h_tot, cfg.tau, cfg.probe, cfg.shot_cfg)
    trace = run_protocol(cfg.rho_tot, cfg.h_tot, cfg.tau, cfg.probe, cfg.n_steps)
    lines = [SHOTS_HEADER]
    for step in trace.steps:
        freq = float(summary.frequency[step.n])
        err = abs(freq - step.success_prob)
        lines.append(
            f"{step.n},{_fmt(freq)},{_fmt(step.success_prob)},{_fmt(err)}"
        )
    return "\n".join(lines) + "\n"


_COMMANDS = {
    "run": cmd_run,
    "spectrum": cmd_spectrum,
    "sweep": cmd_sweep,
    "shots": cmd_shots,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap onto the
    # config-error path so exit code 2 stays reserved for numeric failures.
    def error(self, message):
        raise ConfigError("usage", message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zenopur", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    helps = {
        "run": "iterate the protocol and emit the (n, fidelity, P) trace",
        "spectrum": "emit the spectral report of the projected evolution operator",
        "sweep": "sweep tau, g or the probe angle and emit per-point diagnostics",
        "shots": "Monte Carlo shot sampling cross-checked against the exact P",
    }
    for name, text in helps.items():
        cmd = sub.add_parser(name, help=text)
        cmd.add_argument("--config", required=True, help="path to the JSON config")
        cmd.add_argument("--out", help="output path (default: config or stdout)")
        cmd.add_argument("--seed", type=int, help="override the shot RNG seed")
        cmd.add_argument("--shots", type=int, help="override the shot count")
        cmd.add_argument("--steps", type=int, help="override the step count")
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        cfg = load_config(args.config, args.command, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    try:
        text = _COMMANDS[args.command](cfg)
    except ZenopurError as exc:
        print(f"numeric failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if cfg.out_path is not None:
        with open(cfg.out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
