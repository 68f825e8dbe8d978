"""Command-line front end: scenario runs, sweeps, CSV output, optional SVG plots.

Exit status contract: 0 success, 2 usage/configuration error, 3 numerical
failure (non-unique steady state, integrator step too large, fit not
converged).  Identical configuration produces byte-identical CSV: floats are
written with 12 significant digits, '.' decimal separator, one record per grid
point or time step, and files are written to a temporary name and atomically
renamed, so partial files never appear.

A flat ``key = value`` config file (``--config``) may supply any long flag
(underscores for dashes); explicit flags override file values, and unknown
keys are rejected.  The environment variable ``DISSIPCOOL_OUTDIR`` sets the
directory for default output paths.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import _svg
from .errors import (
    BadConfig,
    DegenerateGround,
    NumericalError,
    UsageError,
)
from .dynamics import assemble_liouvillian, reset_operators
from .model import interaction_picture_hamiltonian
from .scenarios import (
    ONE_QUBIT,
    TWO_QUBIT,
    ScenarioConfig,
    build_one_qubit_scenario,
    build_two_qubit_scenario,
    fidelity_vs_time,
    rate_fit_for,
    steady_fidelity_numeric,
)
from .steady import cooling_rate_large_detuning, fidelity_formula, steady_state

ENV_OUTDIR = "DISSIPCOOL_OUTDIR"

# fixed default grids for the figure commands
FIG5A_OMEGAS = (0.25, 0.5, 1.0, 2.0)
FIG5A_DELTAS = tuple(np.linspace(0.0, 50.0, 26))
FIG5B_OMEGAS = (0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0)
FIG5B_DELTA = 30.0
FIG6_DEFAULTS = dict(coupling_j=5.0, omega=0.2, t_max=1500.0, dt=0.01)


@dataclass
class RunConfig:
    """Validated inputs of one CLI invocation."""

    command: str
    scenario: str = ONE_QUBIT
    omega: float = 1.0
    gamma: float = 1.0
    delta_lambda: float = 10.0
    coupling_j: float = 5.0
    truncate: bool = True
    t_max: float | None = None
    dt: float | None = None
    initial_state: str = "mixed"
    omegas: tuple = ()
    deltas: tuple = ()
    out: str | None = None
    format: str = "csv"
    jobs: int = 1
    explicit_keys: frozenset = frozenset()

    def scenario_config(self, **overrides) -> ScenarioConfig:
        kind = self.scenario
        base = dict(
            kind=kind,
            omega=self.omega,
            gamma=self.gamma,
            t_max=self.t_max,
            dt=self.dt,
            initial_state=self.initial_state,
        )
        if kind == ONE_QUBIT:
            base["delta_lambda"] = self.delta_lambda
        else:
            base["coupling_j"] = self.coupling_j
            base["truncate"] = self.truncate
        base.update(overrides)
        return ScenarioConfig(**base)


_FLOAT_KEYS = {"omega", "gamma", "delta_lambda", "coupling_j", "t_max", "dt"}
_LIST_KEYS = {"omegas", "deltas"}
_INT_KEYS = {"jobs"}
_BOOL_KEYS = {"truncate"}
_STR_KEYS = {"scenario", "initial_state", "out", "format"}
_ALL_KEYS = _FLOAT_KEYS | _LIST_KEYS | _INT_KEYS | _BOOL_KEYS | _STR_KEYS


def _parse_float(text: str, key: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"{key}: cannot parse {text!r} as a number") from None
    if not math.isfinite(value):
        raise UsageError(f"{key}: value must be finite, got {text!r}")
    return value


def _parse_float_list(text: str, key: str) -> tuple:
    items = [t for t in text.replace(" ", "").split(",") if t]
    if not items:
        raise UsageError(f"{key}: empty list")
    return tuple(_parse_float(t, key) for t in items)


def _parse_bool(text: str, key: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"{key}: cannot parse {text!r} as a boolean")


def read_config_file(path: str) -> dict:
    """Flat ``key = value`` file; '#' comments; unknown keys rejected."""
    values = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected 'key = value', got {raw.rstrip()!r}")
        key, _, text = line.partition("=")
        key = key.strip().replace("-", "_")
        text = text.strip()
        if key not in _ALL_KEYS:
            raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
        if key in _FLOAT_KEYS:
            values[key] = _parse_float(text, key)
        elif key in _LIST_KEYS:
            values[key] = _parse_float_list(text, key)
        elif key in _INT_KEYS:
            try:
                values[key] = int(text)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: cannot parse {text!r} as an integer") from None
        elif key in _BOOL_KEYS:
            values[key] = _parse_bool(text, key)
        else:
            values[key] = text
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # raise instead of sys.exit so main() owns the status
        raise UsageError(message)


def _finite(text: str) -> float:
    return _parse_float(text, "value")


def build_parser() -> _Parser:
    parser = _Parser(
        prog="dissipcool",
        description="Simulate dissipative preparation of interaction-Hamiltonian ground states.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, scenario=True, grid=False):
        p.add_argument("--config", help="flat key = value config file")
        if scenario:
            p.add_argument("--scenario", choices=(ONE_QUBIT.replace("_", "-"), "two-qubit"),
                           help="physical scenario (default one-qubit)")
            p.add_argument("--omega", type=_finite, help="Rabi frequency in units of gamma")
            p.add_argument("--gamma", type=_finite, help="per-channel decay rate (default 1)")
            p.add_argument("--delta-lambda", type=_finite, dest="delta_lambda",
                           help="target-state detuning (one-qubit)")
            p.add_argument("--coupling-j", type=_finite, dest="coupling_j",
                           help="Heisenberg coupling J (two-qubit)")
            p.add_argument("--full", dest="truncate", action="store_false", default=None,
                           help="use the full 16-dim two-qubit space instead of the 8-dim truncation")
            p.add_argument("--t-max", type=_finite, dest="t_max", help="integration horizon")
            p.add_argument("--dt", type=_finite, help="integrator step")
            p.add_argument("--initial-state", dest="initial_state",
                           help="mixed | lambda1 | singlet | basis:<n>")
        if grid:
            p.add_argument("--omegas", help="comma-separated Rabi frequencies")
            p.add_argument("--deltas", help="comma-separated detunings")
        p.add_argument("--out", help="output CSV path")
        p.add_argument("--format", choices=("csv", "svg"),
                       help="svg additionally writes a sibling .svg plot")
        p.add_argument("--jobs", type=int, help="worker threads for sweep points (default 1)")

    add_common(sub.add_parser("steady", help="steady state of one scenario"))
    add_common(sub.add_parser("evolve", help="fidelity trajectory of one scenario"))
    add_common(sub.add_parser("sweep-fidelity", help="steady fidelity over an (omega, delta) grid"),
               grid=True)
    add_common(sub.add_parser("sweep-rate", help="cooling rate vs omega at large detuning"),
               grid=True)
    add_common(sub.add_parser("fig5a", help="fidelity vs detuning, default grid"))
    add_common(sub.add_parser("fig5b", help="cooling rate vs Rabi frequency, default grid"))
    add_common(sub.add_parser("fig6", help="two-qubit fidelity vs time, default parameters"))
    return parser


def parse_config(argv) -> RunConfig:
    """Parse flags (and an optional config file) into a validated RunConfig."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    values = {}
    if getattr(ns, "config", None):
        values.update(read_config_file(ns.config))
    for key in _ALL_KEYS:
        flag_value = getattr(ns, key, None)
        if flag_value is not None:
            if key in _LIST_KEYS and isinstance(flag_value, str):
                flag_value = _parse_float_list(flag_value, key)
            values[key] = flag_value
    cfg = RunConfig(command=ns.command)
    for key, value in values.items():
        setattr(cfg, key, value)
    cfg.explicit_keys = frozenset(values.keys())
    cfg.scenario = str(cfg.scenario).replace("-", "_")
    if cfg.scenario in ("two_qubit", "two_qubit_heisenberg"):
        cfg.scenario = TWO_QUBIT
    if cfg.scenario not in (ONE_QUBIT, TWO_QUBIT):
        raise UsageError(f"unknown scenario {cfg.scenario!r}")
    if cfg.format not in ("csv", "svg"):
        raise UsageError(f"unknown format {cfg.format!r}")
    if cfg.jobs < 1:
        raise UsageError("jobs must be at least 1")
    for key in ("omega", "gamma", "delta_lambda", "coupling_j"):
        if not math.isfinite(getattr(cfg, key)):
            raise UsageError(f"{key} must be finite")
    return cfg


def _default_out(cfg: RunConfig) -> str:
    name = cfg.command.replace("-", "_") + ".csv"
    outdir = os.environ.get(ENV_OUTDIR, ".")
    return os.path.join(outdir, name)


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value) + 0.0, ".12g")  # +0.0 normalizes negative zero


def write_csv(path: str, header, rows) -> None:
    """Write rows atomically: temp file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    text = ",".join(header) + "\n"
    for row in rows:
        text += ",".join(_fmt(v) for v in row) + "\n"
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _maybe_svg(cfg: RunConfig, path: str, x_label, y_label, series) -> None:
    if cfg.format != "svg":
        return
    svg_path = os.path.splitext(path)[0] + ".svg"
    try:
        doc = _svg.render_lines(x_label, y_label, series)
        with open(svg_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(doc)
    except Exception as exc:  # plotting must never fail the run
        print(f"warning: svg rendering failed ({exc}); csv kept", file=sys.stderr)


def _map_points(fn, points, jobs: int):
    """Evaluate fn over points, optionally in a thread pool; result order fixed."""
    if jobs <= 1 or len(points) <= 1:
        return [fn(p) for p in points]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, points))


def _run_steady(cfg: RunConfig, path: str) -> None:
    scen_cfg = cfg.scenario_config(t_max=None, dt=None)
    if cfg.scenario == ONE_QUBIT:
        scen = build_one_qubit_scenario(scen_cfg)
        h = interaction_picture_hamiltonian(scen.spec)
        resets = reset_operators(scen.spec)
    else:
        scen = build_two_qubit_scenario(scen_cfg)
        h, resets = scen.hamiltonian, scen.resets
    result = steady_state(assemble_liouvillian(h, resets))
    rho = result.rho_ss.matrix
    rows = [
        (i, j, rho[i, j].real, rho[i, j].imag)
        for i in range(rho.shape[0])
        for j in range(rho.shape[1])
    ]
    write_csv(path, ("i", "j", "real", "imag"), rows)
    if cfg.format == "svg":
        print("warning: svg output applies to curve data only; csv kept", file=sys.stderr)
    fid = steady_fidelity_numeric(scen_cfg)
    print(
        f"steady state written to {path}: fidelity={_fmt(fid)} "
        f"residual={result.residual:.3e} gap={result.gap_indicator:.3e}"
    )


def _run_evolve(cfg: RunConfig, path: str) -> None:
    traj = fidelity_vs_time(cfg.scenario_config())
    fid = traj.observables["fidelity"]
    rows = list(zip(traj.times, fid))
    write_csv(path, ("t", "fidelity"), rows)
    _maybe_svg(cfg, path, "t", "fidelity", {"fidelity": (traj.times, fid)})
    print(f"trajectory written to {path}: final fidelity={_fmt(fid[-1])}")


def _run_sweep_fidelity(cfg: RunConfig, path: str, omegas, deltas) -> None:
    points = [(w, d) for w in omegas for d in deltas]

    def evaluate(point):
        w, d = point
        scen_cfg = ScenarioConfig(kind=ONE_QUBIT, omega=w, gamma=cfg.gamma, delta_lambda=d)
        return fidelity_formula(w, cfg.gamma, d), steady_fidelity_numeric(scen_cfg)

    results = _map_points(evaluate, points, cfg.jobs)
    rows = [
        (w, d, formula, numeric)
        for (w, d), (formula, numeric) in zip(points, results)
    ]
    write_csv(path, ("omega", "delta_lambda", "fidelity_formula", "fidelity_numeric"), rows)
    series = {}
    for w in omegas:
        xs = [d for (ww, d) in points if ww == w]
        ys = [r[1] for (ww, _), r in zip(points, results) if ww == w]
        series[f"omega={_fmt(w)}"] = (xs, ys)
    _maybe_svg(cfg, path, "delta_lambda", "fidelity", series)
    print(f"fidelity sweep written to {path}: {len(rows)} points")


def _run_sweep_rate(cfg: RunConfig, path: str, omegas, delta_lambda: float) -> None:
    if delta_lambda < 10 * max(max(omegas), cfg.gamma):
        raise UsageError("sweep-rate requires delta_lambda >= 10 * max(omega, gamma)")

    def evaluate(w):
        scen_cfg = ScenarioConfig(
            kind=ONE_QUBIT,
            omega=w,
            gamma=cfg.gamma,
            delta_lambda=delta_lambda,
            initial_state="lambda1",
        )
        return cooling_rate_large_detuning(w, cfg.gamma), rate_fit_for(scen_cfg)

    results = _map_points(evaluate, list(omegas), cfg.jobs)
    rows = [(w, formula, fit) for w, (formula, fit) in zip(omegas, results)]
    write_csv(path, ("omega", "rate_formula", "rate_fit"), rows)
    _maybe_svg(
        cfg,
        path,
        "omega",
        "cooling rate",
        {
            "rate_formula": (list(omegas), [r[0] for r in results]),
            "rate_fit": (list(omegas), [r[1] for r in results]),
        },
    )
    print(f"rate sweep written to {path}: {len(rows)} points")


def run(cfg: RunConfig) -> int:
    """Execute one parsed command; returns the process exit status."""
    path = cfg.out or _default_out(cfg)
    if cfg.command == "steady":
        _run_steady(cfg, path)
    elif cfg.command == "evolve":
        _run_evolve(cfg, path)
    elif cfg.command == "sweep-fidelity":
        omegas = cfg.omegas or FIG5A_OMEGAS
        deltas = cfg.deltas or FIG5A_DELTAS
        _run_sweep_fidelity(cfg, path, omegas, deltas)
    elif cfg.command == "sweep-rate":
        omegas = cfg.omegas or FIG5B_OMEGAS
        _run_sweep_rate(cfg, path, omegas, cfg.delta_lambda)
    elif cfg.command == "fig5a":
        _run_sweep_fidelity(cfg, path, FIG5A_OMEGAS, FIG5A_DELTAS)
    elif cfg.command == "fig5b":
        _run_sweep_rate(cfg, path, FIG5B_OMEGAS, FIG5B_DELTA)
    elif cfg.command == "fig6":
        explicit = cfg.explicit_keys
        fig_cfg = RunConfig(
            command="evolve",
            scenario=TWO_QUBIT,
            gamma=cfg.gamma,
            omega=cfg.omega if "omega" in explicit else FIG6_DEFAULTS["omega"],
            coupling_j=cfg.coupling_j if "coupling_j" in explicit else FIG6_DEFAULTS["coupling_j"],
            truncate=cfg.truncate,
            t_max=cfg.t_max if cfg.t_max is not None else FIG6_DEFAULTS["t_max"],
            dt=cfg.dt if cfg.dt is not None else FIG6_DEFAULTS["dt"],
            initial_state=cfg.initial_state,
            out=path,
            format=cfg.format,
        )
        _run_evolve(fig_cfg, path)
    else:  # unreachable behind argparse
        raise UsageError(f"unknown command {cfg.command!r}")
    return 0


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except (UsageError, BadConfig) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, DegenerateGround) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
