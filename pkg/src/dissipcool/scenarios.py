"""Pre-wired physical scenarios and parameter sweeps.

Two concrete setups are provided:

* ``one_qubit``: a single four-level atom whose qubit-manifold interaction has
  eigenvalues (0, delta_lambda).  The single laser is resonant with the upper
  state's transition, so the target (ground) state is the only one detuned, by
  ``delta_lambda``.  With the default (identity) qubit frame the construction
  basis coincides with the product basis (g0, g1, e0, e1), which is then
  exactly the (target, resonant, partner, partner) ordering used by the
  closed forms in :mod:`dissipcool.steady`.

* ``two_qubit_heisenberg``: two atoms with an isotropic spin-spin coupling of
  strength J on the qubit manifold.  For J > 0 the ground state is the
  singlet (energy -3J) below a degenerate triplet (+J), so the three resonant
  transitions collapse onto a single laser with detuning J, and the singlet
  sits 4J away.  The model runs either in the full 16-dimensional product
  space or truncated to the 8-dimensional span of the qubit eigenstates and
  their single-excitation partners (couplings sqrt(2)*Omega/2), with the reset
  operators compressed onto that span.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import (
    ResetOperatorSet,
    Trajectory,
    assemble_liouvillian,
    integrate,
    reset_operators,
)
from .errors import BadConfig
from .linalg import ComplexMatrix, DensityMatrix
from .model import (
    DecaySpec,
    LaserSpec,
    SystemSpec,
    build_lambda_basis,
    choose_detunings,
    embed_interaction,
    interaction_picture_hamiltonian,
)
from .steady import (
    cooling_rate_fit,
    cooling_rate_formula,
    cooling_rate_large_detuning,
    fidelity,
    fidelity_formula,
    steady_state,
)

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

# omega_e - omega_g for scenario specs; only the lab-frame drive builder sees it.
OPTICAL_SPLITTING = 100.0

ONE_QUBIT = "one_qubit"
TWO_QUBIT = "two_qubit_heisenberg"


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of a pre-wired scenario; rates in units of gamma, times in 1/gamma."""

    kind: str
    omega: float
    gamma: float = 1.0
    delta_lambda: float | None = None
    coupling_j: float | None = None
    truncate: bool = False
    t_max: float | None = None
    dt: float | None = None
    initial_state: str | int | np.ndarray = "mixed"

    def __post_init__(self):
        if self.kind not in (ONE_QUBIT, TWO_QUBIT):
            raise BadConfig(f"unknown scenario kind {self.kind!r}")
        if not np.isfinite(self.omega) or self.omega < 0:
            raise BadConfig("omega must be finite and non-negative")
        if self.gamma <= 0 or not np.isfinite(self.gamma):
            raise BadConfig("gamma must be positive")
        if self.kind == ONE_QUBIT:
            if self.delta_lambda is None or self.delta_lambda < 0:
                raise BadConfig("one-qubit scenario needs delta_lambda >= 0")
            if self.truncate:
                raise BadConfig("truncation applies to the two-qubit scenario only")
        else:
            if self.coupling_j is None or self.coupling_j == 0:
                raise BadConfig("two-qubit scenario needs a nonzero coupling_j")
        if self.t_max is not None and self.t_max <= 0:
            raise BadConfig("t_max must be positive")
        if self.dt is not None and self.dt <= 0:
            raise BadConfig("dt must be positive")


@dataclass(frozen=True)
class OneQubitScenario:
    """Built one-qubit system plus its target state and construction basis."""

    spec: SystemSpec
    target: np.ndarray          # 4-dim ket
    basis_matrix: ComplexMatrix  # columns: target, resonant state, their partners

    def __iter__(self):
        return iter((self.spec, self.target))


@dataclass(frozen=True)
class TwoQubitScenario:
    """Built two-qubit system; the truncated block is filled when requested."""

    spec: SystemSpec
    target: np.ndarray            # 16-dim singlet ket
    truncated: bool
    hamiltonian: ComplexMatrix    # interaction-picture H in the active space
    resets: ResetOperatorSet      # reset operators in the active space
    isometry: ComplexMatrix       # 16 x 8 lambda-basis isometry
    qubit_eigenvalues: np.ndarray
    detuning: float
    target_active: np.ndarray     # target in the active space (8- or 16-dim)

    def __iter__(self):
        return iter((self.spec, self.target))


def heisenberg_interaction(j: float) -> ComplexMatrix:
    """Isotropic two-qubit spin coupling j * (XX + YY + ZZ); spectrum (-3j, j, j, j)."""
    return j * (
        np.kron(PAULI_X, PAULI_X)
        + np.kron(PAULI_Y, PAULI_Y)
        + np.kron(PAULI_Z, PAULI_Z)
    )


def build_one_qubit_scenario(
    cfg: ScenarioConfig, qubit_unitary: ComplexMatrix | None = None
) -> OneQubitScenario:
    """One atom, interaction eigenvalues (0, delta_lambda), laser resonant with the upper state.

    ``qubit_unitary`` optionally rotates the qubit frame the interaction is
    written in; the physics (and the steady fidelity to the rotated target) is
    unchanged.
    """
    if cfg.kind != ONE_QUBIT:
        raise BadConfig(f"expected a one-qubit config, got kind {cfg.kind!r}")
    u = np.eye(2, dtype=complex) if qubit_unitary is None else np.asarray(qubit_unitary, complex)
    if u.shape != (2, 2) or np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise BadConfig("qubit_unitary must be a 2x2 unitary")
    interaction = u @ np.diag([0.0, cfg.delta_lambda]).astype(complex) @ u.conj().T
    spec = SystemSpec(
        n_atoms=1,
        omega_g=0.0,
        omega_e=OPTICAL_SPLITTING,
        interaction=interaction,
        decay=DecaySpec.symmetric(cfg.gamma),
        lasers=(LaserSpec(rabi=cfg.omega, detuning=cfg.delta_lambda),),
    )
    # construction basis: qubit frame columns embedded, then their partners
    basis = np.zeros((4, 4), dtype=complex)
    basis[:2, :2] = u
    basis[2:, 2:] = u
    target = basis[:, 0].copy()
    return OneQubitScenario(spec=spec, target=target, basis_matrix=basis)


def build_two_qubit_scenario(cfg: ScenarioConfig) -> TwoQubitScenario:
    """Two qubits with a Heisenberg interaction, cooled toward the singlet.

    In truncated mode the Hamiltonian is compressed onto the 8-dimensional
    lambda basis (and shifted by -detuning so resonant states sit at zero);
    the reset operators are compressed with the same isometry.
    """
    if cfg.kind != TWO_QUBIT:
        raise BadConfig(f"expected a two-qubit config, got kind {cfg.kind!r}")
    j = float(cfg.coupling_j)
    spec_probe = SystemSpec(
        n_atoms=2,
        omega_g=0.0,
        omega_e=OPTICAL_SPLITTING,
        interaction=heisenberg_interaction(j),
        decay=DecaySpec.symmetric(cfg.gamma),
        lasers=(),
    )
    basis = build_lambda_basis(spec_probe)  # raises DegenerateGround for j < 0
    deltas = choose_detunings(basis, embed_interaction(spec_probe))
    distinct = []
    for d in deltas:
        if not any(abs(d - x) <= 1e-9 * max(1.0, abs(x)) for x in distinct):
            distinct.append(float(d))
    lasers = tuple(LaserSpec(rabi=cfg.omega, detuning=d) for d in distinct)
    spec = SystemSpec(
        n_atoms=2,
        omega_g=spec_probe.omega_g,
        omega_e=spec_probe.omega_e,
        interaction=spec_probe.interaction,
        decay=spec_probe.decay,
        lasers=lasers,
    )
    if len(distinct) != 1:
        raise BadConfig(
            f"expected the degenerate triplet to collapse onto one laser, got {distinct}"
        )
    detuning = distinct[0]
    target = basis.ground_state.copy()
    h_full = interaction_picture_hamiltonian(spec)
    P = basis.states
    if cfg.truncate:
        h_active = P.conj().T @ h_full @ P - detuning * np.eye(8)
        resets = reset_operators(spec).project(P)
        target_active = np.zeros(8, dtype=complex)
        target_active[0] = 1.0
    else:
        h_active = h_full
        resets = reset_operators(spec)
        target_active = target
    return TwoQubitScenario(
        spec=spec,
        target=target,
        truncated=cfg.truncate,
        hamiltonian=h_active,
        resets=resets,
        isometry=P,
        qubit_eigenvalues=basis.qubit_eigenvalues,
        detuning=detuning,
        target_active=target_active,
    )


def _one_qubit_active(cfg: ScenarioConfig, qubit_unitary=None):
    scen = build_one_qubit_scenario(cfg, qubit_unitary)
    h = interaction_picture_hamiltonian(scen.spec)
    resets = reset_operators(scen.spec)
    return scen, h, resets, scen.target


def _initial_density(cfg: ScenarioConfig, dim: int, basis_columns: ComplexMatrix,
                     n_qubit: int) -> DensityMatrix:
    """Resolve the configured initial state in the active space.

    ``basis_columns`` maps qubit-manifold labels to active-space kets: its
    first n_qubit columns are the interaction eigenstates (target first).
    """
    sel = cfg.initial_state
    if isinstance(sel, np.ndarray):
        if sel.ndim == 2:
            return DensityMatrix(sel)
        return DensityMatrix.pure(sel)
    if isinstance(sel, str) and sel.startswith("basis:"):
        sel = int(sel.split(":", 1)[1])
    if isinstance(sel, (int, np.integer)):
        if not 0 <= sel < dim:
            raise BadConfig(f"basis index {sel} outside the {dim}-dimensional space")
        ket = np.zeros(dim, dtype=complex)
        ket[sel] = 1.0
        return DensityMatrix.pure(ket)
    if sel == "mixed":
        rho = np.zeros((dim, dim), dtype=complex)
        for k in range(n_qubit):
            col = basis_columns[:, k]
            rho += np.outer(col, col.conj()) / n_qubit
        return DensityMatrix(rho)
    if sel == "ground_lambda1" or sel == "lambda1":
        return DensityMatrix.pure(basis_columns[:, 1])
    if sel in ("singlet", "target", "lambda0"):
        return DensityMatrix.pure(basis_columns[:, 0])
    raise BadConfig(f"unknown initial state {cfg.initial_state!r}")


def _default_t_max(cfg: ScenarioConfig) -> float:
    """Long enough that the fidelity gap decays far below the fit window."""
    omega = max(cfg.omega, 1e-3 * cfg.gamma)
    if cfg.kind == ONE_QUBIT:
        rate = cooling_rate_formula(omega, cfg.gamma, cfg.delta_lambda)
    else:
        # one-qubit analog of the truncated model: collective coupling
        # sqrt(2)*omega, target detuned by 4 J
        rate = cooling_rate_formula(
            np.sqrt(2) * omega, cfg.gamma, 4 * abs(cfg.coupling_j)
        )
    return 14.0 / rate


def fidelity_vs_time(cfg: ScenarioConfig) -> Trajectory:
    """Integrate the configured scenario and attach the target fidelity series."""
    t_max = cfg.t_max if cfg.t_max is not None else _default_t_max(cfg)
    if cfg.kind == ONE_QUBIT:
        scen, h, resets, target = _one_qubit_active(cfg)
        dim, n_qubit = 4, 2
        basis_columns = scen.basis_matrix
        target_active = target
    else:
        scen = build_two_qubit_scenario(cfg)
        h, resets = scen.hamiltonian, scen.resets
        target_active = scen.target_active
        n_qubit = 4
        if scen.truncated:
            dim = 8
            basis_columns = np.eye(8, dtype=complex)
        else:
            dim = 16
            basis_columns = scen.isometry
    rho0 = _initial_density(cfg, dim, basis_columns, n_qubit)
    traj = integrate(resets, h, rho0, t_max, dt=cfg.dt)
    fids = np.array([fidelity(s, target_active) for s in traj.states])
    return traj.with_observable("fidelity", fids)


@dataclass(frozen=True)
class SweepTable:
    """Rectangular grid results: one record per grid point, row-major axis order."""

    axes: dict                 # name -> 1-d array of axis values
    columns: dict              # name -> 1-d array over grid points
    provenance: dict           # column name -> "formula" | "simulation" | "grid"

    def __post_init__(self):
        sizes = [len(v) for v in self.axes.values()]
        total = int(np.prod(sizes)) if sizes else 0
        for name, col in self.columns.items():
            if len(col) != total:
                raise ValueError(
                    f"column {name!r} has {len(col)} entries for a {total}-point grid"
                )

    @property
    def n_points(self) -> int:
        sizes = [len(v) for v in self.axes.values()]
        return int(np.prod(sizes)) if sizes else 0

    def grid_points(self):
        """Axis-value tuples in row-major order (first axis slowest)."""
        mesh = np.meshgrid(*self.axes.values(), indexing="ij")
        flat = [m.ravel() for m in mesh]
        return list(zip(*flat))

    def column_names(self):
        return list(self.axes.keys()) + list(self.columns.keys())

    def rows(self):
        """Full records (axis values then data columns), grid order."""
        pts = self.grid_points()
        cols = [np.asarray(self.columns[k]) for k in self.columns]
        for i, pt in enumerate(pts):
            yield tuple(pt) + tuple(c[i] for c in cols)


def steady_fidelity_numeric(cfg: ScenarioConfig, qubit_unitary=None) -> float:
    """Target fidelity of the null-space steady state of the configured scenario."""
    if cfg.kind == ONE_QUBIT:
        scen, h, resets, target = _one_qubit_active(cfg, qubit_unitary)
        result = steady_state(assemble_liouvillian(h, resets))
        return fidelity(result.rho_ss, target)
    scen = build_two_qubit_scenario(cfg)
    result = steady_state(assemble_liouvillian(scen.hamiltonian, scen.resets))
    return fidelity(result.rho_ss, scen.target_active)


def sweep_fidelity_vs_detuning(omegas, delta_range, gamma: float = 1.0) -> SweepTable:
    """Formula and simulated steady fidelity over an (omega, delta_lambda) grid."""
    omegas = np.asarray(list(omegas), dtype=float)
    deltas = np.asarray(list(delta_range), dtype=float)
    formula = np.empty(omegas.size * deltas.size)
    numeric = np.empty_like(formula)
    i = 0
    for w in omegas:
        for d in deltas:
            cfg = ScenarioConfig(kind=ONE_QUBIT, omega=w, gamma=gamma, delta_lambda=d)
            formula[i] = fidelity_formula(w, gamma, d)
            numeric[i] = steady_fidelity_numeric(cfg)
            i += 1
    return SweepTable(
        axes={"omega": omegas, "delta_lambda": deltas},
        columns={"fidelity_formula": formula, "fidelity_numeric": numeric},
        provenance={"fidelity_formula": "formula", "fidelity_numeric": "simulation"},
    )


def rate_fit_for(cfg: ScenarioConfig) -> float:
    """Trajectory-fit relaxation rate of the configured scenario toward its steady state."""
    fss = steady_fidelity_numeric(cfg)
    traj = fidelity_vs_time(cfg)
    return cooling_rate_fit(traj, fss)


def sweep_rate_vs_omega(omega_range, delta_lambda: float, gamma: float = 1.0) -> SweepTable:
    """Large-detuning cooling-rate formula vs trajectory fit over a Rabi-frequency grid.

    Requires delta_lambda >= 10 * max(omega, gamma) so every point sits in the
    large-detuning regime the formula addresses.
    """
    omegas = np.asarray(list(omega_range), dtype=float)
    if delta_lambda < 10 * max(float(np.max(omegas)), gamma):
        raise BadConfig("delta_lambda must be at least 10x the largest of omega and gamma")
    formula = np.empty(omegas.size)
    fit = np.empty(omegas.size)
    for i, w in enumerate(omegas):
        formula[i] = cooling_rate_large_detuning(w, gamma)
        cfg = ScenarioConfig(
            kind=ONE_QUBIT,
            omega=w,
            gamma=gamma,
            delta_lambda=delta_lambda,
            initial_state="lambda1",
        )
        fit[i] = rate_fit_for(cfg)
    return SweepTable(
        axes={"omega": omegas},
        columns={"rate_formula": formula, "rate_fit": fit},
        provenance={"rate_formula": "formula", "rate_fit": "simulation"},
    )
