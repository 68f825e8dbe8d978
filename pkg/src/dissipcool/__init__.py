"""Dissipative preparation of interaction-Hamiltonian ground states.

Laser-driven four-level atoms relax, via spontaneous emission, into the
ground state of an interaction Hamiltonian acting on their qubit manifold:
every other qubit eigenstate is driven resonantly to an excited partner while
the target is protected by a large detuning.  The package builds the
Hamiltonians, integrates the Lindblad master equation, extracts stationary
states from the vectorized Liouvillian's null space, and evaluates the
closed-form fidelity and cooling/heating rates for one driven qubit plus the
two-qubit Heisenberg (singlet-preparation) scenario.

Units: hbar = 1; energies and rates in units of the symmetric per-channel
decay rate Gamma, time in 1/Gamma.
"""

from .errors import (
    BadConfig,
    BadLabel,
    DegenerateGround,
    DegenerateSteadyState,
    DimensionMismatch,
    DissipcoolError,
    MultipleFrequencies,
    NonMonotone,
    NotConverged,
    NotHermitian,
    NumericalError,
    StepTooLarge,
    UsageError,
    ZeroRabi,
)
from .linalg import (
    ComplexMatrix,
    DensityMatrix,
    dagger,
    hermitian_eigen,
    kron,
    smallest_singular_pairs,
)
from .model import (
    DecaySpec,
    LambdaBasis,
    LaserSpec,
    SystemSpec,
    atom_basis_index,
    build_free_hamiltonian,
    build_lambda_basis,
    build_laser_hamiltonian,
    choose_detunings,
    collective_raising,
    cooling_condition_margin,
    drive_coefficient,
    embed_interaction,
    interaction_picture_hamiltonian,
    to_lambda_frame,
)
from .dynamics import (
    Liouvillian,
    ResetOperatorSet,
    Trajectory,
    assemble_liouvillian,
    dissipator,
    integrate,
    master_rhs,
    reset_operators,
    unvec,
    vec,
)
from .steady import (
    RateReport,
    SteadyResult,
    analytic_steady_one_qubit,
    cooling_rate_fit,
    cooling_rate_formula,
    cooling_rate_large_detuning,
    fidelity,
    fidelity_formula,
    heating_rate,
    rate_report,
    steady_state,
)
from .scenarios import (
    ScenarioConfig,
    SweepTable,
    build_one_qubit_scenario,
    build_two_qubit_scenario,
    fidelity_vs_time,
    heisenberg_interaction,
    steady_fidelity_numeric,
    sweep_fidelity_vs_detuning,
    sweep_rate_vs_omega,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
