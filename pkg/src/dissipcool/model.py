"""Physical system description and Hamiltonian builders.

Each of the N atoms carries four levels: qubit ground states ``g0``, ``g1``
(energy ``omega_g``) and auxiliary excited states ``e0``, ``e1`` (energy
``omega_e``).  The product basis orders levels per atom as (g0, g1, e0, e1)
with atom 1 most significant, so the full Hilbert space has dimension 4^N and
the qubit (all-ground) manifold dimension 2^N.

Units: hbar = 1.  Energies, Rabi frequencies and detunings are all expressed
in units of the symmetric per-channel decay rate (see ``DecaySpec``), time in
its inverse.

The drive on each atom couples g_j <-> e_j only.  A laser with detuning
``Delta`` (atomic transition frequency minus laser frequency) contributes

    (Omega/2) * exp(-i (omega_e - omega_g - Delta) t) |e_j><g_j| + h.c.

per atom in the rotating wave approximation.  For a single laser frequency the
frame rotating with ``H_free - Delta * N_excited`` removes the time dependence
and yields the interaction-picture Hamiltonian built by
:func:`interaction_picture_hamiltonian`; populations of free-Hamiltonian
eigenstates are identical in the two pictures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadLabel,
    DegenerateGround,
    DimensionMismatch,
    MultipleFrequencies,
)
from .linalg import ComplexMatrix, hermitian_eigen, require_hermitian

LEVELS = ("g0", "g1", "e0", "e1")

# Relative threshold below which two eigenvalues/detunings count as equal.
DEGENERACY_RTOL = 1e-9


@dataclass(frozen=True)
class LaserSpec:
    """One drive tone: Rabi frequency (>= 0) and detuning Delta = omega_e - omega_g - omega_laser."""

    rabi: float
    detuning: float

    def __post_init__(self):
        if not np.isfinite(self.rabi) or self.rabi < 0:
            raise ValueError(f"rabi must be finite and non-negative, got {self.rabi}")
        if not np.isfinite(self.detuning):
            raise ValueError(f"detuning must be finite, got {self.detuning}")


@dataclass(frozen=True)
class DecaySpec:
    """Spontaneous-emission rates gamma[j, k] for the transition e_k -> g_j.

    ``gamma_total(k)`` is the total decay rate of level e_k.  The symmetric
    model used throughout sets all four channels equal; its constructor takes
    the per-channel rate, which is exactly the Gamma appearing in the
    closed-form steady-state and rate expressions (each excited level then
    decays at total rate 2*Gamma).
    """

    gamma: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.gamma, dtype=float)
        if g.shape != (2, 2):
            raise DimensionMismatch(f"gamma must be 2x2, got {g.shape}")
        if np.any(g < 0) or not np.all(np.isfinite(g)):
            raise ValueError("decay rates must be finite and non-negative")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def symmetric(cls, gamma: float) -> "DecaySpec":
        """All four channels at rate ``gamma`` (the formula Gamma)."""
        return cls(np.full((2, 2), float(gamma)))

    def gamma_total(self, k: int) -> float:
        """Total decay rate of excited level e_k (sum over ground targets)."""
        return float(self.gamma[:, k].sum())

    @property
    def max_total(self) -> float:
        return max(self.gamma_total(0), self.gamma_total(1))

    @property
    def channel_scale(self) -> float:
        """Mean per-channel rate; the Gamma entering margin normalizations."""
        return float(self.gamma.mean())


@dataclass(frozen=True)
class SystemSpec:
    """Full physical description of the driven, dissipative qubit register."""

    n_atoms: int
    omega_g: float
    omega_e: float
    interaction: ComplexMatrix
    decay: DecaySpec
    lasers: tuple = ()

    def __post_init__(self):
        if self.n_atoms < 1:
            raise ValueError("n_atoms must be a positive integer")
        if not self.omega_e > self.omega_g:
            raise ValueError("omega_e must exceed omega_g")
        h = require_hermitian(self.interaction)
        dq = 2 ** self.n_atoms
        if h.shape != (dq, dq):
            raise DimensionMismatch(
                f"interaction must act on the {dq}-dimensional qubit manifold, got {h.shape}"
            )
        object.__setattr__(self, "interaction", h)
        object.__setattr__(self, "lasers", tuple(self.lasers))

    @property
    def dim_qubit(self) -> int:
        return 2 ** self.n_atoms

    @property
    def dim_full(self) -> int:
        return 4 ** self.n_atoms


@dataclass(frozen=True)
class LambdaBasis:
    """Interaction eigenstates plus their laser-coupled excited partners.

    ``states`` holds 2^(N+1) orthonormal columns in the full 4^N space:
    columns 0 .. 2^N-1 are the qubit-manifold eigenvectors of the interaction
    (eigenvalues ascending, index 0 = ground/target state) and columns
    2^N .. 2^(N+1)-1 the partner states obtained by applying the collective
    raising operator and normalizing by 1/sqrt(N).
    """

    dim_qubit: int
    qubit_eigenvalues: np.ndarray
    states: ComplexMatrix

    @property
    def qubit_states(self) -> ComplexMatrix:
        return self.states[:, : self.dim_qubit]

    @property
    def excited_partners(self) -> ComplexMatrix:
        return self.states[:, self.dim_qubit :]

    @property
    def ground_state(self) -> np.ndarray:
        return self.states[:, 0]


def atom_basis_index(configuration) -> int:
    """Product-basis index of a per-atom level configuration.

    Atom 1 is most significant; per-atom digit order is (g0, g1, e0, e1).
    """
    labels = list(configuration)
    if not labels:
        raise BadLabel("configuration must name at least one atom")
    index = 0
    for label in labels:
        try:
            digit = LEVELS.index(label)
        except ValueError:
            raise BadLabel(f"unknown level label {label!r}; expected one of {LEVELS}") from None
        index = 4 * index + digit
    return index


def _digits(index: int, n_atoms: int):
    """Per-atom level digits of a product-basis index, atom 1 first."""
    out = []
    for pos in range(n_atoms - 1, -1, -1):
        out.append((index // 4**pos) % 4)
    return out


def _embed_single_atom(op: ComplexMatrix, atom: int, n_atoms: int) -> ComplexMatrix:
    """Embed a 4x4 single-atom operator acting on ``atom`` (0-based) into 4^N."""
    mat = np.eye(1, dtype=complex)
    for i in range(n_atoms):
        factor = op if i == atom else np.eye(4, dtype=complex)
        mat = np.kron(mat, factor)
    return mat


def collective_raising(n_atoms: int) -> ComplexMatrix:
    """Sum over atoms and qubit levels of |e_j><g_j|, the operator the drive couples through."""
    T = np.zeros((4**n_atoms, 4**n_atoms), dtype=complex)
    for atom in range(n_atoms):
        for j in range(2):
            single = np.zeros((4, 4), dtype=complex)
            single[2 + j, j] = 1.0
            T += _embed_single_atom(single, atom, n_atoms)
    return T


def excited_number_operator(n_atoms: int) -> ComplexMatrix:
    """Diagonal operator counting atoms in an excited level."""
    dim = 4**n_atoms
    diag = np.zeros(dim)
    for idx in range(dim):
        diag[idx] = sum(1 for d in _digits(idx, n_atoms) if d >= 2)
    return np.diag(diag).astype(complex)


def ground_configuration_indices(n_atoms: int) -> np.ndarray:
    """Product-basis indices of the 2^N all-ground configurations, qubit order."""
    dq = 2**n_atoms
    idx = np.zeros(dq, dtype=int)
    for q in range(dq):
        full = 0
        for pos in range(n_atoms - 1, -1, -1):
            bit = (q >> pos) & 1
            full = 4 * full + bit
        idx[q] = full
    return idx


def build_free_hamiltonian(spec: SystemSpec) -> ComplexMatrix:
    """Diagonal free Hamiltonian: omega_g per ground atom, omega_e per excited atom."""
    dim = spec.dim_full
    diag = np.zeros(dim)
    for idx in range(dim):
        digits = _digits(idx, spec.n_atoms)
        diag[idx] = sum(spec.omega_e if d >= 2 else spec.omega_g for d in digits)
    return np.diag(diag).astype(complex)


def embed_interaction(spec: SystemSpec) -> ComplexMatrix:
    """Interaction Hamiltonian embedded in the full 4^N space.

    Equals the qubit-manifold interaction on all-ground configurations and
    zero on any configuration containing an excited atom.  This is the
    extension point for excited-sector couplings: a nonzero excited block
    would be added here should a concrete model ever supply one.
    """
    h = require_hermitian(spec.interaction)
    full = np.zeros((spec.dim_full, spec.dim_full), dtype=complex)
    gidx = ground_configuration_indices(spec.n_atoms)
    full[np.ix_(gidx, gidx)] = h
    return full


def build_lambda_basis(spec: SystemSpec) -> LambdaBasis:
    """Diagonalize the interaction and construct the excited partner states.

    Raises:
        DegenerateGround: if the lowest interaction eigenvalue is degenerate
            (the cooling target would be a mixed state).
    """
    w, v = hermitian_eigen(spec.interaction)
    scale = max(1.0, float(np.max(np.abs(w))))
    if spec.dim_qubit > 1 and (w[1] - w[0]) <= DEGENERACY_RTOL * scale:
        raise DegenerateGround(
            f"ground eigenvalue {w[0]:.6g} is degenerate with {w[1]:.6g}"
        )
    dim = spec.dim_full
    dq = spec.dim_qubit
    gidx = ground_configuration_indices(spec.n_atoms)
    states = np.zeros((dim, 2 * dq), dtype=complex)
    states[gidx, :dq] = v
    T = collective_raising(spec.n_atoms)
    states[:, dq:] = (T @ states[:, :dq]) / np.sqrt(spec.n_atoms)
    gram = states.conj().T @ states
    defect = float(np.max(np.abs(gram - np.eye(2 * dq))))
    if defect > 1e-10:
        raise RuntimeError(f"lambda-basis states not orthonormal: defect {defect:.3e}")
    return LambdaBasis(dim_qubit=dq, qubit_eigenvalues=w, states=states)


def build_laser_hamiltonian(spec: SystemSpec, t: float) -> ComplexMatrix:
    """Rotating-wave drive Hamiltonian at time ``t`` (pre-rotating-frame form).

    Sum over lasers k of (Omega_k/2) exp(-i (omega_e - omega_g - Delta_k) t)
    times the collective raising operator, plus the Hermitian conjugate.  The
    co-rotating phase sits on the raising operator with a *negative* exponent
    so that the frame generated by ``H_free - Delta * N_excited`` removes the
    time dependence of a single-frequency drive and yields exactly
    :func:`interaction_picture_hamiltonian`; with the opposite exponent no
    frame does (the phases add instead of cancelling), which is checked by the
    lab-frame/rotating-frame equivalence test.
    """
    coeff = 0j
    for laser in spec.lasers:
        phase = (spec.omega_e - spec.omega_g - laser.detuning) * t
        coeff += 0.5 * laser.rabi * np.exp(-1j * phase)
    T = collective_raising(spec.n_atoms)
    return coeff * T + np.conj(coeff) * T.conj().T


def drive_coefficient(spec: SystemSpec, t: float) -> complex:
    """Collective drive amplitude multiplying the raising operator.

    sum_k (sqrt(N) Omega_k / 2) exp(-i (omega_e - omega_g - Delta_k) t), in the
    same phase convention as :func:`build_laser_hamiltonian`.
    """
    chi = 0j
    root_n = np.sqrt(spec.n_atoms)
    for laser in spec.lasers:
        phase = (spec.omega_e - spec.omega_g - laser.detuning) * t
        chi += 0.5 * root_n * laser.rabi * np.exp(-1j * phase)
    return complex(chi)


def _single_detuning(spec: SystemSpec) -> float:
    detunings = [laser.detuning for laser in spec.lasers]
    if not detunings:
        return 0.0
    scale = max(1.0, max(abs(d) for d in detunings))
    first = detunings[0]
    for d in detunings[1:]:
        if abs(d - first) > DEGENERACY_RTOL * scale:
            raise MultipleFrequencies(
                f"interaction picture needs one laser frequency, got detunings {detunings}"
            )
    return first


def interaction_picture_hamiltonian(spec: SystemSpec) -> ComplexMatrix:
    """Time-independent Hamiltonian in the single-frequency rotating frame.

    (Omega_eff/2) (T + T†) + Delta * N_excited + embedded interaction, where
    Omega_eff sums the Rabi frequencies sharing the common detuning Delta.
    Multi-frequency drives have no such frame and must take the
    time-dependent integrator path via :func:`build_laser_hamiltonian`.

    Raises:
        MultipleFrequencies: if the lasers carry more than one distinct detuning.
    """
    delta = _single_detuning(spec)
    omega_eff = sum(laser.rabi for laser in spec.lasers)
    T = collective_raising(spec.n_atoms)
    h = 0.5 * omega_eff * (T + T.conj().T)
    h += delta * excited_number_operator(spec.n_atoms)
    h += embed_interaction(spec)
    return h


def choose_detunings(basis: LambdaBasis, interaction_full: ComplexMatrix) -> np.ndarray:
    """Laser detunings making each |lambda_k>, k >= 1, resonant with its partner.

    Resonance of the k-th transition in the rotating frame requires
    Delta_k = lambda_k - <lambda_{2^N+k}| H_int |lambda_{2^N+k}>, leaving the
    ground state |lambda_0> as the only off-resonant qubit state.  With the
    interaction annihilating excited configurations this reduces to
    Delta_k = lambda_k.
    """
    interaction_full = np.asarray(interaction_full, dtype=complex)
    dq = basis.dim_qubit
    w = basis.qubit_eigenvalues
    scale = max(1.0, float(np.max(np.abs(w))))
    if dq > 1 and (w[1] - w[0]) <= DEGENERACY_RTOL * scale:
        raise DegenerateGround("ground state degenerate; resonant detunings undefined")
    deltas = np.zeros(dq - 1)
    for k in range(1, dq):
        partner = basis.excited_partners[:, k]
        shift = float(np.real(partner.conj() @ interaction_full @ partner))
        deltas[k - 1] = w[k] - shift
    return deltas


def cooling_condition_margin(basis: LambdaBasis, spec: SystemSpec) -> float:
    """Smallest detuning of the target state relative to drive/decay scales.

    Computes min_k |E_{2^N} - E_0 - (E_{2^N+k} - E_k)| / max(sqrt(N)*Omega, Gamma)
    over k >= 1, with the level energies taken from the embedded interaction
    (the free-energy offsets cancel).  Values much larger than 1 put the
    system in the high-fidelity regime.
    """
    h_full = embed_interaction(spec)
    w = basis.qubit_eigenvalues
    dq = basis.dim_qubit
    shifts = np.array(
        [
            float(np.real(p.conj() @ h_full @ p))
            for p in basis.excited_partners.T
        ]
    )
    gaps = [
        abs((shifts[0] - w[0]) - (shifts[k] - w[k]))
        for k in range(1, dq)
    ]
    if not gaps:
        return float("inf")
    omega_max = max((laser.rabi for laser in spec.lasers), default=0.0)
    denom = max(np.sqrt(spec.n_atoms) * omega_max, spec.decay.channel_scale)
    if denom == 0:
        return float("inf")
    return float(min(gaps) / denom)


def to_lambda_frame(basis: LambdaBasis, operator: ComplexMatrix) -> ComplexMatrix:
    """Matrix elements of a full-space operator between the 2^(N+1) basis states."""
    operator = np.asarray(operator, dtype=complex)
    if operator.shape[0] != basis.states.shape[0]:
        raise DimensionMismatch(
            f"operator dim {operator.shape[0]} vs basis dim {basis.states.shape[0]}"
        )
    return basis.states.conj().T @ operator @ basis.states
