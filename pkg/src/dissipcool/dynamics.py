"""Master equation machinery: reset operators, dissipator, Liouvillian, integrator.

The density matrix evolves as

    drho/dt = -i [H, rho] + sum_c gamma_c ( R_c rho R_c† - 1/2 {R_c† R_c, rho} )

with reset operators R = |g_j><e_k| embedded per atom.  The vectorized form
uses column stacking, vec(A rho B) = (B^T ⊗ A) vec(rho), so Liouvillian
matrices are bit-identical across runs.

Integration is fixed-step classic Runge-Kutta 4 on the master-equation
generator: the matrix-valued right hand side for time-dependent Hamiltonians,
or the equivalent precomputed superoperator when the Hamiltonian is constant
(same map, fewer per-stage operator sums).  Hermiticity is restored by
symmetrization after every step, the trace is renormalized only when drift
exceeds 1e-12 (drift beyond 1e-9 aborts) and every stored state is
re-validated against the density-matrix invariants; validation failure raises
StepTooLarge rather than silently repairing the state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, StepTooLarge
from .linalg import ComplexMatrix, DensityMatrix, require_hermitian
from .model import SystemSpec, _embed_single_atom

VEC_ORDER = "F"  # column stacking


def vec(rho: ComplexMatrix) -> np.ndarray:
    """Column-stack a matrix into a vector."""
    return np.asarray(rho, dtype=complex).reshape(-1, order=VEC_ORDER)


def unvec(v: np.ndarray) -> ComplexMatrix:
    """Inverse of :func:`vec`."""
    v = np.asarray(v, dtype=complex).ravel()
    d = math.isqrt(v.size)
    if d * d != v.size:
        raise DimensionMismatch(f"vector of length {v.size} is not a stacked square matrix")
    return v.reshape(d, d, order=VEC_ORDER)


@dataclass(frozen=True)
class ResetOperatorSet:
    """Jump operators with their rates, pre-stacked for fast evaluation."""

    operators: tuple  # of (matrix, rate) pairs
    _stack: np.ndarray = field(init=False, repr=False)
    _weighted: np.ndarray = field(init=False, repr=False)  # gamma_c * R_c
    _damping: np.ndarray = field(init=False, repr=False)  # sum_c gamma_c R_c† R_c

    def __post_init__(self):
        ops = tuple((np.asarray(m, dtype=complex), float(r)) for m, r in self.operators)
        if not ops:
            raise ValueError("need at least one reset operator")
        dim = ops[0][0].shape[0]
        for m, r in ops:
            if m.shape != (dim, dim):
                raise DimensionMismatch("all reset operators must share one square shape")
            if r < 0:
                raise ValueError("rates must be non-negative")
        stack = np.stack([m for m, _ in ops])
        rates = np.array([r for _, r in ops])
        weighted = rates[:, None, None] * stack
        damping = np.tensordot(weighted.conj().transpose(0, 2, 1), stack, axes=([0, 2], [0, 1]))
        object.__setattr__(self, "operators", ops)
        object.__setattr__(self, "_stack", stack)
        object.__setattr__(self, "_weighted", weighted)
        object.__setattr__(self, "_damping", damping)

    @property
    def dim(self) -> int:
        return self._stack.shape[1]

    def __len__(self) -> int:
        return len(self.operators)

    def project(self, isometry: ComplexMatrix) -> "ResetOperatorSet":
        """Compress every operator to a subspace: R -> P† R P for isometry P."""
        P = np.asarray(isometry, dtype=complex)
        if P.shape[0] != self.dim:
            raise DimensionMismatch(
                f"isometry rows {P.shape[0]} must match operator dim {self.dim}"
            )
        return ResetOperatorSet(
            tuple((P.conj().T @ m @ P, r) for m, r in self.operators)
        )


def reset_operators(spec: SystemSpec) -> ResetOperatorSet:
    """The 4N jump operators |g_j><e_k| per atom with rates from the decay spec."""
    ops = []
    for atom in range(spec.n_atoms):
        for j in range(2):
            for k in range(2):
                single = np.zeros((4, 4), dtype=complex)
                single[j, 2 + k] = 1.0
                ops.append(
                    (_embed_single_atom(single, atom, spec.n_atoms), spec.decay.gamma[j, k])
                )
    return ResetOperatorSet(tuple(ops))


def _as_matrix(rho) -> ComplexMatrix:
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return np.asarray(rho, dtype=complex)


def dissipator(rho, ops: ResetOperatorSet) -> ComplexMatrix:
    """Lindblad dissipator applied to a state; traceless and Hermitian for Hermitian input."""
    rho = _as_matrix(rho)
    if rho.shape != (ops.dim, ops.dim):
        raise DimensionMismatch(f"state shape {rho.shape} vs operator dim {ops.dim}")
    jumped = ops._weighted @ rho  # batched over channels
    sandwich = np.tensordot(jumped, ops._stack.conj(), axes=([0, 2], [0, 2]))
    return sandwich - 0.5 * (ops._damping @ rho + rho @ ops._damping)


def master_rhs(h: ComplexMatrix, rho, ops: ResetOperatorSet) -> ComplexMatrix:
    """Right-hand side -i[h, rho] + dissipator(rho)."""
    rho = _as_matrix(rho)
    h = np.asarray(h, dtype=complex)
    if h.shape != rho.shape:
        raise DimensionMismatch(f"hamiltonian shape {h.shape} vs state shape {rho.shape}")
    return -1j * (h @ rho - rho @ h) + dissipator(rho, ops)


@dataclass(frozen=True)
class Liouvillian:
    """Vectorized generator: vec(drho/dt) = matrix @ vec(rho)."""

    dim: int
    matrix: ComplexMatrix
    basis_note: str = "column-stacking (Fortran-order vec)"


def assemble_liouvillian(h: ComplexMatrix, ops: ResetOperatorSet) -> Liouvillian:
    """Build the d^2 x d^2 superoperator matrix for a time-independent Hamiltonian."""
    h = require_hermitian(h)
    d = h.shape[0]
    if d != ops.dim:
        raise DimensionMismatch(f"hamiltonian dim {d} vs operator dim {ops.dim}")
    eye = np.eye(d, dtype=complex)
    L = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for (R, rate) in ops.operators:
        RdR = R.conj().T @ R
        L += rate * (
            np.kron(R.conj(), R)
            - 0.5 * np.kron(eye, RdR)
            - 0.5 * np.kron(RdR.T, eye)
        )
    # trace preservation: vec(I)† L must vanish
    defect = float(np.max(np.abs(vec(eye).conj() @ L)))
    scale = max(1.0, float(np.max(np.abs(L))))
    if defect > 1e-10 * scale:
        raise RuntimeError(f"assembled Liouvillian is not trace-preserving: {defect:.3e}")
    return Liouvillian(dim=d, matrix=L)


@dataclass(frozen=True)
class Trajectory:
    """Time series of validated states with optional named observables."""

    times: np.ndarray
    states: tuple
    observables: dict | None = None

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "states", tuple(self.states))

    @property
    def final_state(self) -> DensityMatrix:
        return self.states[-1]

    def with_observable(self, name: str, values: np.ndarray) -> "Trajectory":
        obs = dict(self.observables or {})
        obs[name] = np.asarray(values, dtype=float)
        return Trajectory(self.times, self.states, obs)


def default_time_step(h0: ComplexMatrix, ops: ResetOperatorSet) -> float:
    """min(0.01 / max total decay rate, 0.1 / max |H| entry)."""
    rate = float(np.max(np.abs(np.diag(ops._damping).real))) if ops._damping.size else 0.0
    hmax = float(np.max(np.abs(h0)))
    candidates = []
    if rate > 0:
        candidates.append(0.01 / rate)
    if hmax > 0:
        candidates.append(0.1 / hmax)
    if not candidates:
        raise ValueError("cannot pick a default dt for a trivial generator; pass dt explicitly")
    return min(candidates)


def integrate(
    spec,
    h_of_t,
    rho0,
    t_max: float,
    dt: float | None = None,
    store_every: int | None = None,
) -> Trajectory:
    """Evolve a state under the master equation with fixed-step RK4.

    Args:
        spec: a :class:`SystemSpec` (reset operators are built from its decay
            rates) or a ready :class:`ResetOperatorSet` (e.g. one projected
            onto a truncated basis).
        h_of_t: Hamiltonian provider; a constant matrix or a callable
            ``t -> matrix``.  Multi-frequency drives pass
            ``lambda t: build_laser_hamiltonian(spec, t) + ...``.
        rho0: initial state (DensityMatrix or raw matrix; validated).
        t_max: final time.
        dt: time step; defaults to :func:`default_time_step`.
        store_every: store every n-th step (default keeps about 1000 states).

    Raises:
        StepTooLarge: when trace drift exceeds 1e-9 or a stored state violates
            the density-matrix invariants; reduce dt.
    """
    if isinstance(spec, ResetOperatorSet):
        ops = spec
    else:
        ops = reset_operators(spec)
    rho = DensityMatrix(_as_matrix(rho0)).matrix.copy()
    d = rho.shape[0]

    if t_max <= 0:
        raise ValueError("t_max must be positive")
    h0 = h_of_t(0.0) if callable(h_of_t) else np.asarray(h_of_t, dtype=complex)
    if dt is None:
        dt = default_time_step(h0, ops)
    if dt <= 0:
        raise ValueError("dt must be positive")
    n_steps = max(1, math.ceil(t_max / dt))
    dt = t_max / n_steps
    if store_every is None:
        store_every = max(1, n_steps // 1000)

    if callable(h_of_t):

        def rk4_step(state, t):
            k1 = master_rhs(h_of_t(t), state, ops)
            k2 = master_rhs(h_of_t(t + 0.5 * dt), state + 0.5 * dt * k1, ops)
            k3 = master_rhs(h_of_t(t + 0.5 * dt), state + 0.5 * dt * k2, ops)
            k4 = master_rhs(h_of_t(t + dt), state + dt * k3, ops)
            return state + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)

    else:
        # constant Hamiltonian: step on the (equivalent) vectorized generator,
        # which avoids per-stage operator sums on long runs
        L = assemble_liouvillian(h0, ops).matrix

        def rk4_step(state, t):
            v = state.reshape(-1, order=VEC_ORDER)
            k1 = L @ v
            k2 = L @ (v + (0.5 * dt) * k1)
            k3 = L @ (v + (0.5 * dt) * k2)
            k4 = L @ (v + dt * k3)
            v = v + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
            return v.reshape(d, d, order=VEC_ORDER)

    def validated(state, t):
        try:
            return DensityMatrix(state)
        except ValueError as exc:
            raise StepTooLarge(
                f"state invalid at t={t:.6g} ({exc}); reduce dt below {dt:.3e}"
            ) from exc

    times = [0.0]
    states = [validated(rho, 0.0)]
    t = 0.0
    for step in range(1, n_steps + 1):
        rho = rk4_step(rho, t)
        t = step * dt
        rho = 0.5 * (rho + rho.conj().T)
        tr = float(np.trace(rho).real)
        drift = abs(tr - 1.0)
        if not np.isfinite(tr) or drift > 1e-9:
            raise StepTooLarge(
                f"trace drift {drift:.3e} at t={t:.6g}; reduce dt below {dt:.3e}"
            )
        if drift > 1e-12:
            rho = rho / tr
        if step % store_every == 0 or step == n_steps:
            times.append(t)
            states.append(validated(rho, t))
    return Trajectory(np.array(times), tuple(states))
