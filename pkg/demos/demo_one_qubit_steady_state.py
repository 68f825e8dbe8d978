"""One driven qubit: stationary state, closed form vs Liouvillian null space.

A single four-level atom carries one qubit in its ground states.  The
interaction eigenvalues are (0, delta_lambda); one laser is resonant with the
upper state's transition to its excited partner, so the target (ground) state
is the only detuned one.  The stationary state of the master equation then
has a closed form, reproduced here by the numerical null-space solve to
machine precision.
"""

import numpy as np

from dissipcool import (
    ScenarioConfig,
    analytic_steady_one_qubit,
    assemble_liouvillian,
    build_one_qubit_scenario,
    fidelity_formula,
    interaction_picture_hamiltonian,
    reset_operators,
    steady_state,
)

OMEGA, GAMMA, DELTA = 1.0, 1.0, 10.0

cfg = ScenarioConfig(kind="one_qubit", omega=OMEGA, gamma=GAMMA, delta_lambda=DELTA)
scen = build_one_qubit_scenario(cfg)
h = interaction_picture_hamiltonian(scen.spec)
result = steady_state(assemble_liouvillian(h, reset_operators(scen.spec)))

print(f"drive Omega = {OMEGA}, decay gamma = {GAMMA}, target detuning = {DELTA}")
print(f"null-space residual {result.residual:.2e}, uniqueness gap {result.gap_indicator:.2e}\n")

np.set_printoptions(precision=5, suppress=True)
print("numerical stationary state (basis: target, driven state, their partners):")
print(result.rho_ss.matrix, "\n")

closed = analytic_steady_one_qubit(OMEGA, GAMMA, DELTA)
dev = np.max(np.abs(result.rho_ss.matrix - closed.matrix))
print(f"max deviation from the closed form: {dev:.2e}")
print(f"target fidelity: numeric {result.rho_ss.matrix[0, 0].real:.6f}, "
      f"formula {fidelity_formula(OMEGA, GAMMA, DELTA):.6f}\n")

print("fidelity climbs with the target detuning (Omega = gamma = 1):")
for delta in (0.0, 2.0, 5.0, 10.0, 20.0, 50.0):
    print(f"  delta = {delta:5.1f}  ->  F = {fidelity_formula(OMEGA, GAMMA, delta):.6f}")
