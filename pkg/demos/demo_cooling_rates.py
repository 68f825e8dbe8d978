"""Relaxation rates: closed form, trajectory fit, and the Liouvillian spectrum.

The trajectory fit extracts the exponential decay rate of the fidelity gap;
its independent oracle is the slowest decaying eigenvalue of the generator,
and the two agree to a few percent.  The closed-form estimate understates
both by a factor of about two (it mixes two rate conventions; see the
README), which this demo prints rather than hiding.
"""

import numpy as np

from dissipcool import (
    ScenarioConfig,
    assemble_liouvillian,
    build_one_qubit_scenario,
    cooling_rate_formula,
    cooling_rate_large_detuning,
    interaction_picture_hamiltonian,
    reset_operators,
)
from dissipcool.scenarios import rate_fit_for

GAMMA, DELTA = 1.0, 20.0

print(f"one-qubit scheme at gamma = {GAMMA}, target detuning = {DELTA}\n")
print(f"{'Omega':>6} | {'formula':>9} | {'traj fit':>9} | {'L gap':>9} | fit/formula")
print("-" * 58)
for omega in (0.25, 0.5, 1.0):
    cfg = ScenarioConfig(
        kind="one_qubit", omega=omega, gamma=GAMMA, delta_lambda=DELTA,
        initial_state="lambda1",
    )
    scen = build_one_qubit_scenario(cfg)
    L = assemble_liouvillian(
        interaction_picture_hamiltonian(scen.spec), reset_operators(scen.spec)
    ).matrix
    decays = np.sort(-np.linalg.eigvals(L).real)
    gap = decays[decays > 1e-12][0]
    fit = rate_fit_for(cfg)
    formula = cooling_rate_formula(omega, GAMMA, DELTA)
    print(f"{omega:6.2f} | {formula:9.5f} | {fit:9.5f} | {gap:9.5f} | {fit/formula:10.2f}")

print("\nlarge-detuning closed form saturates as the drive grows:")
for omega in (0.5, 1.0, 2.0, 5.0, 50.0):
    print(f"  Omega = {omega:5.1f}  ->  rate = {cooling_rate_large_detuning(omega, GAMMA):.5f}"
          f"   (asymptote 1/6 = {1 / 6:.5f})")
