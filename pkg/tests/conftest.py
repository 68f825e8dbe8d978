import numpy as np
import pytest

from dissipcool import (
    ScenarioConfig,
    assemble_liouvillian,
    build_one_qubit_scenario,
    interaction_picture_hamiltonian,
    reset_operators,
)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def random_hermitian(rng, dim, scale=1.0):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return scale * 0.5 * (a + a.conj().T)


def random_density(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


def one_qubit_parts(omega, gamma, delta_lambda):
    """Spec, interaction-picture Hamiltonian and reset set of the one-qubit scenario."""
    cfg = ScenarioConfig(
        kind="one_qubit", omega=omega, gamma=gamma, delta_lambda=delta_lambda
    )
    scen = build_one_qubit_scenario(cfg)
    h = interaction_picture_hamiltonian(scen.spec)
    return scen, h, reset_operators(scen.spec)


def one_qubit_liouvillian(omega, gamma, delta_lambda):
    _, h, ops = one_qubit_parts(omega, gamma, delta_lambda)
    return assemble_liouvillian(h, ops)
