import numpy as np
import pytest

from dissipcool import (
    BadLabel,
    DecaySpec,
    DegenerateGround,
    LaserSpec,
    MultipleFrequencies,
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
    heisenberg_interaction,
    interaction_picture_hamiltonian,
    to_lambda_frame,
)
from dissipcool.linalg import hermiticity_defect
from dissipcool.model import excited_number_operator, ground_configuration_indices

from conftest import random_hermitian


def make_spec(n_atoms, interaction, lasers=(), omega_g=0.0, omega_e=10.0, gamma=1.0):
    return SystemSpec(
        n_atoms=n_atoms,
        omega_g=omega_g,
        omega_e=omega_e,
        interaction=interaction,
        decay=DecaySpec.symmetric(gamma),
        lasers=lasers,
    )


class TestAtomBasisIndex:
    def test_single_atom(self):
        assert atom_basis_index(["g0"]) == 0
        assert atom_basis_index(["e1"]) == 3

    def test_two_atoms(self):
        assert atom_basis_index(["g1", "e0"]) == 1 * 4 + 2

    def test_bad_label(self):
        with pytest.raises(BadLabel):
            atom_basis_index(["g2"])


class TestFreeHamiltonian:
    def test_one_atom(self):
        spec = make_spec(1, np.zeros((2, 2)), omega_g=0.0, omega_e=10.0)
        assert np.allclose(build_free_hamiltonian(spec), np.diag([0, 0, 10, 10]))

    def test_two_atoms_single_excitation(self):
        spec = make_spec(2, np.zeros((4, 4)), omega_g=0.0, omega_e=10.0)
        h = build_free_hamiltonian(spec)
        assert h[atom_basis_index(["e0", "g1"])].sum() == 10.0

    def test_two_atoms_double_excitation(self):
        spec = make_spec(2, np.zeros((4, 4)), omega_g=1.0, omega_e=10.0)
        h = build_free_hamiltonian(spec)
        idx = atom_basis_index(["e0", "e1"])
        assert h[idx, idx] == 20.0


class TestEmbedInteraction:
    def test_one_atom_diagonal(self):
        spec = make_spec(1, np.diag([-2.0, 3.0]))
        assert np.allclose(embed_interaction(spec), np.diag([-2, 3, 0, 0]))

    def test_zero_interaction(self):
        spec = make_spec(2, np.zeros((4, 4)))
        assert np.count_nonzero(embed_interaction(spec)) == 0

    def test_heisenberg_block_and_excited_rows(self):
        spec = make_spec(2, heisenberg_interaction(1.0))
        full = embed_interaction(spec)
        gidx = ground_configuration_indices(2)
        block = full[np.ix_(gidx, gidx)]
        assert np.allclose(np.linalg.eigvalsh(block), [-3, 1, 1, 1])
        excited = sorted(set(range(16)) - set(gidx))
        assert np.count_nonzero(full[excited, :]) == 0
        assert np.count_nonzero(full[:, excited]) == 0


class TestLambdaBasis:
    def test_one_qubit_partner_mirrors_ground_amplitudes(self, rng):
        # interaction with a non-trivial eigenbasis
        h = random_hermitian(rng, 2)
        h += np.diag([0.0, 5.0])  # ensure a clear gap
        spec = make_spec(1, h)
        basis = build_lambda_basis(spec)
        lam0 = basis.states[:, 0]
        lam2 = basis.states[:, 2]
        assert np.allclose(lam2[2:], lam0[:2])
        assert np.allclose(lam2[:2], 0)

    def test_two_qubit_singlet_partner(self):
        spec = make_spec(2, heisenberg_interaction(1.0))
        basis = build_lambda_basis(spec)
        T = collective_raising(2)
        expected = T @ basis.states[:, 0] / np.sqrt(2)
        assert np.allclose(basis.states[:, 4], expected)
        assert abs(np.linalg.norm(basis.states[:, 4]) - 1.0) < 1e-12

    def test_gram_identity(self, rng):
        h = random_hermitian(rng, 4)
        h += np.diag([-8.0, 0.0, 0.0, 0.0])
        spec = make_spec(2, h)
        basis = build_lambda_basis(spec)
        gram = basis.states.conj().T @ basis.states
        assert np.max(np.abs(gram - np.eye(8))) <= 1e-10

    def test_degenerate_ground_rejected(self):
        spec = make_spec(1, np.zeros((2, 2)))
        with pytest.raises(DegenerateGround):
            build_lambda_basis(spec)

    def test_eigenvalues_ascending(self):
        spec = make_spec(2, heisenberg_interaction(2.0))
        basis = build_lambda_basis(spec)
        assert np.allclose(basis.qubit_eigenvalues, [-6, 2, 2, 2])


class TestLaserHamiltonian:
    def test_lab_resonance_time_independent(self):
        laser = LaserSpec(rabi=0.8, detuning=10.0)  # omega_e - omega_g = 10
        spec = make_spec(1, np.diag([0.0, 1.0]), lasers=(laser,))
        h0 = build_laser_hamiltonian(spec, 0.0)
        h1 = build_laser_hamiltonian(spec, 7.3)
        assert np.allclose(h0, h1)
        assert abs(h0[2, 0] - 0.4) < 1e-12

    def test_zero_rabi(self):
        spec = make_spec(1, np.diag([0.0, 1.0]), lasers=(LaserSpec(0.0, 3.0),))
        assert np.count_nonzero(build_laser_hamiltonian(spec, 1.0)) == 0

    def test_t_zero_entries(self):
        spec = make_spec(1, np.diag([0.0, 1.0]), lasers=(LaserSpec(1.0, 3.0),))
        h = build_laser_hamiltonian(spec, 0.0)
        assert abs(h[2, 0] - 0.5) < 1e-12
        assert abs(h[3, 1] - 0.5) < 1e-12
        assert abs(h[0, 2] - 0.5) < 1e-12

    def test_hermitian_at_any_time(self, rng):
        spec = make_spec(
            2,
            heisenberg_interaction(1.0),
            lasers=(LaserSpec(1.0, 2.0), LaserSpec(0.5, -3.0)),
        )
        for t in rng.uniform(0, 20, size=8):
            assert hermiticity_defect(build_laser_hamiltonian(spec, t)) <= 1e-12


class TestDriveCoefficient:
    def test_single_laser_t0(self):
        spec = make_spec(2, heisenberg_interaction(1.0), lasers=(LaserSpec(1.0, 2.0),))
        assert abs(drive_coefficient(spec, 0.0) - np.sqrt(2) / 2) < 1e-12

    def test_opposite_phases_cancel(self):
        # detunings symmetric about omega_e - omega_g = 10 so the phases are
        # +/- pi/2 at t = (pi/2)/5
        lasers = (LaserSpec(1.0, 5.0), LaserSpec(1.0, 15.0))
        spec = make_spec(1, np.diag([0.0, 1.0]), lasers=lasers)
        t = (np.pi / 2) / 5.0
        assert abs(drive_coefficient(spec, t)) < 1e-12

    def test_two_atom_magnitude(self):
        spec = make_spec(2, heisenberg_interaction(1.0), lasers=(LaserSpec(0.2, 2.0),))
        for t in (0.0, 1.7, 9.1):
            assert abs(abs(drive_coefficient(spec, t)) - np.sqrt(2) * 0.1) < 1e-12


class TestInteractionPicture:
    def test_one_qubit_lambda_frame_matches_expected_form(self):
        delta = 10.0
        spec = make_spec(
            1, np.diag([0.0, delta]), lasers=(LaserSpec(1.0, delta),)
        )
        h = interaction_picture_hamiltonian(spec)
        basis = build_lambda_basis(spec)
        h_lambda = to_lambda_frame(basis, h) - delta * np.eye(4)
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = -delta
        expected[0, 2] = expected[2, 0] = 0.5
        expected[1, 3] = expected[3, 1] = 0.5
        assert np.max(np.abs(h_lambda - expected)) <= 1e-10

    def test_zero_rabi_diagonal_gap(self):
        delta = 10.0
        spec = make_spec(1, np.diag([0.0, delta]), lasers=(LaserSpec(0.0, delta),))
        h = interaction_picture_hamiltonian(spec)
        basis = build_lambda_basis(spec)
        h_lambda = to_lambda_frame(basis, h)
        off = h_lambda - np.diag(np.diag(h_lambda))
        assert np.max(np.abs(off)) <= 1e-12
        assert abs((h_lambda[0, 0] - h_lambda[1, 1]) - (-delta)) <= 1e-12

    def test_two_qubit_collective_coupling(self):
        j = 5.0
        spec = make_spec(
            2, heisenberg_interaction(j), lasers=(LaserSpec(0.2, j),)
        )
        h = interaction_picture_hamiltonian(spec)
        basis = build_lambda_basis(spec)
        h_lambda = to_lambda_frame(basis, h) - j * np.eye(8)
        for n in range(4):
            assert abs(h_lambda[n, n + 4] - np.sqrt(2) * 0.1) <= 1e-10
            expected_diag = basis.qubit_eigenvalues[n] - j
            assert abs(h_lambda[n, n] - expected_diag) <= 1e-10
            assert abs(h_lambda[n + 4, n + 4]) <= 1e-10

    def test_multiple_frequencies_rejected(self):
        spec = make_spec(
            1,
            np.diag([0.0, 1.0]),
            lasers=(LaserSpec(1.0, 2.0), LaserSpec(1.0, 3.0)),
        )
        with pytest.raises(MultipleFrequencies):
            interaction_picture_hamiltonian(spec)

    def test_same_frequency_rabi_amplitudes_add(self):
        spec = make_spec(
            1,
            np.diag([0.0, 2.0]),
            lasers=(LaserSpec(0.3, 2.0), LaserSpec(0.7, 2.0)),
        )
        h = interaction_picture_hamiltonian(spec)
        assert abs(h[2, 0] - 0.5) <= 1e-12

    def test_lambda_frame_dimension_mismatch(self):
        from dissipcool import DimensionMismatch

        spec = make_spec(1, np.diag([0.0, 1.0]))
        basis = build_lambda_basis(spec)
        with pytest.raises(DimensionMismatch):
            to_lambda_frame(basis, np.eye(8))

    def test_zero_rabi_commutes_with_ground_projector(self):
        spec = make_spec(1, np.diag([0.0, 4.0]), lasers=(LaserSpec(0.0, 4.0),))
        h = interaction_picture_hamiltonian(spec)
        proj = np.diag([1.0, 1.0, 0.0, 0.0]).astype(complex)
        assert np.max(np.abs(h @ proj - proj @ h)) <= 1e-12

    def test_hermitian(self):
        spec = make_spec(2, heisenberg_interaction(3.0), lasers=(LaserSpec(0.4, 3.0),))
        assert hermiticity_defect(interaction_picture_hamiltonian(spec)) <= 1e-12


class TestChooseDetunings:
    def test_one_qubit_resonant_with_upper_state(self):
        lam1 = 7.0
        spec = make_spec(1, np.diag([0.0, lam1]))
        basis = build_lambda_basis(spec)
        deltas = choose_detunings(basis, embed_interaction(spec))
        assert deltas.shape == (1,)
        assert abs(deltas[0] - lam1) <= 1e-12

    def test_heisenberg_triplet_collapses_to_one_value(self):
        j = 5.0
        spec = make_spec(2, heisenberg_interaction(j))
        basis = build_lambda_basis(spec)
        deltas = choose_detunings(basis, embed_interaction(spec))
        assert deltas.shape == (3,)
        assert np.allclose(deltas, j, atol=1e-10)

    def test_resonance_is_operational(self):
        # the chosen detuning zeroes the diagonal of every driven qubit state
        j = 5.0
        spec0 = make_spec(2, heisenberg_interaction(j))
        basis = build_lambda_basis(spec0)
        delta = choose_detunings(basis, embed_interaction(spec0))[0]
        spec = make_spec(2, heisenberg_interaction(j), lasers=(LaserSpec(0.3, delta),))
        h_lambda = to_lambda_frame(basis, interaction_picture_hamiltonian(spec))
        h_lambda -= delta * np.eye(8)
        for n in (1, 2, 3):
            assert abs(h_lambda[n, n]) <= 1e-10

    def test_degenerate_ground_rejected(self):
        spec = make_spec(2, heisenberg_interaction(-1.0))  # singlet on top
        with pytest.raises(DegenerateGround):
            build_lambda_basis(spec)


class TestCoolingMargin:
    def test_one_qubit(self):
        spec = make_spec(1, np.diag([0.0, 10.0]), lasers=(LaserSpec(1.0, 10.0),))
        basis = build_lambda_basis(spec)
        assert abs(cooling_condition_margin(basis, spec) - 10.0) <= 1e-12

    def test_two_qubit_heisenberg(self):
        j = 5.0
        spec = make_spec(2, heisenberg_interaction(j), lasers=(LaserSpec(0.2, j),))
        basis = build_lambda_basis(spec)
        assert abs(cooling_condition_margin(basis, spec) - 20.0) <= 1e-12

    def test_no_drive_uses_decay_scale(self):
        spec = make_spec(1, np.diag([0.0, 4.0]))
        basis = build_lambda_basis(spec)
        assert abs(cooling_condition_margin(basis, spec) - 4.0) <= 1e-12


class TestExcitedNumberOperator:
    def test_counts_excitations(self):
        op = excited_number_operator(2)
        assert op[atom_basis_index(["g0", "g1"]), atom_basis_index(["g0", "g1"])] == 0
        assert op[atom_basis_index(["e0", "g1"]), atom_basis_index(["e0", "g1"])] == 1
        assert op[atom_basis_index(["e0", "e1"]), atom_basis_index(["e0", "e1"])] == 2


class TestThreeAtomConstruction:
    def test_lambda_basis_and_detunings(self, rng):
        # construction scales beyond the simulated sizes: 4^3 = 64-dim space
        h = random_hermitian(rng, 8)
        h += np.diag([-10.0] + [0.0] * 7)  # clear, non-degenerate ground state
        spec = make_spec(3, h, lasers=(LaserSpec(0.1, 1.0),))
        basis = build_lambda_basis(spec)
        assert basis.states.shape == (64, 16)
        gram = basis.states.conj().T @ basis.states
        assert np.max(np.abs(gram - np.eye(16))) <= 1e-10
        deltas = choose_detunings(basis, embed_interaction(spec))
        assert deltas.shape == (7,)
        assert np.allclose(deltas, basis.qubit_eigenvalues[1:], atol=1e-10)
        assert cooling_condition_margin(basis, spec) > 0

    def test_drive_couples_each_state_to_its_partner(self, rng):
        h = random_hermitian(rng, 8)
        h += np.diag([-10.0] + [0.0] * 7)
        spec = make_spec(3, h, lasers=(LaserSpec(0.4, 2.0),))
        basis = build_lambda_basis(spec)
        hi = interaction_picture_hamiltonian(spec)
        block = to_lambda_frame(basis, hi)
        # collective coupling sqrt(3) * Omega / 2 between each state and its partner
        for n in range(8):
            assert abs(block[n, 8 + n] - np.sqrt(3) * 0.2) <= 1e-10
            for m in range(8):
                if m != n:
                    assert abs(block[n, 8 + m]) <= 1e-10


class TestSpecValidation:
    def test_requires_excited_above_ground(self):
        with pytest.raises(ValueError):
            make_spec(1, np.diag([0.0, 1.0]), omega_g=5.0, omega_e=1.0)

    def test_requires_hermitian_interaction(self):
        from dissipcool import NotHermitian

        with pytest.raises(NotHermitian):
            make_spec(1, np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_negative_rabi(self):
        with pytest.raises(ValueError):
            LaserSpec(rabi=-1.0, detuning=0.0)
