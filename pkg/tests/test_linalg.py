import numpy as np
import pytest

from dissipcool import (
    DensityMatrix,
    NotHermitian,
    dagger,
    hermitian_eigen,
    kron,
    smallest_singular_pairs,
)
from dissipcool.linalg import fix_phases

from conftest import one_qubit_liouvillian, random_hermitian

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


class TestKron:
    def test_identity(self):
        assert np.array_equal(kron(I2, I2), np.eye(4))

    def test_sigma_z_with_identity(self):
        assert np.allclose(kron(SZ, I2), np.diag([1, 1, -1, -1]))

    def test_heisenberg_spectrum_from_kron(self):
        # independent diagonalization of the explicit Pauli sum
        h = kron(SX, SX) + kron(SY, SY) + kron(SZ, SZ)
        assert np.allclose(np.linalg.eigvalsh(h), [-3, 1, 1, 1], atol=1e-12)

    def test_associative(self, rng):
        for _ in range(20):
            dims = rng.integers(1, 5, size=3)
            a, b, c = (
                rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)) for d in dims
            )
            assert np.allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-12)

    def test_bilinear(self, rng):
        for _ in range(20):
            da, dc = rng.integers(1, 5, size=2)
            a = rng.normal(size=(da, da)) + 1j * rng.normal(size=(da, da))
            b = rng.normal(size=(da, da)) + 1j * rng.normal(size=(da, da))
            c = rng.normal(size=(dc, dc)) + 1j * rng.normal(size=(dc, dc))
            x = complex(rng.normal(), rng.normal())
            assert np.allclose(
                kron(a + x * b, c), kron(a, c) + x * kron(b, c), atol=1e-12
            )
            assert np.allclose(
                kron(c, a + x * b), kron(c, a) + x * kron(c, b), atol=1e-12
            )


class TestDagger:
    def test_identity(self):
        assert np.array_equal(dagger(np.eye(3)), np.eye(3))

    def test_basis_flip(self):
        ket_e0_bra_g0 = np.zeros((4, 4), dtype=complex)
        ket_e0_bra_g0[2, 0] = 1.0
        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 2] = 1.0
        assert np.array_equal(dagger(ket_e0_bra_g0), expected)

    def test_i_sigma_y(self):
        # (i sigma_y)† = -i sigma_y: sigma_y is Hermitian and i conjugates
        assert np.allclose(dagger(1j * SY), -1j * SY)

    def test_involution(self, rng):
        a = rng.normal(size=(3, 5)) + 1j * rng.normal(size=(3, 5))
        assert np.array_equal(dagger(dagger(a)), a)


class TestHermitianEigen:
    def test_pauli_spectrum(self):
        w, _ = hermitian_eigen(SZ)
        assert np.allclose(w, [-1, 1])

    def test_heisenberg_spectrum(self):
        h = kron(SX, SX) + kron(SY, SY) + kron(SZ, SZ)
        w, _ = hermitian_eigen(h)
        assert np.allclose(w, [-3, 1, 1, 1], atol=1e-12)

    def test_heisenberg_ground_is_singlet(self):
        h = kron(SX, SX) + kron(SY, SY) + kron(SZ, SZ)
        _, v = hermitian_eigen(h)
        singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)
        assert abs(abs(singlet.conj() @ v[:, 0]) - 1.0) < 1e-12

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitian):
            hermitian_eigen(np.array([[0, 1], [0, 0]], dtype=complex))

    def test_reconstruction_and_orthonormality(self, rng):
        for dim in (2, 3, 8, 16):
            a = random_hermitian(rng, dim, scale=3.0)
            w, v = hermitian_eigen(a)
            rebuilt = v @ np.diag(w) @ v.conj().T
            norm = np.linalg.norm(a)
            assert np.linalg.norm(rebuilt - a) <= 1e-9 * max(norm, 1.0)
            assert np.max(np.abs(v.conj().T @ v - np.eye(dim))) <= 1e-10
            assert np.all(np.diff(w) >= -1e-12)
            residual = np.linalg.norm(a @ v - v * w, axis=0)
            assert np.all(residual <= 1e-9 * max(norm, 1.0))

    def test_phase_convention(self, rng):
        a = random_hermitian(rng, 5)
        _, v = hermitian_eigen(a)
        for k in range(5):
            pivot = v[np.argmax(np.abs(v[:, k])), k]
            assert pivot.real > 0 and abs(pivot.imag) < 1e-12

    def test_fix_phases_idempotent(self, rng):
        a = random_hermitian(rng, 6)
        _, v = hermitian_eigen(a)
        assert np.allclose(fix_phases(v), v)


class TestSmallestSingularPairs:
    def test_zero_matrix(self):
        sigma, v = smallest_singular_pairs(np.zeros((3, 3)), 1)[0]
        assert sigma == 0.0
        assert abs(np.linalg.norm(v) - 1) < 1e-12

    def test_diagonal(self):
        sigma, v = smallest_singular_pairs(np.diag([0.0, 5.0]), 1)[0]
        assert sigma == 0.0
        assert np.allclose(np.abs(v), [1, 0])

    def test_one_qubit_liouvillian_null_structure(self):
        L = one_qubit_liouvillian(1.0, 1.0, 10.0)
        pairs = smallest_singular_pairs(L.matrix, 2)
        assert pairs[0][0] <= 1e-10
        assert pairs[1][0] > 1e-3

    def test_residual_contract(self, rng):
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        for sigma, v in smallest_singular_pairs(a, 3):
            assert abs(np.linalg.norm(v) - 1) < 1e-12
            assert np.linalg.norm(a @ v) <= sigma + 1e-12


class TestDensityMatrix:
    def test_accepts_valid(self, rng):
        rho = DensityMatrix(np.diag([0.5, 0.25, 0.25]).astype(complex))
        assert rho.dim == 3

    def test_rejects_non_hermitian(self):
        m = np.array([[0.5, 0.1], [0.3, 0.5]], dtype=complex)
        with pytest.raises(ValueError):
            DensityMatrix(m)

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([0.6, 0.6]).astype(complex))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            DensityMatrix(np.diag([1.5, -0.5]).astype(complex))

    def test_pure_and_mixed_constructors(self):
        pure = DensityMatrix.pure(np.array([3.0, 4.0]))
        assert abs(pure.matrix[0, 0] - 0.36) < 1e-12
        mixed = DensityMatrix.maximally_mixed(4)
        assert np.allclose(mixed.matrix, np.eye(4) / 4)

    def test_expectation(self):
        rho = DensityMatrix(np.diag([0.75, 0.25]).astype(complex))
        sz = np.diag([1.0, -1.0])
        assert abs(rho.expectation(sz) - 0.5) < 1e-12
