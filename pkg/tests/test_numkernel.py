import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hermitian_eigenvalues, leibniz_det
from symnorm.counterexamples import example_Ny, example_T
from symnorm.errors import NonHermitianInput, NotPSD
from symnorm.numkernel import (
    adjoint,
    det,
    frob,
    herm_eig,
    is_psd,
    is_unitary,
    matrix_sqrt_psd,
    polar_right,
    svd,
)
from symnorm.sampling import crandn, random_hermitian, random_unitary

seeds = st.integers(0, 2**32 - 1)


class TestHermEig:
    def test_block_of_T(self):
        sd = herm_eig([[5, 1j], [-1j, 5]])
        np.testing.assert_allclose(sd.eigenvalues, [6, 4], atol=1e-14)

    def test_diagonal_is_left_alone(self):
        sd = herm_eig(np.diag([3.0, 1.0]))
        np.testing.assert_array_equal(sd.eigenvalues, [3, 1])
        np.testing.assert_array_equal(sd.eigenvectors, np.eye(2))

    def test_matches_charpoly_oracle_3x3(self, rng):
        for _ in range(20):
            h = random_hermitian(rng, 3)
            np.testing.assert_allclose(herm_eig(h).eigenvalues, hermitian_eigenvalues(h), atol=1e-10)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NonHermitianInput):
            herm_eig([[1, 2], [0, 1]])

    def test_no_silent_symmetrisation_beyond_tolerance(self):
        h = np.eye(3, dtype=complex)
        h[0, 1] = 1e-6
        with pytest.raises(NonHermitianInput):
            herm_eig(h)

    def test_descending_and_unitary(self, rng):
        sd = herm_eig(random_hermitian(rng, 7))
        assert np.all(np.diff(sd.eigenvalues) <= 0)
        assert is_unitary(sd.eigenvectors, 1e-12)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=st.integers(2, 12))
    def test_reconstruction(self, seed, n):
        h = random_hermitian(np.random.default_rng(seed), n) * 10.0 ** np.random.default_rng(seed).uniform(-3, 3)
        sd = herm_eig(h)
        assert frob(h - sd.reconstruct()) <= 1e-10 * max(1.0, frob(h))
        v = sd.eigenvectors
        assert frob(h @ v - v * sd.eigenvalues) <= 1e-10 * max(1.0, frob(h))

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, n=st.integers(2, 8))
    def test_spectrum_invariant_under_conjugation(self, seed, n):
        rng = np.random.default_rng(seed)
        h = random_hermitian(rng, n)
        u = random_unitary(rng, n)
        w1 = herm_eig(h).eigenvalues
        w2 = herm_eig(u @ h @ adjoint(u)).eigenvalues
        np.testing.assert_allclose(w1, w2, atol=1e-9)


class TestSVD:
    def test_antidiagonal(self):
        _, s, _ = svd([[0, 1j / 11], [1j, 0]])
        np.testing.assert_allclose(s, [1, 1 / 11], atol=1e-15)

    def test_zero(self):
        u, s, v = svd(np.zeros((3, 3)))
        np.testing.assert_array_equal(s, 0)
        assert is_unitary(u) and is_unitary(v)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, n=st.integers(1, 8))
    def test_hermitian_singular_values_are_abs_eigenvalues(self, seed, n):
        h = random_hermitian(np.random.default_rng(seed), n)
        s = svd(h)[1]
        np.testing.assert_allclose(s, np.sort(np.abs(herm_eig(h).eigenvalues))[::-1], atol=1e-12)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, m=st.integers(1, 7), k=st.integers(1, 7))
    def test_general_reconstruction(self, seed, m, k):
        x = crandn(np.random.default_rng(seed), m, k)
        u, s, v = svd(x)
        p = min(m, k)
        assert is_unitary(u) and is_unitary(v)
        assert np.all(s >= 0) and np.all(np.diff(s) <= 0)
        assert frob(x - (u[:, :p] * s) @ adjoint(v[:, :p])) <= 1e-10 * max(1.0, frob(x))
        np.testing.assert_allclose(s, np.linalg.svd(x, compute_uv=False), atol=1e-10)

    def test_rank_deficient(self, rng):
        g = crandn(rng, 5, 2)
        x = g @ adjoint(crandn(rng, 5, 2))
        u, s, v = svd(x)
        assert is_unitary(u) and is_unitary(v)
        assert frob(x - (u * s) @ adjoint(v)) <= 1e-12 * frob(x)
        assert s[2:].max() < 1e-12 * s[0]


class TestPolar:
    def test_antidiagonal(self):
        pf = polar_right([[0, 1j / 11], [1j, 0]])
        np.testing.assert_allclose(pf.unitary, [[0, 1j], [1j, 0]], atol=1e-15)
        np.testing.assert_allclose(pf.modulus, np.diag([1, 1 / 11]), atol=1e-15)
        # direct multiplication
        np.testing.assert_allclose(pf.unitary @ pf.modulus, [[0, 1j / 11], [1j, 0]], atol=1e-15)

    def test_psd_input(self, rng):
        g = crandn(rng, 4, 4)
        x = adjoint(g) @ g
        x = (x + adjoint(x)) / 2
        pf = polar_right(x)
        np.testing.assert_allclose(pf.unitary, np.eye(4), atol=1e-10)
        np.testing.assert_allclose(pf.modulus, x, atol=1e-10)

    def test_scalar_i(self):
        pf = polar_right(1j * np.eye(3))
        np.testing.assert_allclose(pf.unitary, 1j * np.eye(3), atol=1e-15)
        np.testing.assert_allclose(pf.modulus, np.eye(3), atol=1e-15)

    @settings(max_examples=40, deadline=None)
    @given(seed=seeds, n=st.integers(1, 8))
    def test_invertible(self, seed, n):
        x = crandn(np.random.default_rng(seed), n, n)
        pf = polar_right(x)
        assert frob(adjoint(pf.unitary) @ pf.unitary - np.eye(n)) <= 1e-10
        assert frob(pf.unitary @ pf.modulus - x) <= 1e-10 * max(1.0, frob(x))
        assert is_psd(pf.modulus)
        sq = pf.modulus @ pf.modulus
        assert frob(sq - adjoint(x) @ x) <= 1e-10 * max(1.0, frob(x) ** 2)

    def test_singular_completion(self, rng):
        x = np.zeros((3, 3), dtype=complex)
        x[:, 0] = crandn(rng, 3)
        pf = polar_right(x)
        assert is_unitary(pf.unitary)
        assert frob(pf.unitary @ pf.modulus - x) <= 1e-12


class TestPSD:
    def test_T(self):
        assert is_psd(example_T().full)

    def test_Ny_negative(self):
        chk = is_psd(example_Ny(-1).full)
        assert not chk
        assert chk.min_eigenvalue == pytest.approx(-1, abs=1e-12)

    def test_zero(self):
        assert is_psd(np.zeros((2, 2)))

    def test_sqrt_diag(self):
        np.testing.assert_allclose(matrix_sqrt_psd(np.diag([4.0, 9.0])), np.diag([2, 3]), atol=1e-15)
        np.testing.assert_allclose(matrix_sqrt_psd(np.eye(3)), np.eye(3), atol=1e-15)

    def test_sqrt_2x2(self):
        h = np.array([[2.0, 1.0], [1.0, 2.0]])
        r = matrix_sqrt_psd(h)
        assert frob(r @ r - h) <= 1e-10
        assert is_psd(r)
        # eigen-reconstructed root: eigenvalues 3, 1 on (1,1)/sqrt2, (1,-1)/sqrt2
        ref = (np.sqrt(3) * np.ones((2, 2)) + np.array([[1, -1], [-1, 1]])) / 2
        np.testing.assert_allclose(r, ref, atol=1e-14)

    def test_sqrt_rejects_indefinite(self):
        with pytest.raises(NotPSD):
            matrix_sqrt_psd(np.diag([1.0, -1.0]))


class TestDet:
    def test_trivial(self):
        assert det(np.eye(3)) == pytest.approx(1)
        assert det(np.diag([2.0, -1.0])) == pytest.approx(-2)
        assert det([[2, 3], [3, -1]]) == pytest.approx(-11)

    def test_against_leibniz(self, rng):
        for n in range(1, 6):
            m = crandn(rng, n, n)
            assert det(m) == pytest.approx(leibniz_det(m), rel=1e-10)

    @settings(max_examples=30, deadline=None)
    @given(seed=seeds, n=st.integers(1, 6))
    def test_unitary_conjugation(self, seed, n):
        rng = np.random.default_rng(seed)
        m = crandn(rng, n, n)
        u = random_unitary(rng, n)
        assert det(u @ m @ adjoint(u)) == pytest.approx(det(m), rel=1e-8)


class TestIsUnitary:
    def test_cases(self):
        assert is_unitary(np.eye(2))
        assert not is_unitary(np.diag([1.0, 2.0]))
        assert is_unitary(np.array([[1, -1], [1, 1]]) / np.sqrt(2))
