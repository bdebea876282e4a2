"""Sanity checks on the reference oracles themselves."""

import numpy as np

from oracles import eig2x2, hermitian_eigenvalues, leibniz_det


def test_charpoly_roots_on_known_spectrum():
    assert np.allclose(hermitian_eigenvalues([[5, 1j], [-1j, 5]]), [6, 4], atol=1e-14)
    assert np.allclose(hermitian_eigenvalues(np.diag([3.0, -1.0, 2.0])), [3, 2, -1], atol=1e-14)


def test_charpoly_roots_repeated():
    assert np.allclose(hermitian_eigenvalues(np.eye(3)), [1, 1, 1], atol=1e-12)
    assert np.allclose(hermitian_eigenvalues(np.diag([0.0, 0.0, 2.0])), [2, 0, 0], atol=1e-12)
    # double root at zero with a simple root in between critical points
    n0 = [[2, 0, 0, 2], [0, 0, 0, 0], [0, 0, 1, 0], [2, 0, 0, 2]]
    assert np.allclose(hermitian_eigenvalues(n0), [4, 1, 0, 0], atol=1e-12)


def test_leibniz():
    assert leibniz_det([[2, 3], [3, -1]]) == -11
    assert leibniz_det(np.eye(4)) == 1


def test_eig2x2():
    assert eig2x2(5, 1j, 5) == (6, 4)

