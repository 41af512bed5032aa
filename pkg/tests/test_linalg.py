import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from robust_observables import linalg as la
from robust_observables.paulis import H, I2, I4, X, Z

from helpers import random_hermitian


finite = st.floats(-10, 10, allow_nan=False)
complex2 = arrays(np.complex128, (2, 2), elements=st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False))


def test_matmul_examples():
    np.testing.assert_array_equal(la.matmul(I2, X), X)
    np.testing.assert_array_equal(la.matmul(X, X), I2)
    np.testing.assert_array_equal(la.matmul(Z, X), [[0, 1], [-1, 0]])


def test_matmul_dimension_mismatch():
    with pytest.raises(la.DimensionError):
        la.matmul(I2, I4)
    with pytest.raises(la.DimensionError):
        la.frobenius_distance(I2, I4)


def test_kron_examples():
    np.testing.assert_array_equal(la.kron(I2, I2), I4)
    np.testing.assert_array_equal(la.kron(Z, Z), np.diag([1, -1, -1, 1]))
    expected = np.zeros((4, 4))
    expected[:2, 2:] = np.eye(2)
    expected[2:, :2] = np.eye(2)
    np.testing.assert_array_equal(la.kron(X, I2), expected)


def test_trace_adjoint_distance():
    assert la.trace(I4) == 4
    bell = np.zeros((4, 4))
    bell[np.ix_([0, 3], [0, 3])] = 0.5
    assert la.trace(bell) == pytest.approx(1)
    assert la.frobenius_distance(Z, Z) == 0
    a = np.array([[1, 2j], [3, 4 - 1j]])
    np.testing.assert_array_equal(la.adjoint(a), [[1, 3], [-2j, 4 + 1j]])


def test_as_matrix_rejects_bad_input():
    with pytest.raises(la.DimensionError):
        la.as_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        la.as_matrix([[np.nan, 0], [0, 1]])


@pytest.mark.parametrize(
    "matrix, expected",
    [
        (Z, [-1, 1]),
        (H, [-1, 1]),  # characteristic polynomial l^2 - 1
        (np.kron(Z, Z), [-1, -1, 1, 1]),
    ],
)
def test_eigen_examples(matrix, expected):
    eig = la.hermitian_eigen(matrix)
    np.testing.assert_allclose(eig.eigenvalues, expected, atol=1e-12)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(la.NotHermitianError):
        la.hermitian_eigen(np.array([[0, 1], [0, 0]]))


def test_eigen_random_against_numpy(rng):
    for n in (2, 4):
        for _ in range(100):
            a = random_hermitian(rng, n, scale=3.0)
            eig = la.hermitian_eigen(a)
            v, lam = eig.eigenvectors, eig.eigenvalues
            np.testing.assert_allclose(lam, np.linalg.eigvalsh(a), atol=1e-10)
            assert np.all(np.diff(lam) >= 0)
            np.testing.assert_allclose(np.linalg.norm(v, axis=0), 1, atol=1e-10)
            for k in range(n):
                assert np.linalg.norm(a @ v[:, k] - lam[k] * v[:, k]) < 1e-8
            assert np.linalg.norm(a - v @ np.diag(lam) @ v.conj().T) < 1e-8
            assert abs(lam.sum() - np.trace(a).real) < 1e-8
            gram = v.conj().T @ v
            assert np.abs(gram - np.eye(n)).max() < 1e-8


def test_eigen_degenerate_spectrum():
    eig = la.hermitian_eigen(np.kron(Z, I2) + 2 * I4)
    np.testing.assert_allclose(eig.eigenvalues, [1, 1, 3, 3], atol=1e-12)
    np.testing.assert_allclose(eig.eigenvectors.conj().T @ eig.eigenvectors, I4, atol=1e-12)


def test_eigen_already_diagonal_needs_no_sweep():
    eig = la.hermitian_eigen(np.diag([3.0, -1.0, 2.0, 0.0]))
    np.testing.assert_array_equal(eig.eigenvalues, [-1, 0, 2, 3])


@settings(max_examples=50, deadline=None)
@given(complex2, complex2, complex2)
def test_kron_associative(a, b, c):
    left = la.kron(la.kron(a, b), c)
    right = la.kron(a, la.kron(b, c))
    assert np.abs(left - right).max() <= 1e-14 * max(1.0, np.abs(left).max())


@settings(max_examples=50, deadline=None)
@given(complex2, complex2)
def test_trace_cyclic(a, b):
    scale = max(1.0, np.abs(a).max() * np.abs(b).max())
    assert abs(la.trace(la.matmul(a, b)) - la.trace(la.matmul(b, a))) < 1e-12 * scale
