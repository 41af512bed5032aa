"""Dense complex kernel for the 2x2 and 4x4 matrices used everywhere else.

Matrices are plain complex128 numpy arrays. Products and Kronecker products
delegate to numpy; the Hermitian eigensolver is a cyclic Jacobi iteration.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


class DimensionError(ValueError):
    pass


class NotHermitianError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    pass


def as_matrix(a) -> np.ndarray:
    """Validate and copy ``a`` into a square complex128 array with finite entries."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    m.setflags(write=False)
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")


def matmul(a, b) -> np.ndarray:
    a, b = np.asarray(a), np.asarray(b)
    _same_dim(a, b)
    return a @ b


def kron(a, b) -> np.ndarray:
    return np.kron(a, b)


def adjoint(a) -> np.ndarray:
    return np.asarray(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(a))


def frobenius_distance(a, b) -> float:
    a, b = np.asarray(a), np.asarray(b)
    _same_dim(a, b)
    return float(np.linalg.norm(a - b))


def hermiticity_residual(a) -> float:
    a = np.asarray(a)
    return float(np.linalg.norm(a - a.conj().T))


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # column k pairs with eigenvalues[k]


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """Unitary 2x2 J with J^H [[app, apq], [conj(apq), aqq]] J diagonal."""
    mag = abs(apq)
    phase = apq / mag
    theta = (aqq - app) / (2.0 * mag)
    t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    # diag(1, conj(phase)) makes the block real symmetric, then a real Givens rotation
    return np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigen(a) -> EigenDecomposition:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius mass drops below
    ``JACOBI_TOL * max(1, ||a||_F)``. A 2x2 input needs a single rotation.
    """
    a = as_matrix(a)
    if hermiticity_residual(a) >= HERMITIAN_TOL:
        raise NotHermitianError(f"matrix is not Hermitian (residual {hermiticity_residual(a):.3e})")
    n = a.shape[0]
    work = (a + a.conj().T) / 2.0
    vecs = np.eye(n, dtype=np.complex128)
    tol = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _off_norm(work) >= tol:
        if sweeps == JACOBI_MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi did not converge in {JACOBI_MAX_SWEEPS} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                if abs(apq) == 0.0:
                    continue
                j = _rotation(work[p, p].real, work[q, q].real, apq)
                idx = [p, q]
                work[:, idx] = work[:, idx] @ j
                work[idx, :] = j.conj().T @ work[idx, :]
                work[p, q] = work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real
                vecs[:, idx] = vecs[:, idx] @ j
        sweeps += 1

    values = np.diag(work).real.copy()
    order = np.argsort(values, kind="stable")
    vecs = vecs[:, order]
    vecs /= np.linalg.norm(vecs, axis=0)
    return EigenDecomposition(values[order], vecs)
