"""Two-qubit circuit output states as density matrices.

Qubit 0 is the most significant bit of the basis index, so ``|01>`` is
index 1 and single-qubit gates combine as ``kron(gate_q0, gate_q1)``.
"""

from __future__ import annotations

import enum
from functools import lru_cache

import numpy as np

from .paulis import I2, X, Y, Z
from .rng import SplitMix64

NORM_TOL = 1e-10
RANDOM_CIRCUIT_SEED = 42


class Circuit(str, enum.Enum):
    BELL_PHI_PLUS = "bell_phi_plus"
    BELL_PHI_MINUS = "bell_phi_minus"
    BELL_PSI_PLUS = "bell_psi_plus"
    BELL_PSI_MINUS = "bell_psi_minus"
    QFT2 = "qft2"
    RANDOM_ENTANGLED = "random_entangled"


CIRCUITS = tuple(Circuit)

CNOT = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=np.complex128
)


def parse_circuit(name: str) -> Circuit:
    try:
        return Circuit(name)
    except ValueError:
        valid = ", ".join(c.value for c in CIRCUITS)
        raise ValueError(f"unknown circuit {name!r} (expected one of: {valid})") from None


def rx(theta: float) -> np.ndarray:
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * X


def ry(theta: float) -> np.ndarray:
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * Y


def rz(theta: float) -> np.ndarray:
    return np.cos(theta / 2) * I2 - 1j * np.sin(theta / 2) * Z


def qft_matrix(n: int = 4) -> np.ndarray:
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return np.exp(2j * np.pi * j * k / n) / np.sqrt(n)


def random_entangled_vector(seed: int) -> np.ndarray:
    """Two layers of Rx, Rz and CNOT(0 -> 1) on |00>, then a final Ry layer."""
    gen = SplitMix64(seed)
    psi = np.zeros(4, dtype=np.complex128)
    psi[0] = 1.0
    for _ in range(2):
        a1, a2, a3, a4 = (gen.angle() for _ in range(4))
        psi = np.kron(rx(a1), rx(a2)) @ psi
        psi = np.kron(rz(a3), rz(a4)) @ psi
        psi = CNOT @ psi
    a9, a10 = gen.angle(), gen.angle()
    return np.kron(ry(a9), ry(a10)) @ psi


def state_vector(circuit: Circuit, seed: int = RANDOM_CIRCUIT_SEED) -> np.ndarray:
    s = 1 / np.sqrt(2)
    circuit = Circuit(circuit)
    if circuit is Circuit.BELL_PHI_PLUS:
        return np.array([s, 0, 0, s], dtype=np.complex128)
    if circuit is Circuit.BELL_PHI_MINUS:
        return np.array([s, 0, 0, -s], dtype=np.complex128)
    if circuit is Circuit.BELL_PSI_PLUS:
        return np.array([0, s, s, 0], dtype=np.complex128)
    if circuit is Circuit.BELL_PSI_MINUS:
        return np.array([0, s, -s, 0], dtype=np.complex128)
    if circuit is Circuit.QFT2:
        return qft_matrix(4)[:, 0]
    return random_entangled_vector(seed)


def pure_to_density(amplitudes) -> np.ndarray:
    psi = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if psi.shape != (4,):
        raise ValueError(f"expected 4 amplitudes, got {psi.shape[0]}")
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"state vector is not normalized (norm {norm:.12g})")
    rho = np.outer(psi, psi.conj())
    rho.setflags(write=False)
    return rho


@lru_cache(maxsize=None)
def prepare(circuit: Circuit, seed: int = RANDOM_CIRCUIT_SEED) -> np.ndarray:
    """Density matrix of ``circuit`` applied to |00>.

    ``seed`` only affects the random entangled circuit. The returned array is
    read-only and shared between calls.
    """
    return pure_to_density(state_vector(Circuit(circuit), seed))


def check_density(rho, tol: float = 1e-12, psd_tol: float = 1e-10) -> None:
    """Raise ValueError unless ``rho`` is Hermitian, unit-trace and PSD."""
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        raise ValueError(f"density matrix must be 4x4, got {rho.shape}")
    herm = np.linalg.norm(rho - rho.conj().T)
    if herm >= tol:
        raise ValueError(f"density matrix is not Hermitian (residual {herm:.3e})")
    tr = np.trace(rho)
    if abs(tr - 1.0) >= tol:
        raise ValueError(f"density matrix trace is {tr}, expected 1")
    lam = np.linalg.eigvalsh((rho + rho.conj().T) / 2).min()
    if lam < -psd_tol:
        raise ValueError(f"density matrix has negative eigenvalue {lam:.3e}")


def partial_transpose(rho, qubit: int = 1) -> np.ndarray:
    t = np.asarray(rho).reshape(2, 2, 2, 2)
    if qubit == 0:
        t = t.transpose(2, 1, 0, 3)
    else:
        t = t.transpose(0, 3, 2, 1)
    return t.reshape(4, 4)


def random_density(rng: np.random.Generator, rank: int = 4) -> np.ndarray:
    """Random 4x4 density matrix from a Ginibre draw; for tests and sweeps."""
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real
