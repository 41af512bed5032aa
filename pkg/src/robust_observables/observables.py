"""Pauli-parameterized observables, expectation values and invariance checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import channels as ch
from .linalg import hermitian_eigen, hermiticity_residual
from .paulis import PAULIS, TWO_QUBIT_PAULIS

IMAG_TOL = 1e-10


@dataclass(frozen=True)
class ObservableParams:
    """Real Pauli coefficients (c_I, c_X, c_Y, c_Z) for each qubit."""

    qubit0: tuple[float, float, float, float]
    qubit1: tuple[float, float, float, float]

    def __post_init__(self):
        for name in ("qubit0", "qubit1"):
            coeffs = tuple(float(c) for c in getattr(self, name))
            if len(coeffs) != 4:
                raise ValueError(f"{name} needs 4 coefficients, got {len(coeffs)}")
            if not all(np.isfinite(coeffs)):
                raise ValueError(f"{name} has non-finite coefficients")
            object.__setattr__(self, name, coeffs)

    @classmethod
    def from_vector(cls, theta) -> "ObservableParams":
        theta = np.asarray(theta, dtype=float).reshape(8)
        return cls(tuple(theta[:4]), tuple(theta[4:]))

    def as_vector(self) -> np.ndarray:
        return np.array(self.qubit0 + self.qubit1, dtype=float)


IDENTITY_PARAMS = ObservableParams((1, 0, 0, 0), (1, 0, 0, 0))


def single_qubit_operator(coeffs) -> np.ndarray:
    return sum(float(c) * s for c, s in zip(coeffs, PAULIS))


def build(params: ObservableParams) -> np.ndarray:
    return np.kron(single_qubit_operator(params.qubit0), single_qubit_operator(params.qubit1))


def expectation(o, rho) -> float:
    value = np.trace(np.asarray(o) @ np.asarray(rho))
    if abs(value.imag) >= IMAG_TOL:
        raise ValueError(f"expectation has imaginary part {value.imag:.3e}; inputs are not Hermitian")
    return float(value.real)


@dataclass(frozen=True)
class InvarianceReport:
    sum_residual: float
    per_kraus_residuals: tuple[float, ...]
    state_gap: float | None = None

    def to_dict(self) -> dict:
        return {
            "sum_residual": self.sum_residual,
            "per_kraus_residuals": list(self.per_kraus_residuals),
            "max_per_kraus_residual": max(self.per_kraus_residuals),
            "state_gap": self.state_gap,
        }


def heisenberg(k: ch.KrausSet, o) -> np.ndarray:
    """Adjoint channel action ``sum K^H O K``."""
    o = np.asarray(o)
    return sum(op.conj().T @ o @ op for op in k.operators)


def invariance_report(o, k: ch.KrausSet, rho=None, grid=None) -> InvarianceReport:
    """Fixed-point residual of ``o`` under ``k`` plus per-operator commutator norms.

    The per-operator figure is ``||K O - O K||_F``. If every Kraus operator
    commutes with ``o`` then ``sum K^H O K = sum K^H K O = O``, so a zero
    commutator list certifies invariance for every state. The summed residual
    can vanish while commutators do not.

    With ``rho`` and ``grid`` the report also carries the largest deviation of
    the expectation from its noiseless value across the grid rates.
    """
    o = np.asarray(o)
    sum_residual = float(np.linalg.norm(heisenberg(k, o) - o))
    per_kraus = tuple(float(np.linalg.norm(op @ o - o @ op)) for op in k.operators)
    gap = None
    if rho is not None and grid is not None:
        if k.channel is None:
            raise ValueError("state gap needs a named channel to rebuild Kraus sets per rate")
        ideal = expectation(o, rho)
        gap = max(abs(expectation(o, ch.apply(ch.kraus(k.channel, r), rho)) - ideal) for r in grid)
    return InvarianceReport(sum_residual, per_kraus, gap)


def state_invariance_condition_depolarizing(o, rho) -> float:
    """``|Tr(O rho) - Tr(O)/4|``; zero iff global depolarizing leaves <O> unchanged on rho."""
    o = np.asarray(o)
    return abs(expectation(o, rho) - np.trace(o).real / o.shape[0])


def pauli_coefficients(o) -> dict[str, float]:
    """Real coefficients ``Tr((s_a (x) s_b) O) / 4`` keyed by labels like ``"ZZ"``."""
    o = np.asarray(o)
    return {label: float(np.trace(P @ o).real) / 4 for label, P in TWO_QUBIT_PAULIS}


def from_pauli_coefficients(coeffs: dict[str, float]) -> np.ndarray:
    return sum(coeffs[label] * P for label, P in TWO_QUBIT_PAULIS)


def properties_report(o) -> dict:
    o = np.asarray(o, dtype=np.complex128)
    eig = hermitian_eigen(o)
    vals, vecs = eig.eigenvalues, eig.eigenvectors
    n = len(vals)
    overlaps = [
        abs(np.vdot(vecs[:, i], vecs[:, j]))
        for i in range(n)
        for j in range(i + 1, n)
    ]
    recon = vecs @ np.diag(vals) @ vecs.conj().T
    coeffs = pauli_coefficients(o)
    return {
        "hermiticity_residual": hermiticity_residual(o),
        "eigenvalues": vals.tolist(),
        "max_eigenvector_overlap": max(overlaps),
        "reconstruction_error": float(np.linalg.norm(o - recon)),
        "trace": float(np.trace(o).real),
        "eigenvalue_trace_gap": abs(float(vals.sum()) - float(np.trace(o).real)),
        "pauli_coefficients": coeffs,
        "pauli_roundtrip_error": float(np.linalg.norm(from_pauli_coefficients(coeffs) - o)),
    }
