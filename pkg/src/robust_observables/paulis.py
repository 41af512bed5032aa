"""Single-qubit constants and the two-qubit Pauli basis."""

from __future__ import annotations

import itertools

import numpy as np

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)
I4 = np.eye(4, dtype=np.complex128)

PAULI_LABELS = ("I", "X", "Y", "Z")
PAULIS = (I2, X, Y, Z)

# (label, sigma_a (x) sigma_b) with qubit 0 as the left factor
TWO_QUBIT_PAULIS = tuple(
    (la + lb, np.kron(a, b))
    for (la, a), (lb, b) in itertools.product(zip(PAULI_LABELS, PAULIS), repeat=2)
)

for _m in (I2, X, Y, Z, H, I4):
    _m.setflags(write=False)
