"""The five noise channels as Kraus sets on the two-qubit space.

Depolarizing acts globally on the 4-dimensional space. The other four are
single-qubit channels applied to both qubits at the same rate, so their
two-qubit operators are all products ``K_i (x) K_j``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .paulis import I2, I4, TWO_QUBIT_PAULIS, X, Z


class Channel(str, enum.Enum):
    DEPOLARIZING = "depolarizing"
    AMPLITUDE_DAMPING = "amplitude_damping"
    PHASE_DAMPING = "phase_damping"
    PHASE_FLIP = "phase_flip"
    BIT_FLIP = "bit_flip"


CHANNELS = tuple(Channel)


def parse_channel(name: str) -> Channel:
    try:
        return Channel(name)
    except ValueError:
        valid = ", ".join(c.value for c in CHANNELS)
        raise ValueError(f"unknown channel {name!r} (expected one of: {valid})") from None


@dataclass(frozen=True)
class KrausSet:
    channel: Channel | None  # None for hand-built sets
    rate: float
    operators: tuple[np.ndarray, ...]


def _check_rate(rate: float) -> float:
    rate = float(rate)
    if not 0.0 <= rate < 1.0:
        raise ValueError(f"noise rate must lie in [0, 1), got {rate}")
    return rate


def single_qubit_kraus(channel: Channel, rate: float) -> list[np.ndarray]:
    """2x2 Kraus pair of a single-qubit channel; accepts the closed range [0, 1]."""
    channel = Channel(channel)
    if not 0.0 <= rate <= 1.0:
        raise ValueError(f"rate must lie in [0, 1], got {rate}")
    if channel is Channel.AMPLITUDE_DAMPING:
        e0 = np.array([[1, 0], [0, np.sqrt(1 - rate)]], dtype=np.complex128)
        e1 = np.array([[0, np.sqrt(rate)], [0, 0]], dtype=np.complex128)
        return [e0, e1]
    if channel is Channel.PHASE_DAMPING:
        e0 = np.array([[1, 0], [0, np.sqrt(1 - rate)]], dtype=np.complex128)
        e1 = np.array([[0, 0], [0, np.sqrt(rate)]], dtype=np.complex128)
        return [e0, e1]
    if channel is Channel.PHASE_FLIP:
        return [np.sqrt(1 - rate) * I2, np.sqrt(rate) * Z]
    if channel is Channel.BIT_FLIP:
        return [np.sqrt(1 - rate) * I2, np.sqrt(rate) * X]
    raise ValueError("depolarizing is defined on the joint space, not per qubit")


def both_qubits(ops: list[np.ndarray]) -> tuple[np.ndarray, ...]:
    return tuple(np.kron(a, b) for a, b in itertools.product(ops, repeat=2))


def _depolarizing_ops(p: float) -> tuple[np.ndarray, ...]:
    ops = [np.sqrt(1 - 15 * p / 16) * I4]
    ops += [np.sqrt(p / 16) * P for label, P in TWO_QUBIT_PAULIS if label != "II"]
    return tuple(ops)


@lru_cache(maxsize=1024)
def kraus(channel: Channel, rate: float) -> KrausSet:
    channel = Channel(channel)
    rate = _check_rate(rate)
    if channel is Channel.DEPOLARIZING:
        ops = _depolarizing_ops(rate)
    else:
        ops = both_qubits(single_qubit_kraus(channel, rate))
    for op in ops:
        op.setflags(write=False)
    return KrausSet(channel, rate, ops)


def apply(k: KrausSet, rho) -> np.ndarray:
    rho = np.asarray(rho)
    out = np.zeros_like(rho, dtype=np.complex128)
    for op in k.operators:
        out += op @ rho @ op.conj().T
    return out


def apply_depolarizing_closed_form(rho, p: float) -> np.ndarray:
    p = _check_rate(p)
    rho = np.asarray(rho, dtype=np.complex128)
    d = rho.shape[0]
    return (1 - p) * rho + p * np.eye(d) / d


def validate_cptp(k: KrausSet) -> float:
    """Frobenius norm of ``sum K^H K - I``."""
    ops = k.operators
    d = ops[0].shape[0]
    total = sum(op.conj().T @ op for op in ops)
    return float(np.linalg.norm(total - np.eye(d)))
