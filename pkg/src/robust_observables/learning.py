"""Gradient-descent learning of noise-robust two-qubit observables."""

from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import channels as ch
from .observables import IMAG_TOL, ObservableParams, build, expectation
from .paulis import PAULIS, Z
from .rng import SplitMix64, derive_seed
from .states import CIRCUITS, Circuit, prepare

GRID_SIZE = 25
NOISE_GRID: tuple[float, ...] = tuple(i / GRID_SIZE for i in range(GRID_SIZE))
TARGET_OBSERVABLE = np.kron(Z, Z)
FD_STEP = 1e-6


class GradientMode(str, enum.Enum):
    ANALYTIC = "analytic"
    FINITE_DIFFERENCE = "finite_difference"
    SHIFT_RULE = "shift_rule"


class TrainingError(RuntimeError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    circuit: Circuit
    channel: ch.Channel
    seed: int = 42
    epochs: int = 300
    learning_rate: float = 0.1
    gradient_mode: GradientMode = GradientMode.SHIFT_RULE

    def __post_init__(self):
        object.__setattr__(self, "circuit", Circuit(self.circuit))
        object.__setattr__(self, "channel", ch.Channel(self.channel))
        object.__setattr__(self, "gradient_mode", GradientMode(self.gradient_mode))
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if not self.learning_rate > 0:
            raise ValueError(f"learning rate must be positive, got {self.learning_rate}")


@dataclass(frozen=True)
class TrainResult:
    config: TrainConfig
    params: ObservableParams
    loss_history: tuple[float, ...]
    target: float
    initial_params: ObservableParams = field(repr=False, default=None)

    @property
    def final_loss(self) -> float:
        return self.loss_history[-1]


def target_expectation(circuit: Circuit) -> float:
    """Noiseless <Z (x) Z> on the circuit's output state."""
    return expectation(TARGET_OBSERVABLE, prepare(Circuit(circuit)))


@lru_cache(maxsize=None)
def noisy_states(circuit: Circuit, channel: ch.Channel, grid: tuple[float, ...] = NOISE_GRID) -> np.ndarray:
    rho = prepare(Circuit(circuit))
    states = np.stack([ch.apply(ch.kraus(channel, r), rho) for r in grid])
    states.setflags(write=False)
    return states


@lru_cache(maxsize=None)
def pauli_moments(circuit: Circuit, channel: ch.Channel, grid: tuple[float, ...] = NOISE_GRID) -> np.ndarray:
    """Real tensor ``M[i, a, b] = Tr((s_a (x) s_b) rho_i)`` over the grid.

    The expectation of ``O1 (x) O2`` at rate i is ``c0 @ M[i] @ c1``.
    """
    states = noisy_states(circuit, channel, grid)
    m = np.empty((len(grid), 4, 4))
    for a, sa in enumerate(PAULIS):
        for b, sb in enumerate(PAULIS):
            m[:, a, b] = np.einsum("ij,nji->n", np.kron(sa, sb), states).real
    m.setflags(write=False)
    return m


def _theta(params) -> np.ndarray:
    if isinstance(params, ObservableParams):
        return params.as_vector()
    return np.asarray(params, dtype=float).reshape(8)


def loss(params, circuit: Circuit, channel: ch.Channel, grid: tuple[float, ...] = NOISE_GRID) -> float:
    """Mean squared gap between noisy expectations and the noiseless Z(x)Z target."""
    if not isinstance(params, ObservableParams):
        params = ObservableParams.from_vector(params)
    o = build(params)
    y = target_expectation(circuit)
    states = noisy_states(Circuit(circuit), ch.Channel(channel), tuple(grid))
    values = np.einsum("ij,nji->n", o, states)
    if np.max(np.abs(values.imag)) >= IMAG_TOL:
        raise ValueError("noisy expectation has a non-negligible imaginary part")
    return float(np.mean((values.real - y) ** 2))


def _loss_fast(theta: np.ndarray, moments: np.ndarray, y: float) -> float:
    e = np.einsum("a,nab,b->n", theta[:4], moments, theta[4:])
    return float(np.mean((e - y) ** 2))


def grad_analytic(params, circuit: Circuit, channel: ch.Channel, grid: tuple[float, ...] = NOISE_GRID) -> np.ndarray:
    theta = _theta(params)
    moments = pauli_moments(Circuit(circuit), ch.Channel(channel), tuple(grid))
    return _grad_fast(theta, moments, target_expectation(circuit))


def _grad_fast(theta: np.ndarray, moments: np.ndarray, y: float) -> np.ndarray:
    c0, c1 = theta[:4], theta[4:]
    # d<O>/dc0 = M c1 and d<O>/dc1 = M^T c0 by bilinearity
    d0 = moments @ c1
    d1 = np.einsum("a,nab->nb", c0, moments)
    resid = d0 @ c0 - y
    n = len(moments)
    return np.concatenate([2 * resid @ d0 / n, 2 * resid @ d1 / n])


def _secant_fast(theta: np.ndarray, moments: np.ndarray, y: float, h: float, scale: float) -> np.ndarray:
    g = np.empty(8)
    for k in range(8):
        step = np.zeros(8)
        step[k] = h
        g[k] = (_loss_fast(theta + step, moments, y) - _loss_fast(theta - step, moments, y)) * scale
    return g


def grad_finite_difference(params, circuit, channel, grid=NOISE_GRID, h: float = FD_STEP) -> np.ndarray:
    if not h > 0:
        raise ValueError("step h must be positive")
    theta = _theta(params)
    g = np.empty(8)
    for k in range(8):
        step = np.zeros(8)
        step[k] = h
        g[k] = (loss(theta + step, circuit, channel, grid) - loss(theta - step, circuit, channel, grid)) / (2 * h)
    return g


def grad_shift_rule(params, circuit, channel, grid=NOISE_GRID) -> np.ndarray:
    """Per-coordinate ``(C(theta + pi/2 e_k) - C(theta - pi/2 e_k)) / 2``.

    The loss is quadratic along each coordinate here, so this equals
    ``pi/2`` times the exact gradient rather than the gradient itself.
    """
    theta = _theta(params)
    g = np.empty(8)
    for k in range(8):
        step = np.zeros(8)
        step[k] = math.pi / 2
        g[k] = 0.5 * (loss(theta + step, circuit, channel, grid) - loss(theta - step, circuit, channel, grid))
    return g


def initial_params(seed: int) -> ObservableParams:
    gen = SplitMix64(seed)
    return ObservableParams.from_vector([gen.symmetric() for _ in range(8)])


def train(config: TrainConfig, grid: tuple[float, ...] = NOISE_GRID) -> TrainResult:
    grid = tuple(grid)
    circuit, channel = config.circuit, config.channel
    y = target_expectation(circuit)
    moments = pauli_moments(circuit, channel, grid)
    start = initial_params(config.seed)
    theta = start.as_vector()

    # same formulas as the public gradient functions, evaluated on the moment tensor
    if config.gradient_mode is GradientMode.ANALYTIC:
        gradient = lambda t: _grad_fast(t, moments, y)  # noqa: E731
    elif config.gradient_mode is GradientMode.FINITE_DIFFERENCE:
        gradient = lambda t: _secant_fast(t, moments, y, FD_STEP, 1 / (2 * FD_STEP))  # noqa: E731
    else:
        gradient = lambda t: _secant_fast(t, moments, y, math.pi / 2, 0.5)  # noqa: E731

    history = []
    for epoch in range(config.epochs + 1):
        value = _loss_fast(theta, moments, y)
        if not math.isfinite(value):
            raise TrainingError(f"non-finite loss at epoch {epoch}")
        history.append(value)
        if epoch == config.epochs:
            break
        g = gradient(theta)
        if not np.all(np.isfinite(g)):
            raise TrainingError(f"non-finite gradient at epoch {epoch}")
        theta = theta - config.learning_rate * g

    return TrainResult(config, ObservableParams.from_vector(theta), tuple(history), y, start)


def combinations() -> list[tuple[Circuit, ch.Channel]]:
    """The 30 (circuit, channel) pairs, circuits outer and channels inner."""
    return [(c, k) for c in CIRCUITS for k in ch.CHANNELS]


def train_all(seed: int = 42, epochs: int = 300, learning_rate: float = 0.1,
              gradient_mode: GradientMode = GradientMode.SHIFT_RULE, workers: int = 1) -> list[TrainResult]:
    configs = [
        TrainConfig(c, k, derive_seed(seed, i), epochs, learning_rate, gradient_mode)
        for i, (c, k) in enumerate(combinations())
    ]

    def run(cfg: TrainConfig) -> TrainResult:
        try:
            return train(cfg)
        except TrainingError as exc:
            raise TrainingError(f"{cfg.circuit.value}/{cfg.channel.value}: {exc}") from exc

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, configs))
    return [run(cfg) for cfg in configs]
