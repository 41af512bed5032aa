"""Toy depolarizing sweep, cross-evaluation of learned observables, std histogram."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import channels as ch
from .learning import NOISE_GRID, combinations, noisy_states
from .observables import ObservableParams, build, expectation
from .paulis import H, X, Z
from .states import Circuit, prepare

# hand-tuned two-qubit observable, printed to three decimals
O_OPTIMIZED = np.array(
    [
        [0.804, 0.086 + 0.138j, 0.739 + 0.050j, 0.070 + 0.132j],
        [0.086 - 0.138j, 0.302, 0.087 - 0.122j, 0.277 + 0.019j],
        [0.739 - 0.050j, 0.087 + 0.122j, 1.253, 0.133 + 0.215j],
        [0.070 - 0.132j, 0.277 - 0.019j, 0.133 - 0.215j, 0.470],
    ],
    dtype=np.complex128,
)
O_OPTIMIZED.setflags(write=False)

TOY_COLUMNS = ("p", "exp_zz", "exp_xx", "exp_hh", "exp_o_optimized")
CROSS_COLUMNS = (
    "observable_circuit", "observable_channel", "eval_circuit", "eval_channel",
    "mean", "std", "min", "max",
)
ZERO_STD = 1e-6


def toy_experiment(grid=NOISE_GRID) -> list[tuple[float, float, float, float, float]]:
    rho = prepare(Circuit.BELL_PHI_PLUS)
    observables = [np.kron(Z, Z), np.kron(X, X), np.kron(H, H), O_OPTIMIZED]
    rows = []
    for p in grid:
        noisy = ch.apply_depolarizing_closed_form(rho, p)
        rows.append((float(p), *(expectation(o, noisy) for o in observables)))
    return rows


@dataclass(frozen=True)
class CrossEvalReport:
    labels: tuple[tuple[Circuit, ch.Channel], ...]
    mean: np.ndarray  # [observable row, evaluation column]
    std: np.ndarray
    min: np.ndarray
    max: np.ndarray

    def rows(self):
        for i, (oc, ok) in enumerate(self.labels):
            for j, (ec, ek) in enumerate(self.labels):
                yield (oc.value, ok.value, ec.value, ek.value,
                       float(self.mean[i, j]), float(self.std[i, j]),
                       float(self.min[i, j]), float(self.max[i, j]))


def _pair_and_params(result) -> tuple[tuple[Circuit, ch.Channel], ObservableParams]:
    cfg = getattr(result, "config", result)
    return (Circuit(cfg.circuit), ch.Channel(cfg.channel)), result.params


def cell_stats(o, circuit: Circuit, channel: ch.Channel, grid=NOISE_GRID) -> tuple[float, float, float, float]:
    values = np.array([expectation(o, rho) for rho in noisy_states(circuit, channel, tuple(grid))])
    return float(values.mean()), float(values.std()), float(values.min()), float(values.max())


def cross_evaluate(results, grid=NOISE_GRID) -> CrossEvalReport:
    """Evaluate every learned observable on every circuit-channel pair.

    ``results`` must hold one entry per pair in canonical order; entries
    need ``params`` and either a ``config`` or ``circuit``/``channel``.
    Std is the population standard deviation over the grid.
    """
    pairs = combinations()
    results = list(results)
    if len(results) != len(pairs):
        raise ValueError(f"expected {len(pairs)} learned observables, got {len(results)}")
    observables = []
    for expected, r in zip(pairs, results):
        pair, params = _pair_and_params(r)
        if pair != expected:
            raise ValueError(
                f"observable order mismatch: expected {expected[0].value}/{expected[1].value}, "
                f"got {pair[0].value}/{pair[1].value}"
            )
        observables.append(build(params))

    n = len(pairs)
    stats = np.empty((4, n, n))
    for i, o in enumerate(observables):
        for j, (c, k) in enumerate(pairs):
            stats[:, i, j] = cell_stats(o, c, k, grid)
    return CrossEvalReport(tuple(pairs), *stats)


def stddev_histogram(report: CrossEvalReport, bin_width: float = 0.02) -> list[tuple[float, int]]:
    """Counts of cell stds: a dedicated zero bin, then uniform bins of ``bin_width``.

    The zero bin (std < 1e-6) is reported with lower edge 0. The first
    uniform bin therefore starts at the zero threshold instead of 0.
    """
    if not bin_width > 0:
        raise ValueError("bin width must be positive")
    stds = np.asarray(report.std).ravel()
    zero = stds < ZERO_STD
    rest = stds[~zero]
    bins = [(0.0, int(zero.sum()))]
    if rest.size:
        idx = np.floor(rest / bin_width).astype(int)
        counts = np.bincount(idx)
        for k, count in enumerate(counts):
            bins.append((max(k * bin_width, ZERO_STD), int(count)))
    return bins


def depolarizing_std_closed_form(o, rho, grid=NOISE_GRID) -> float:
    """Grid std of an expectation that is affine in p with slope ``Tr(O)/4 - Tr(O rho)``."""
    o = np.asarray(o)
    slope = np.trace(o).real / o.shape[0] - expectation(o, rho)
    return abs(slope) * float(np.std(grid))


def is_collinear(xs, ys, tol: float = 1e-10) -> bool:
    (x0, x1, x2), (y0, y1, y2) = xs, ys
    return math.isclose((y1 - y0) * (x2 - x0), (y2 - y0) * (x1 - x0), abs_tol=tol)
