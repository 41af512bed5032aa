"""Observable JSON files and CSV tables.

Coefficients are written with 17 significant digits so a file reloads to
the exact same floats. Everything else goes through the json module.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path

from .channels import Channel
from .learning import TrainResult
from .observables import ObservableParams
from .states import Circuit

OBSERVABLE_KEYS = ("circuit", "channel", "seed", "epochs", "learning_rate", "qubit_observables", "final_loss")


class SchemaError(ValueError):
    pass


@dataclass(frozen=True)
class LearnedObservable:
    circuit: Circuit
    channel: Channel
    seed: int
    epochs: int
    learning_rate: float
    params: ObservableParams
    final_loss: float
    loss_history: tuple[float, ...] | None = None

    @classmethod
    def from_result(cls, r: TrainResult) -> "LearnedObservable":
        c = r.config
        return cls(c.circuit, c.channel, c.seed, c.epochs, c.learning_rate, r.params,
                   r.final_loss, r.loss_history)


def _coeffs(values) -> str:
    return "[" + ", ".join(f"{v:.16e}" for v in values) + "]"


def observable_to_json(obs: LearnedObservable) -> str:
    lines = [
        "{",
        f'  "circuit": {json.dumps(obs.circuit.value)},',
        f'  "channel": {json.dumps(obs.channel.value)},',
        f'  "seed": {int(obs.seed)},',
        f'  "epochs": {int(obs.epochs)},',
        f'  "learning_rate": {json.dumps(float(obs.learning_rate))},',
        '  "qubit_observables": [',
        f'    {{"coeffs": {_coeffs(obs.params.qubit0)}}},',
        f'    {{"coeffs": {_coeffs(obs.params.qubit1)}}}',
        "  ],",
        f'  "final_loss": {json.dumps(float(obs.final_loss))}' + ("," if obs.loss_history is not None else ""),
    ]
    if obs.loss_history is not None:
        lines.append(f'  "loss_history": {json.dumps([float(x) for x in obs.loss_history])}')
    lines.append("}")
    return "\n".join(lines) + "\n"


def observable_from_dict(data: dict) -> LearnedObservable:
    missing = [k for k in OBSERVABLE_KEYS if k not in data]
    if missing:
        raise SchemaError(f"observable file is missing keys: {', '.join(missing)}")
    qubits = data["qubit_observables"]
    if not isinstance(qubits, list) or len(qubits) != 2:
        raise SchemaError("qubit_observables must list exactly two qubits")
    try:
        params = ObservableParams(tuple(qubits[0]["coeffs"]), tuple(qubits[1]["coeffs"]))
        history = data.get("loss_history")
        return LearnedObservable(
            Circuit(data["circuit"]), Channel(data["channel"]), int(data["seed"]),
            int(data["epochs"]), float(data["learning_rate"]), params, float(data["final_loss"]),
            tuple(float(x) for x in history) if history is not None else None,
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed observable file: {exc}") from exc


def read_observable(path) -> LearnedObservable:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    try:
        return observable_from_dict(data)
    except SchemaError as exc:
        raise SchemaError(f"{path}: {exc}") from exc


def write_observable(path, obs: LearnedObservable) -> None:
    Path(path).write_text(observable_to_json(obs))


def observable_filename(circuit: Circuit, channel: Channel) -> str:
    return f"{Circuit(circuit).value}__{Channel(channel).value}.json"


def write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
