"""Command-line entry point: ``robust-observables <command> ...``.

Exit status is 0 on success, 1 for bad input (unknown names, missing or
malformed files) and 2 when a computation fails.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import analysis
from . import channels as ch
from .learning import (
    NOISE_GRID, GradientMode, TrainConfig, combinations, train, train_all,
)
from .observables import build, invariance_report, properties_report
from .serialize import (
    LearnedObservable, SchemaError, observable_filename, read_observable,
    write_csv, write_observable,
)
from .states import CIRCUITS, RANDOM_CIRCUIT_SEED, parse_circuit, prepare

log = logging.getLogger(__name__)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _out_dir(path) -> Path:
    out = Path(path)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_toy(args) -> None:
    out = _out_dir(args.out)
    write_csv(out / "toy.csv", analysis.TOY_COLUMNS, analysis.toy_experiment())
    log.info("wrote %s", out / "toy.csv")


def cmd_train(args) -> None:
    circuit, channel = parse_circuit(args.circuit), ch.parse_channel(args.channel)
    config = TrainConfig(circuit, channel, args.seed, args.epochs, args.lr, GradientMode(args.grad_mode))
    result = train(config)
    out = _out_dir(args.out)
    path = out / observable_filename(circuit, channel)
    write_observable(path, LearnedObservable.from_result(result))
    log.info("wrote %s (final loss %.3e)", path, result.final_loss)


def manifest(master_seed: int, args, results) -> dict:
    return {
        "master_seed": master_seed,
        "epochs": args.epochs,
        "learning_rate": args.lr,
        "gradient_mode": args.grad_mode,
        "noise_grid": "rates[i] = i/25 for i = 0..24",
        "target": "noiseless expectation of Z(x)Z on the circuit output state",
        "channel_extension": "depolarizing acts globally on d=4; other channels act on both qubits at the same rate",
        "pair_seed_derivation": "splitmix64(master_seed XOR pair_index), first output",
        "random_circuit_seed": RANDOM_CIRCUIT_SEED,
        "circuits": [c.value for c in CIRCUITS],
        "channels": [k.value for k in ch.CHANNELS],
        "files": [
            {"file": observable_filename(r.config.circuit, r.config.channel), "seed": r.config.seed}
            for r in results
        ],
    }


def cmd_train_all(args) -> None:
    results = train_all(args.seed, args.epochs, args.lr, GradientMode(args.grad_mode), args.workers)
    out = _out_dir(args.out)
    for r in results:
        write_observable(out / observable_filename(r.config.circuit, r.config.channel),
                         LearnedObservable.from_result(r))
    (out / "manifest.json").write_text(_dump(manifest(args.seed, args, results)))
    log.info("wrote %d observables to %s", len(results), out)


def load_observable_dir(path) -> list[LearnedObservable]:
    path = Path(path)
    if not path.is_dir():
        raise UsageError(f"input directory {path} does not exist")
    found = sorted(p for p in path.glob("*.json") if p.name != "manifest.json")
    expected = len(combinations())
    if len(found) != expected:
        raise UsageError(f"expected {expected} observable files in {path}, found {len(found)}")
    loaded = []
    for circuit, channel in combinations():
        f = path / observable_filename(circuit, channel)
        if not f.exists():
            raise UsageError(f"missing observable file {f}")
        obs = read_observable(f)
        if (obs.circuit, obs.channel) != (circuit, channel):
            raise UsageError(f"{f} holds {obs.circuit.value}/{obs.channel.value}")
        loaded.append(obs)
    return loaded


def cmd_cross_eval(args) -> None:
    observables = load_observable_dir(args.in_dir)
    report = analysis.cross_evaluate(observables)
    hist = analysis.stddev_histogram(report, args.bin_width)
    out = _out_dir(args.out)
    write_csv(out / "crosseval.csv", analysis.CROSS_COLUMNS, report.rows())
    write_csv(out / "histogram.csv", ("bin_lower", "count"), hist)
    summary = {
        "std_min": float(report.std.min()),
        "std_max": float(report.std.max()),
        "zero_std_threshold": analysis.ZERO_STD,
        "zero_std_cells": hist[0][1],
        "bin_width": args.bin_width,
        "seeds": {observable_filename(o.circuit, o.channel): o.seed for o in observables},
    }
    (out / "crosseval_summary.json").write_text(_dump(summary))


def cmd_check(args) -> None:
    obs = read_observable(args.observable)
    circuit, channel = parse_circuit(args.circuit), ch.parse_channel(args.channel)
    o = build(obs.params)
    report = invariance_report(o, ch.kraus(channel, args.rate), prepare(circuit), NOISE_GRID)
    payload = {"circuit": circuit.value, "channel": channel.value, "rate": args.rate, **report.to_dict()}
    text = _dump(payload)
    sys.stdout.write(text)
    if args.out:
        (_out_dir(args.out) / "check.json").write_text(text)


def cmd_props(args) -> None:
    obs = read_observable(args.observable)
    text = _dump(properties_report(build(obs.params)))
    sys.stdout.write(text)
    if args.out:
        (_out_dir(args.out) / "props.json").write_text(text)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robust-observables", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    circuits = [c.value for c in CIRCUITS]
    channels = [k.value for k in ch.CHANNELS]
    modes = [m.value for m in GradientMode]

    def training_flags(p, with_seed=True):
        p.add_argument("--epochs", type=int, default=300)
        p.add_argument("--lr", type=float, default=0.1)
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--grad-mode", choices=modes, default=GradientMode.SHIFT_RULE.value)

    p = sub.add_parser("toy", help="depolarized Bell state sweep (toy.csv)")
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_toy)

    p = sub.add_parser("train", help="learn one observable")
    p.add_argument("--circuit", required=True, choices=circuits)
    p.add_argument("--channel", required=True, choices=channels)
    training_flags(p)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("train-all", help="learn all 30 circuit-channel observables")
    training_flags(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", default=".")
    p.set_defaults(func=cmd_train_all)

    p = sub.add_parser("cross-eval", help="evaluate 30 learned observables on every pair")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--out", default=".")
    p.add_argument("--bin-width", type=float, default=0.02)
    p.set_defaults(func=cmd_cross_eval)

    p = sub.add_parser("check", help="invariance residuals of an observable file")
    p.add_argument("--observable", required=True)
    p.add_argument("--circuit", required=True, choices=circuits)
    p.add_argument("--channel", required=True, choices=channels)
    p.add_argument("--rate", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("props", help="spectral and Pauli properties of an observable file")
    p.add_argument("--observable", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_props)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    if getattr(args, "rate", None) is not None and not 0 <= args.rate < 1:
        print(f"error: --rate must lie in [0, 1), got {args.rate}", file=sys.stderr)
        return 1
    if getattr(args, "epochs", 1) < 1 or getattr(args, "lr", 1.0) <= 0:
        print("error: --epochs must be >= 1 and --lr positive", file=sys.stderr)
        return 1
    try:
        args.func(args)
    except (UsageError, SchemaError, FileNotFoundError, IsADirectoryError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # computation failures
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
