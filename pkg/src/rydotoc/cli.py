"""Command-line sweep runner.

    python -m rydotoc --initial bell --mode trotter --steps 200 --out sweep.csv

Writes the sweep as CSV (stdout when ``--out`` is absent), optionally JSON,
and a ``<out>.manifest.json`` beside the CSV. ``--emit-qasm t=1.0 FILE``
also dumps the lowered protocol circuit at that time.
Exit status: 0 on success, 1 on a runtime failure, 2 on bad flags.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analysis import Provenance, sweep
from .circuit import lower_to_basis
from .config import load_config
from .hamiltonian import HamiltonianSpec, InteractionForm
from .io import atomic_write, build_manifest, sweep_to_csv, sweep_to_dict, write_json
from .noise import table1_noise_model
from .protocol import EvolutionMode, ProtocolConfig, full_protocol_circuit
from .qasm import emit_qasm

DEFAULT_STEPS = 100


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return v


def _time_spec(text: str) -> float:
    if not text.startswith("t="):
        raise argparse.ArgumentTypeError(f"expected t=R, got {text!r}")
    try:
        v = float(text[2:])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad time in {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("time must be non-negative")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rydotoc", description="OTOC sweep runner")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--initial", choices=["product", "bell"], default="product")
    p.add_argument("--mode", choices=[m.value for m in Provenance], default="oracle")
    p.add_argument("--steps", type=_positive_int, default=None,
                   help=f"Trotter steps (default {DEFAULT_STEPS}); in noisy mode, "
                        "giving it switches the evolution to Trotter circuits")
    p.add_argument("--t-max", type=_positive_float, default=8.0)
    p.add_argument("--points", type=int, default=81)
    p.add_argument("--shots", type=_positive_int, default=8192)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--config", type=Path)
    p.add_argument("--out", type=Path)
    p.add_argument("--json", type=Path)
    p.add_argument("--emit-qasm", nargs=2, metavar=("t=R", "FILE"))
    p.add_argument("--interaction", choices=[f.value for f in InteractionForm], default=None)
    p.add_argument("--workers", type=_positive_int, default=None)
    return p


def _run(args) -> int:
    spec, noise = load_config(args.config) if args.config else (HamiltonianSpec(), None)
    if args.interaction is not None:
        spec = replace(spec, interaction_form=InteractionForm(args.interaction))
    provenance = Provenance(args.mode)

    steps = args.steps or DEFAULT_STEPS
    trotter = provenance is Provenance.PROTOCOL_TROTTER or (
        provenance is Provenance.PROTOCOL_NOISY and args.steps is not None)
    cfg = ProtocolConfig(
        hamiltonian=spec,
        evolution_mode=EvolutionMode.TROTTER if trotter else EvolutionMode.EXACT_ORACLE,
        trotter_steps=steps,
        initial_state=args.initial,
    )
    if provenance is Provenance.PROTOCOL_NOISY and noise is None:
        noise = table1_noise_model(rng_seed=args.seed)

    if args.emit_qasm:
        t = _time_spec(args.emit_qasm[0])
        path = Path(args.emit_qasm[1])
        atomic_write(path, emit_qasm(lower_to_basis(full_protocol_circuit(cfg.at(t)))))

    sw = sweep(cfg, args.t_max, args.points, provenance, noise=noise, shots=args.shots,
               seed=args.seed, workers=args.workers)
    csv = sweep_to_csv(sw)
    manifest = build_manifest(
        sw, noise if provenance is Provenance.PROTOCOL_NOISY else None, seed=args.seed,
        grid={"t_max": args.t_max, "points": args.points},
    )
    if args.out:
        atomic_write(args.out, csv)
        write_json(manifest, args.out.with_name(args.out.name + ".manifest.json"))
    else:
        sys.stdout.write(csv)
    if args.json:
        doc = sweep_to_dict(sw)
        doc["manifest"] = manifest
        write_json(doc, args.json)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.points < 2:
        parser.error("--points must be >= 2")
    if args.emit_qasm:
        try:
            _time_spec(args.emit_qasm[0])
        except argparse.ArgumentTypeError as exc:
            parser.error(f"--emit-qasm: {exc}")
    try:
        return _run(args)
    except (ValueError, OSError, ArithmeticError, NotImplementedError) as exc:
        print(f"rydotoc: error: {exc}", file=sys.stderr)
        return 1
