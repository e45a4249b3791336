"""CSV / JSON result files and run manifests, written atomically."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

from . import __version__
from .analysis import OtocSweep

CSV_HEADER = "t,re_f,re_f_oracle,im_f_oracle,commutator_sq"


def _num(x: float) -> str:
    return format(float(x), ".17g")


def sweep_to_csv(sw: OtocSweep) -> str:
    rows = [CSV_HEADER]
    for p in sw.points:
        rows.append(",".join(_num(v) for v in (
            p.t, p.re_f_protocol, p.f_exact.real, p.f_exact.imag, p.commutator_sq)))
    return "\n".join(rows) + "\n"


def sweep_to_dict(sw: OtocSweep) -> dict:
    return {
        "provenance": sw.provenance.value,
        "config": sw.config,
        "columns": CSV_HEADER.split(","),
        # Im F comes from the dense oracle; the interferometer only measures Re F
        "notes": {"im_f_oracle": "oracle-only value, not measured by the X-basis protocol"},
        "points": [
            {"t": p.t, "re_f": p.re_f_protocol, "re_f_oracle": p.f_exact.real,
             "im_f_oracle": p.f_exact.imag, "commutator_sq": p.commutator_sq}
            for p in sw.points
        ],
    }


def noise_to_dict(model) -> dict | None:
    if model is None:
        return None
    return {
        "readout_error": list(model.readout_error),
        "gate_error_1q": list(model.gate_error_1q),
        "gate_error_2q": list(model.gate_error_2q),
        "rng_seed": model.rng_seed,
        "layout": list(model.layout) if model.layout is not None else None,
        "raw_gate_error": list(model.raw_gate_error) if model.raw_gate_error else None,
        "raw_readout_error": list(model.raw_readout_error) if model.raw_readout_error else None,
        "scales": dict(model.scales),
    }


def build_manifest(sw: OtocSweep, noise=None, seed: int | None = None, **extra) -> dict:
    out = {
        "tool": "rydotoc",
        "version": __version__,
        "provenance": sw.provenance.value,
        "config": sw.config,
        "noise": noise_to_dict(noise),
        "seed": seed,
    }
    out.update(extra)
    return out


def atomic_write(path: str | Path, text: str) -> None:
    """Write to a temporary sibling, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(sw: OtocSweep, path) -> None:
    atomic_write(path, sweep_to_csv(sw))


def write_json(obj: dict, path) -> None:
    atomic_write(path, json.dumps(obj, indent=2, sort_keys=True) + "\n")
