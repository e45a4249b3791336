"""Key-value run configuration.

The file is INI-style text read with :mod:`configparser`::

    # comment
    [hamiltonian]           # optional header; leading keys default here
    n_spins = 2
    omega = 1.0
    v12 = 1.0
    interaction_form = zz   # zz | number

    [noise]
    preset = table1         # table1 | none
    readout_error = 0.07    # one value for every qubit, or a comma list
    gate_error_1q = 0.001
    gate_error_2q = 0.01
    seed = 0
    layout = 0, 1, 2        # circuit qubit k runs on physical qubit layout[k]

Explicit error keys override the preset entry by entry.
"""
from __future__ import annotations

import configparser
from dataclasses import replace
from pathlib import Path

import numpy as np

from .hamiltonian import HamiltonianSpec, InteractionForm
from .noise import NoiseModel, table1_noise_model

_HAM_KEYS = {"n_spins", "omega", "v12", "interaction_form"}
_NOISE_KEYS = {"preset", "readout_error", "gate_error_1q", "gate_error_2q", "seed", "layout"}


def _floats(text: str) -> tuple[float, ...]:
    return tuple(float(x) for x in text.replace(",", " ").split())


def parse_config(text: str) -> tuple[HamiltonianSpec, NoiseModel | None]:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    stripped = text.lstrip()
    if not stripped.startswith("["):
        text = "[hamiltonian]\n" + text
    cp.read_string(text)
    unknown = set(cp.sections()) - {"hamiltonian", "noise"}
    if unknown:
        raise ValueError(f"unknown config section(s): {sorted(unknown)}")

    ham = cp["hamiltonian"] if cp.has_section("hamiltonian") else {}
    bad = set(ham) - _HAM_KEYS
    if bad:
        raise ValueError(f"unknown hamiltonian key(s): {sorted(bad)}")
    n = int(ham.get("n_spins", 2))
    v12 = float(ham.get("v12", 1.0))
    v = np.zeros((n, n))
    if n >= 2:
        # one coupling strength for every pair
        v[:] = v12
        np.fill_diagonal(v, 0.0)
    spec = HamiltonianSpec(
        n_spins=n,
        omega=float(ham.get("omega", 1.0)),
        v_couplings=v,
        interaction_form=InteractionForm(ham.get("interaction_form", "zz").strip().lower()),
    )

    if not cp.has_section("noise"):
        return spec, None
    sec = cp["noise"]
    bad = set(sec) - _NOISE_KEYS
    if bad:
        raise ValueError(f"unknown noise key(s): {sorted(bad)}")
    preset = sec.get("preset", "table1").strip().lower()
    seed = int(sec.get("seed", 0))
    if preset == "table1":
        model = table1_noise_model(rng_seed=seed)
    elif preset == "none":
        model = NoiseModel.noiseless(rng_seed=seed)
    else:
        raise ValueError(f"unknown noise preset {preset!r}")
    changes = {}
    for key in ("readout_error", "gate_error_1q", "gate_error_2q"):
        if key in sec:
            vals = _floats(sec[key])
            if len(vals) == 1:
                vals = vals * model.n_physical
            if len(vals) != model.n_physical:
                raise ValueError(f"{key} needs 1 or {model.n_physical} values")
            changes[key] = vals
    if "layout" in sec:
        changes["layout"] = tuple(int(x) for x in _floats(sec["layout"]))
    if changes:
        model = replace(model, **changes)
    return spec, model


def load_config(path: str | Path) -> tuple[HamiltonianSpec, NoiseModel | None]:
    return parse_config(Path(path).read_text())
