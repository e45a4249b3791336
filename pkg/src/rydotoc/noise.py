"""Shot sampling, readout flips and stochastic depolarizing noise.

Noisy runs use quantum trajectories: every trajectory is a pure state that
receives, after each gate, a uniformly random Pauli on the gate's qubits
with the gate's depolarizing probability (the identity is one of the
``4^k`` choices, so probability 1 gives the fully mixed channel). Each
trajectory yields one X-basis shot of the control, which is then passed
through a classical readout flip.

The device table below holds the raw per-qubit calibration numbers of the
5-qubit ``ibmqx4`` chip. Gate and readout errors are printed without a unit,
so the probabilities are derived by explicit scale factors: single-qubit
gate error ``GE * 1e-3``, two-qubit gate error ``GE * 1e-2`` and readout
error ``RE * 1e-2``. T1/T2 are kept for reference only.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import gates
from .circuit import DIRECTIVE_KINDS, Circuit, circuit_unitary, lower_to_basis
from .hamiltonian import product_operator
from .protocol import ProtocolConfig, full_protocol_circuit
from .statevector import StateVector, apply_1q, embed_operator

# qubit: (frequency GHz, T1 us, T2 us, gate error, readout error)
IBMQX4_TABLE = {
    0: (5.24, 48.80, 14.70, 0.86, 7.00),
    1: (5.31, 49.60, 55.00, 1.29, 5.80),
    2: (5.35, 48.00, 32.60, 1.20, 8.60),
    3: (5.41, 35.60, 23.60, 3.78, 3.70),
    4: (5.19, 55.20, 31.90, 1.03, 5.80),
}

GATE_1Q_SCALE = 1e-3
GATE_2Q_SCALE = 1e-2
READOUT_SCALE = 1e-2

_BLOCK = 1024


def _check_prob(p: float, name: str) -> float:
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must be a probability, got {p}")
    return p


@dataclass(frozen=True)
class NoiseModel:
    """Per-physical-qubit error probabilities.

    ``layout[k]`` is the physical qubit that circuit qubit ``k`` runs on.
    A two-qubit gate depolarizes with the mean of its two qubits'
    ``gate_error_2q`` rates.
    """

    readout_error: tuple[float, ...]
    gate_error_1q: tuple[float, ...]
    gate_error_2q: tuple[float, ...]
    rng_seed: int = 0
    layout: tuple[int, ...] | None = None
    raw_gate_error: tuple[float, ...] | None = None
    raw_readout_error: tuple[float, ...] | None = None
    scales: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for name in ("readout_error", "gate_error_1q", "gate_error_2q"):
            vals = tuple(_check_prob(p, name) for p in getattr(self, name))
            object.__setattr__(self, name, vals)
        sizes = {len(self.readout_error), len(self.gate_error_1q), len(self.gate_error_2q)}
        if len(sizes) != 1:
            raise ValueError("per-qubit error tuples must have equal length")

    @property
    def n_physical(self) -> int:
        return len(self.readout_error)

    @classmethod
    def uniform(cls, p1: float = 0.0, p2: float = 0.0, readout: float = 0.0,
                n_physical: int = 5, rng_seed: int = 0) -> "NoiseModel":
        return cls((readout,) * n_physical, (p1,) * n_physical, (p2,) * n_physical, rng_seed)

    @classmethod
    def noiseless(cls, n_physical: int = 5, rng_seed: int = 0) -> "NoiseModel":
        return cls.uniform(n_physical=n_physical, rng_seed=rng_seed)

    def physical(self, q: int) -> int:
        p = self.layout[q] if self.layout is not None else q
        if not 0 <= p < self.n_physical:
            raise ValueError(f"circuit qubit {q} maps to unknown physical qubit {p}")
        return p

    def p_gate(self, qubits: Sequence[int]) -> float:
        phys = [self.physical(q) for q in qubits]
        if len(phys) == 1:
            return self.gate_error_1q[phys[0]]
        return float(np.mean([self.gate_error_2q[p] for p in phys]))

    def p_readout(self, q: int) -> float:
        return self.readout_error[self.physical(q)]


def table1_noise_model(rng_seed: int = 0, layout: Sequence[int] | None = None) -> NoiseModel:
    """Noise model built from the ``ibmqx4`` calibration table."""
    qs = sorted(IBMQX4_TABLE)
    ge = tuple(IBMQX4_TABLE[q][3] for q in qs)
    re = tuple(IBMQX4_TABLE[q][4] for q in qs)
    return NoiseModel(
        readout_error=tuple(r * READOUT_SCALE for r in re),
        gate_error_1q=tuple(g * GATE_1Q_SCALE for g in ge),
        gate_error_2q=tuple(g * GATE_2Q_SCALE for g in ge),
        rng_seed=rng_seed,
        layout=tuple(layout) if layout is not None else None,
        raw_gate_error=ge,
        raw_readout_error=re,
        scales={"gate_1q": GATE_1Q_SCALE, "gate_2q": GATE_2Q_SCALE, "readout": READOUT_SCALE},
    )


@dataclass(frozen=True)
class ShotCounts:
    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if any(c < 0 for c in self.counts.values()):
            raise ValueError("counts must be non-negative")
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not sum to the shot total")

    def expectation_z(self, bit: int = 0) -> float:
        """Mean of ``(-1)^b`` for the bit at position ``bit`` (0 = rightmost)."""
        total = 0
        for key, c in self.counts.items():
            total += c if key[-1 - bit] == "0" else -c
        return total / self.shots


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def sample_shots(state: StateVector, qubit: int, basis: str = "X", shots: int = 1024,
                 seed=None) -> ShotCounts:
    """Measure one qubit ``shots`` times; outcome ``"0"`` is the +1 eigenvalue."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if basis.upper() != "X":
        raise ValueError(f"unsupported measurement basis {basis!r}")
    rotated = apply_1q(state, gates.h(), qubit)
    n = state.n_qubits
    probs = rotated.probabilities().reshape([2] * n)
    p1 = float(np.clip(np.moveaxis(probs, n - 1 - qubit, 0)[1].sum(), 0.0, 1.0))
    ones = int(_rng(seed).binomial(shots, p1))
    return ShotCounts({"0": shots - ones, "1": ones}, shots)


def apply_readout_error(counts: ShotCounts, flip_prob: float, seed=None) -> ShotCounts:
    """Flip every recorded bit independently with probability ``flip_prob``."""
    flip_prob = _check_prob(flip_prob, "flip_prob")
    rng = _rng(seed)
    out: dict[str, int] = {}
    for key in sorted(counts.counts):
        c = counts.counts[key]
        if c == 0:
            continue
        bits = np.array([int(ch) for ch in key], dtype=np.int8)
        flips = (rng.random((c, bits.size)) < flip_prob).astype(np.int8)
        for row in np.bitwise_xor(bits, flips):
            k = "".join(map(str, row))
            out[k] = out.get(k, 0) + 1
    return ShotCounts(out, counts.shots)


def _paulis(k: int) -> list[np.ndarray]:
    """All ``4^k`` Pauli strings on ``k`` qubits (little-endian)."""
    out = []
    for combo in itertools.product(range(4), repeat=k):
        out.append(product_operator({q: gates.PAULIS[p] for q, p in enumerate(combo)}, k))
    return out


class _CompiledNoisyCircuit:
    """Full-register matrices for each gate plus the Pauli set to draw after it."""

    def __init__(self, circuit: Circuit, noise: NoiseModel):
        self.n = circuit.n_qubits
        self.dim = 2**self.n
        self.phase = np.exp(1j * circuit.global_phase)
        self.steps = []
        pauli_cache: dict[tuple[int, ...], np.ndarray] = {}
        mat_cache: dict = {}
        for op in circuit.ops:
            if op.kind in DIRECTIVE_KINDS:
                continue
            if op not in mat_cache:
                mat_cache[op] = circuit_unitary(Circuit(self.n, [op]))
            mat = mat_cache[op]
            qubits = tuple(sorted(op.qubits))
            if qubits not in pauli_cache:
                pauli_cache[qubits] = np.array([
                    embed_operator(p, qubits, self.n) for p in _paulis(len(qubits))
                ])
            self.steps.append((mat, noise.p_gate(qubits), pauli_cache[qubits]))

    def run(self, states: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        n_traj = states.shape[0]
        for mat, p, paulis in self.steps:
            states = states @ mat.T
            if p <= 0:
                continue
            hit = rng.random(n_traj) < p
            which = rng.integers(0, len(paulis), size=n_traj)
            for idx in np.unique(which[hit]):
                if idx == 0:
                    continue
                sel = hit & (which == idx)
                states[sel] = states[sel] @ paulis[idx].T
        return states * self.phase


def _block_estimate(compiled: _CompiledNoisyCircuit, psi0: np.ndarray, control: int,
                    n_traj: int, p_readout: float, seed: np.random.SeedSequence) -> int:
    """Number of ``"1"`` outcomes among ``n_traj`` single-shot trajectories."""
    rng = np.random.default_rng(seed)
    states = np.tile(psi0, (n_traj, 1))
    states = compiled.run(states, rng)
    ctrl_bit = (np.arange(compiled.dim) >> control) & 1
    a0 = states[:, ctrl_bit == 0]
    a1 = states[:, ctrl_bit == 1]
    # probability of "1" after a Hadamard on the control
    p1 = 0.5 * np.sum(np.abs(a0 - a1) ** 2, axis=1)
    bits = rng.random(n_traj) < p1
    if p_readout > 0:
        bits ^= rng.random(n_traj) < p_readout
    return int(bits.sum())


def run_protocol_noisy(cfg: ProtocolConfig, noise: NoiseModel, shots: int = 8192,
                       seed=None, workers: int | None = None) -> float:
    """Estimate ``Re F`` from ``shots`` noisy single-shot trajectories.

    The result depends only on ``seed`` (default ``noise.rng_seed``), not on
    ``workers``: trajectories are processed in fixed blocks, each with its
    own child seed.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    circuit = lower_to_basis(full_protocol_circuit(cfg, measure=False))
    compiled = _CompiledNoisyCircuit(circuit, noise)
    psi0 = np.zeros(compiled.dim, dtype=complex)
    psi0[0] = 1.0
    master = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(
        noise.rng_seed if seed is None else seed)
    sizes = [min(_BLOCK, shots - s) for s in range(0, shots, _BLOCK)]
    children = master.spawn(len(sizes))
    p_ro = noise.p_readout(cfg.control)
    jobs = [(compiled, psi0, cfg.control, m, p_ro, child) for m, child in zip(sizes, children)]
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            ones = sum(pool.map(lambda j: _block_estimate(*j), jobs))
    else:
        ones = sum(_block_estimate(*j) for j in jobs)
    return (shots - 2 * ones) / shots
