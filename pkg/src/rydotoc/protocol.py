"""Interferometric OTOC circuit.

The system register occupies qubits ``0..n-1`` and the control (ancilla) is
qubit ``n``. Starting from ``|psi>_s |0>_c`` the circuit runs

    H(c)
    controlled-V           fires on c = |1>
    W_t = U(-t) W U(t)     on the system, unconditionally
    anti-controlled-V      fires on c = |0>

which leaves ``(V W_t|psi>|0> + W_t V|psi>|1>) / sqrt(2)``. The control's
``<X>`` is then ``Re <psi| W_t^dag V^dag W_t V |psi>``. Only V is ever
placed under control, so the time evolution never needs a controlled form.
Controlled-V is compiled through :mod:`rydotoc.compiler`, which removes
the compiled circuit's residual global phase with a ``U1`` on the control
(under a control a global phase becomes a relative one).
"""
from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, field, replace

import numpy as np

from .circuit import Circuit, simulate
from .compiler import compile_unitary, controlled_unitary
from .errors import CapabilityError
from .hamiltonian import (
    HamiltonianSpec,
    TrotterPlan,
    build_hamiltonian,
    exact_evolution,
    trotterized_evolution,
)
from .statevector import StateVector, expectation_x, new_zero_state


class InitialState(enum.Enum):
    PRODUCT_00 = "product"
    BELL_BLOCKADE = "bell"


class EvolutionMode(enum.Enum):
    EXACT_ORACLE = "oracle"
    TROTTER = "trotter"


@dataclass(frozen=True)
class ProtocolConfig:
    hamiltonian: HamiltonianSpec = field(default_factory=HamiltonianSpec)
    time: float = 0.0
    evolution_mode: EvolutionMode = EvolutionMode.EXACT_ORACLE
    trotter_steps: int = 1
    initial_state: InitialState = InitialState.PRODUCT_00
    butterfly_phase: float = np.pi / 4
    # explicit V and W override the butterfly operator; None means V = W = butterfly
    v: np.ndarray | None = None
    w: np.ndarray | None = None

    def __post_init__(self):
        if self.time < 0:
            raise ValueError("time must be non-negative")
        object.__setattr__(self, "evolution_mode", EvolutionMode(self.evolution_mode))
        object.__setattr__(self, "initial_state", InitialState(self.initial_state))
        if self.evolution_mode is EvolutionMode.TROTTER and self.trotter_steps < 1:
            raise ValueError("trotter_steps must be >= 1")

    @property
    def n_system(self) -> int:
        return self.hamiltonian.n_spins

    @property
    def control(self) -> int:
        return self.n_system

    def operators(self) -> tuple[np.ndarray, np.ndarray]:
        if self.v is None:
            v = butterfly_operator(self.butterfly_phase, self.n_system)
        else:
            v = np.asarray(self.v, dtype=complex)
        w = v if self.w is None else np.asarray(self.w, dtype=complex)
        return v, w

    def at(self, time: float) -> "ProtocolConfig":
        return replace(self, time=time)

    def snapshot(self) -> dict:
        """Plain-data view for manifests and JSON output."""
        h = self.hamiltonian
        return {
            "n_spins": h.n_spins,
            "omega": h.omega,
            "v_couplings": h.v_couplings.tolist(),
            "interaction_form": h.interaction_form.value,
            "time": self.time,
            "evolution_mode": self.evolution_mode.value,
            "trotter_steps": self.trotter_steps,
            "initial_state": self.initial_state.value,
            "butterfly_phase": self.butterfly_phase,
            "custom_operators": self.v is not None or self.w is not None,
        }


def preparation_circuit(kind: InitialState, n_system: int = 2, n_qubits: int | None = None) -> Circuit:
    """Gates taking ``|0...0>`` to the requested system state.

    The blockade state uses X on spin 1, H on spin 2 and a CNOT from spin 2
    onto spin 1 (spins 1, 2 are qubits 0, 1), giving ``(|01> + |10>)/sqrt(2)``.
    """
    kind = InitialState(kind)
    circ = Circuit(n_qubits if n_qubits is not None else n_system)
    if kind is InitialState.PRODUCT_00:
        return circ
    if n_system != 2:
        raise CapabilityError("the blockade Bell state is defined for two spins only")
    circ.x(0)
    circ.h(1)
    circ.cx(1, 0)
    return circ


def prepare_initial(kind: InitialState, n_system: int = 2) -> StateVector:
    return simulate(preparation_circuit(kind, n_system))


def butterfly_operator(phase: float, n_spins: int) -> np.ndarray:
    """``exp(-i * phase * S_Z)`` with ``S_Z = sum_k Z_k``, as a dense diagonal matrix."""
    if n_spins < 1:
        raise ValueError("n_spins must be >= 1")
    idx = np.arange(2**n_spins)
    popcount = np.array([bin(b).count("1") for b in idx])
    s_z = n_spins - 2 * popcount
    return np.diag(np.exp(-1j * phase * s_z))


def evolution_circuit(cfg: ProtocolConfig, time: float) -> Circuit:
    """``U(time)`` on the system register; negative time gives the backward evolution.

    In oracle mode ``U(-t)`` is the compiled adjoint of the exact propagator;
    in Trotter mode it is the Trotter circuit with negated angles.
    """
    spec = cfg.hamiltonian
    if cfg.evolution_mode is EvolutionMode.EXACT_ORACLE:
        u = exact_evolution(build_hamiltonian(spec), abs(time))
        if time < 0:
            u = u.conj().T
        circ, _ = compile_unitary(u, spec.n_spins)
        return circ
    if cfg.evolution_mode is EvolutionMode.TROTTER:
        return trotterized_evolution(spec, TrotterPlan(time, cfg.trotter_steps))
    raise CapabilityError(f"unsupported evolution mode {cfg.evolution_mode}")


@lru_cache(maxsize=64)
def _compiled(key: bytes, n: int) -> Circuit:
    u = np.frombuffer(key, dtype=complex).reshape(2**n, 2**n)
    return compile_unitary(u, n)[0]


@lru_cache(maxsize=64)
def _compiled_controlled(key: bytes, n: int, control: int, value: int) -> Circuit:
    u = np.frombuffer(key, dtype=complex).reshape(2**n, 2**n)
    return controlled_unitary(u, n, control, value)[0]


def heisenberg_w_circuit(cfg: ProtocolConfig) -> Circuit:
    """``W_t = U(-t) W U(t)`` as gates: U(t) first, then W, then U(-t)."""
    _, w = cfg.operators()
    n = cfg.n_system
    w_circ = _compiled(np.ascontiguousarray(w).tobytes(), n)
    circ = Circuit(n)
    if cfg.time != 0:
        circ.compose(evolution_circuit(cfg, cfg.time))
    circ.compose(w_circ)
    if cfg.time != 0:
        circ.compose(evolution_circuit(cfg, -cfg.time))
    return circ


def build_protocol_circuit(cfg: ProtocolConfig) -> Circuit:
    n = cfg.n_system
    c = cfg.control
    v, _ = cfg.operators()
    key = np.ascontiguousarray(v).tobytes()
    cv = _compiled_controlled(key, n, c, 1)
    acv = _compiled_controlled(key, n, c, 0)
    circ = Circuit(n + 1)
    circ.h(c)
    circ.compose(cv)
    circ.compose(heisenberg_w_circuit(cfg))
    circ.compose(acv)
    return circ


def full_protocol_circuit(cfg: ProtocolConfig, measure: bool = True) -> Circuit:
    """State preparation, the protocol, and (optionally) an X-basis readout of the control."""
    n = cfg.n_system
    circ = preparation_circuit(cfg.initial_state, n, n + 1)
    circ.compose(build_protocol_circuit(cfg))
    if measure:
        circ.h(cfg.control)
        circ.measure(cfg.control, 0)
    return circ


def branch_state(cfg: ProtocolConfig) -> StateVector:
    """Joint system + control state at the end of the protocol circuit."""
    psi = prepare_initial(cfg.initial_state, cfg.n_system)
    joint = psi.tensor(new_zero_state(1))
    return simulate(build_protocol_circuit(cfg), joint)


def run_protocol(cfg: ProtocolConfig) -> float:
    """``<X>`` of the control qubit, which equals ``Re F(t)``."""
    return expectation_x(branch_state(cfg), cfg.control)
