"""Circuit container, exact simulation, and lowering to the QASM basis.

A :class:`Circuit` is an ordered list of :class:`Op`. The gate kinds form a
closed set::

    X, H, U1, U3                 single-qubit
    CNOT, CU1, CU3, CPHASE       one control, one target
    MEASURE, BARRIER             directives (ignored by the simulator)

Any controlled kind may be *anti*-controlled (``anti=True``): it fires when
the control qubit is ``|0>``. ``CPHASE`` is an alias of ``CU1``.

``Circuit.global_phase`` tracks the scalar ``e^{i*phase}`` the gate list
omits. It is invisible for uncontrolled use but becomes a relative phase
when the circuit is placed under a control, so builders that need an exact
operator keep it up to date.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import gates
from .errors import CapabilityError, QubitIndexError
from .statevector import StateVector, apply_1q, apply_controlled, new_zero_state

SINGLE_KINDS = frozenset({"X", "H", "U1", "U3"})
CONTROLLED_KINDS = frozenset({"CNOT", "CU1", "CU3", "CPHASE"})
DIRECTIVE_KINDS = frozenset({"MEASURE", "BARRIER"})
ALL_KINDS = SINGLE_KINDS | CONTROLLED_KINDS | DIRECTIVE_KINDS
BASIS_KINDS = frozenset({"X", "H", "U1", "U3", "CNOT"}) | DIRECTIVE_KINDS

_N_PARAMS = {"X": 0, "H": 0, "U1": 1, "U3": 3, "CNOT": 0, "CU1": 1, "CU3": 3,
             "CPHASE": 1, "MEASURE": 0, "BARRIER": 0}


@dataclass(frozen=True)
class Op:
    kind: str
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    params: tuple[float, ...] = ()
    anti: bool = False
    clbits: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "controls", tuple(int(q) for q in self.controls))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        object.__setattr__(self, "clbits", tuple(int(c) for c in self.clbits))
        if self.kind not in ALL_KINDS:
            raise CapabilityError(f"unknown gate kind {self.kind!r}")
        if len(self.params) != _N_PARAMS[self.kind]:
            raise ValueError(
                f"{self.kind} takes {_N_PARAMS[self.kind]} parameters, got {len(self.params)}"
            )
        if not all(np.isfinite(self.params)):
            raise ValueError(f"non-finite angle in {self}")
        if self.kind in CONTROLLED_KINDS:
            if len(self.controls) != 1 or len(self.targets) != 1:
                raise ValueError(f"{self.kind} needs exactly one control and one target")
        elif self.kind == "BARRIER":
            if self.controls or not self.targets:
                raise ValueError("BARRIER takes one or more targets and no controls")
        else:
            if self.controls or len(self.targets) != 1:
                raise ValueError(f"{self.kind} acts on exactly one target")
            if self.anti:
                raise ValueError(f"{self.kind} has no control to anti-control")
        if self.kind == "MEASURE" and len(self.clbits) != 1:
            raise ValueError("MEASURE needs one classical bit")
        if set(self.controls) & set(self.targets):
            raise QubitIndexError(f"controls and targets overlap in {self}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    def matrix(self) -> np.ndarray:
        """The 2x2 matrix applied to the target (for controlled kinds, under the control)."""
        k, p = self.kind, self.params
        if k == "X" or k == "CNOT":
            return gates.x()
        if k == "H":
            return gates.h()
        if k in ("U1", "CU1", "CPHASE"):
            return gates.u1(p[0])
        if k in ("U3", "CU3"):
            return gates.u3(*p)
        raise CapabilityError(f"{k} has no matrix")

    def inverse(self) -> "Op":
        k, p = self.kind, self.params
        if k in ("X", "H", "CNOT", "BARRIER"):
            return self
        if k in ("U1", "CU1", "CPHASE"):
            return Op(k, self.targets, self.controls, (-p[0],), self.anti)
        if k in ("U3", "CU3"):
            theta, phi, lam = p
            return Op(k, self.targets, self.controls, (-theta, -lam, -phi), self.anti)
        raise CapabilityError(f"{k} is not invertible")


@dataclass
class Circuit:
    n_qubits: int
    ops: list[Op] = field(default_factory=list)
    global_phase: float = 0.0

    def __post_init__(self):
        for op in self.ops:
            self._check(op)

    def _check(self, op: Op) -> None:
        for q in op.qubits:
            if not 0 <= q < self.n_qubits:
                raise QubitIndexError(f"{op} touches qubit {q} of a {self.n_qubits}-qubit circuit")

    def append(self, op: Op) -> "Circuit":
        self._check(op)
        self.ops.append(op)
        return self

    def extend(self, ops: Iterable[Op]) -> "Circuit":
        for op in ops:
            self.append(op)
        return self

    def compose(self, other: "Circuit", qubit_map: dict[int, int] | None = None) -> "Circuit":
        """Append ``other`` after ``self`` (in time), optionally relabelling its qubits."""
        for op in other.ops:
            self.append(remap_op(op, qubit_map) if qubit_map else op)
        self.global_phase += other.global_phase
        return self

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, list(self.ops), self.global_phase)

    def inverse(self) -> "Circuit":
        ops = [op.inverse() for op in reversed(self.ops) if op.kind != "MEASURE"]
        return Circuit(self.n_qubits, ops, -self.global_phase)

    # convenience builders
    def x(self, q):
        return self.append(Op("X", (q,)))

    def h(self, q):
        return self.append(Op("H", (q,)))

    def u1(self, lam, q):
        return self.append(Op("U1", (q,), params=(lam,)))

    def u3(self, theta, phi, lam, q):
        return self.append(Op("U3", (q,), params=(theta, phi, lam)))

    def cx(self, c, t, anti=False):
        return self.append(Op("CNOT", (t,), (c,), anti=anti))

    def cu1(self, lam, c, t, anti=False):
        return self.append(Op("CU1", (t,), (c,), (lam,), anti=anti))

    def cu3(self, theta, phi, lam, c, t, anti=False):
        return self.append(Op("CU3", (t,), (c,), (theta, phi, lam), anti=anti))

    def measure(self, q, c):
        return self.append(Op("MEASURE", (q,), clbits=(c,)))

    def barrier(self, *qs):
        return self.append(Op("BARRIER", tuple(qs)))

    def __len__(self):
        return len(self.ops)

    def count_ops(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for op in self.ops:
            out[op.kind] = out.get(op.kind, 0) + 1
        return out


def remap_op(op: Op, qubit_map: dict[int, int]) -> Op:
    return Op(
        op.kind,
        tuple(qubit_map.get(q, q) for q in op.targets),
        tuple(qubit_map.get(q, q) for q in op.controls),
        op.params,
        op.anti,
        op.clbits,
    )


def apply_op(state: StateVector, op: Op) -> StateVector:
    if op.kind in DIRECTIVE_KINDS:
        return state
    if op.kind in SINGLE_KINDS:
        return apply_1q(state, op.matrix(), op.targets[0])
    return apply_controlled(state, op.matrix(), op.controls[0], op.targets[0], op.anti)


def simulate(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Run ``circuit`` on ``state`` (default ``|0...0>``), including the global phase."""
    if state is None:
        state = new_zero_state(circuit.n_qubits)
    elif state.n_qubits != circuit.n_qubits:
        raise QubitIndexError(
            f"{circuit.n_qubits}-qubit circuit run on {state.n_qubits}-qubit state"
        )
    for op in circuit.ops:
        state = apply_op(state, op)
    if circuit.global_phase:
        state = StateVector(state.n_qubits, state.amplitudes * np.exp(1j * circuit.global_phase))
    return state


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Reconstruct the full matrix by simulating every basis state."""
    dim = 2**circuit.n_qubits
    cols = []
    for j in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1.0
        cols.append(simulate(circuit, StateVector(circuit.n_qubits, e)).amplitudes)
    return np.array(cols).T


def _lower_op(op: Op) -> list[Op]:
    if op.kind in BASIS_KINDS and not op.anti:
        return [op]
    c, t = op.controls[0], op.targets[0]
    if op.anti:
        inner = _lower_op(Op(op.kind, op.targets, op.controls, op.params))
        return [Op("X", (c,))] + inner + [Op("X", (c,))]
    if op.kind in ("CU1", "CPHASE"):
        (lam,) = op.params
        return [
            Op("U1", (c,), params=(lam / 2,)),
            Op("CNOT", (t,), (c,)),
            Op("U1", (t,), params=(-lam / 2,)),
            Op("CNOT", (t,), (c,)),
            Op("U1", (t,), params=(lam / 2,)),
        ]
    if op.kind == "CU3":
        theta, phi, lam = op.params
        return [
            Op("U1", (c,), params=((lam + phi) / 2,)),
            Op("U1", (t,), params=((lam - phi) / 2,)),
            Op("CNOT", (t,), (c,)),
            Op("U3", (t,), params=(-theta / 2, 0.0, -(phi + lam) / 2)),
            Op("CNOT", (t,), (c,)),
            Op("U3", (t,), params=(theta / 2, phi, 0.0)),
        ]
    raise CapabilityError(f"cannot lower {op.kind}")


def lower_to_basis(circuit: Circuit) -> Circuit:
    """Rewrite into ``{X, H, U1, U3, CNOT}`` plus directives, exactly (phase included)."""
    out = Circuit(circuit.n_qubits, global_phase=circuit.global_phase)
    for op in circuit.ops:
        out.extend(_lower_op(op))
    return out
