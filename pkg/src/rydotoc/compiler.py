"""Exact synthesis of unitaries into CNOT and single-qubit gates.

Pipeline:

1. :func:`two_level_decompose` factors ``U`` into two-level unitaries by
   Givens-style elimination, column by column.
2. :func:`gray_path` links the two basis states of each factor by single
   bit flips (lowest differing bit first).
3. :func:`compile_two_level` permutes along the path with multi-controlled
   X gates until the two states are neighbours, applies a multi-controlled
   core rotation on the remaining bit, and undoes the permutation.

Multi-controlled gates are broken down without ancillas by the recursive
square-root construction (``C^k U`` from ``C V``, ``C^{k-1} X`` and
``C^{k-1} V`` with ``V^2 = U``), ending in CNOT, CU3 and U1 gates.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import gates
from .circuit import Circuit, Op, circuit_unitary
from .errors import QubitIndexError, SizeError
from .statevector import check_unitary

_ZERO_TOL = 1e-14
_IDENTITY_TOL = 1e-13


@dataclass(frozen=True)
class TwoLevelFactor:
    """A unitary that acts as ``block`` on ``span{|i>, |j>}`` and as identity elsewhere."""

    dim: int
    i: int
    j: int
    block: np.ndarray

    def __post_init__(self):
        if not 0 <= self.i < self.j < self.dim:
            raise ValueError(f"need 0 <= i < j < dim, got i={self.i} j={self.j} dim={self.dim}")
        object.__setattr__(self, "block", check_unitary(self.block))

    def full(self) -> np.ndarray:
        m = np.eye(self.dim, dtype=complex)
        idx = [self.i, self.j]
        m[np.ix_(idx, idx)] = self.block
        return m

    def is_identity(self) -> bool:
        return np.max(np.abs(self.block - np.eye(2))) < _IDENTITY_TOL


def _is_power_of_two(d: int) -> bool:
    return d >= 1 and d & (d - 1) == 0


def two_level_decompose(u) -> list[TwoLevelFactor]:
    """Factors ``F_0, F_1, ...`` with ``u == F_0 @ F_1 @ ... @ F_last``.

    At most ``d(d-1)/2`` factors; identity factors are dropped.
    """
    u = check_unitary(u)
    d = u.shape[0]
    if not _is_power_of_two(d):
        raise SizeError(f"dimension {d} is not a power of two")
    if d == 1:
        return []
    w = u.copy()
    eliminators: list[TwoLevelFactor] = []

    def record(c, r, block):
        g = TwoLevelFactor(d, c, r, block)
        rows = [c, r]
        w[rows, :] = block @ w[rows, :]
        eliminators.append(g)

    for c in range(d - 2):
        for r in range(c + 1, d):
            a, b = w[c, c], w[r, c]
            if r < d - 1:
                if abs(b) < _ZERO_TOL:
                    continue
                nrm = np.hypot(abs(a), abs(b))
                record(c, r, np.array([[a.conjugate(), b.conjugate()], [-b, a]]) / nrm)
            else:
                if abs(b) < _ZERO_TOL:
                    if abs(a - 1) < _IDENTITY_TOL:
                        continue
                    # column already reduced to a pure phase on the diagonal
                    record(c, r, np.diag([a.conjugate() / abs(a), 1.0]))
                else:
                    nrm = np.hypot(abs(a), abs(b))
                    record(c, r, np.array([[a.conjugate(), b.conjugate()], [-b, a]]) / nrm)
    # w = G_k ... G_1 u is now identity except the trailing 2x2 block
    tail = TwoLevelFactor(d, d - 2, d - 1, w[d - 2:, d - 2:].copy())
    factors = [TwoLevelFactor(d, g.i, g.j, g.block.conj().T) for g in eliminators]
    if not tail.is_identity():
        factors.append(tail)
    return factors


def gray_path(i: int, j: int, n_bits: int) -> list[int]:
    """Basis indices from ``i`` to ``j``, one bit flip per step, lowest bit first."""
    if i == j:
        raise ValueError("gray_path endpoints must differ")
    if not (0 <= i < 2**n_bits and 0 <= j < 2**n_bits):
        raise ValueError(f"endpoints must be < 2**{n_bits}")
    path = [i]
    cur = i
    for bit in range(n_bits):
        if (cur ^ j) >> bit & 1:
            cur ^= 1 << bit
            path.append(cur)
    return path


def format_path(path: list[int], n_bits: int) -> list[str]:
    return [format(p, f"0{n_bits}b") for p in path]


def _pattern_controls(state: int, skip: int, n: int) -> list[tuple[int, int]]:
    """(qubit, required value) for every bit of ``state`` except ``skip``."""
    return [(q, (state >> q) & 1) for q in range(n) if q != skip]


def _sqrt_unitary(u: np.ndarray) -> np.ndarray:
    t, z = scipy.linalg.schur(u, output="complex")
    return z @ np.diag(np.sqrt(np.diag(t))) @ z.conj().T


def _is_x(u: np.ndarray) -> bool:
    return np.max(np.abs(u - gates.x())) < _IDENTITY_TOL


def controlled_1q_ops(u, control: int, target: int, control_value: int = 1) -> list[Op]:
    """Ops for a singly-controlled arbitrary 2x2 unitary (phase exact)."""
    anti = control_value == 0
    if _is_x(u):
        return [Op("CNOT", (target,), (control,), anti=anti)]
    theta, phi, lam, gamma = gates.zyz_params(u)
    ops = []
    if abs(gamma) > _ZERO_TOL:
        if anti:
            ops += [Op("X", (control,)), Op("U1", (control,), params=(gamma,)), Op("X", (control,))]
        else:
            ops.append(Op("U1", (control,), params=(gamma,)))
    if abs(theta) < _ZERO_TOL and abs(phi) < _ZERO_TOL:
        if abs(gates.canonical_angle(lam)) > _ZERO_TOL:
            ops.append(Op("CU1", (target,), (control,), (lam,), anti=anti))
    else:
        ops.append(Op("CU3", (target,), (control,), (theta, phi, lam), anti=anti))
    return ops


def multi_controlled_ops(u, controls: list[tuple[int, int]], target: int) -> list[Op]:
    """Ops applying 2x2 ``u`` to ``target`` when every ``(qubit, value)`` control matches."""
    u = np.asarray(u, dtype=complex)
    if not controls:
        theta, phi, lam, gamma = gates.zyz_params(u)
        # uncontrolled: the phase gamma is global and is the caller's to track
        return [Op("U3", (target,), params=(theta, phi, lam))]
    if len(controls) == 1:
        (c, val), = controls
        return controlled_1q_ops(u, c, target, val)
    # time order: CV(last->t), C^{k-1}X(head->last), CV^dag(last->t),
    # C^{k-1}X(head->last), C^{k-1}V(head->t)
    head, (last, last_val) = controls[:-1], controls[-1]
    v = _sqrt_unitary(u)
    ops: list[Op] = []
    flip = last_val == 0
    if flip:
        ops.append(Op("X", (last,)))
    ops += controlled_1q_ops(v, last, target)
    ops += multi_controlled_ops(gates.x(), head, last)
    ops += controlled_1q_ops(v.conj().T, last, target)
    ops += multi_controlled_ops(gates.x(), head, last)
    if flip:
        ops.append(Op("X", (last,)))
    ops += multi_controlled_ops(v, head, target)
    return ops


def _two_level_parts(factor: TwoLevelFactor, n_qubits: int):
    """Routing blocks, core matrix, core controls and core target for one factor."""
    path = gray_path(factor.i, factor.j, n_qubits)
    # each routing block is a (self-inverse) multi-controlled X swapping two path states
    routing: list[list[Op]] = []
    for a, b in zip(path[:-2], path[1:-1]):
        bit = (a ^ b).bit_length() - 1
        routing.append(multi_controlled_ops(gates.x(), _pattern_controls(a, bit, n_qubits), bit))
    near, far = path[-2], path[-1]
    bit = (near ^ far).bit_length() - 1
    block = factor.block
    if (near >> bit) & 1:
        # the |i> amplitude now sits on the bit=1 side
        block = gates.x() @ block @ gates.x()
    return routing, block, _pattern_controls(far, bit, n_qubits), bit


def _assemble(routing: list[list[Op]], core: list[Op]) -> list[Op]:
    ops: list[Op] = []
    for block_ops in routing:
        ops += block_ops
    ops += core
    for block_ops in reversed(routing):
        ops += block_ops
    return ops


def compile_two_level(factor: TwoLevelFactor, n_qubits: int) -> Circuit:
    if factor.dim != 2**n_qubits:
        raise SizeError(f"factor dim {factor.dim} does not match {n_qubits} qubits")
    circ = Circuit(n_qubits)
    if factor.is_identity():
        return circ
    routing, block, controls, target = _two_level_parts(factor, n_qubits)
    if not controls:
        # uncontrolled core drops the zyz phase; keep it on the circuit
        circ.global_phase += gates.zyz_params(block)[3]
    circ.extend(_assemble(routing, multi_controlled_ops(block, controls, target)))
    return circ


def compile_unitary(u, n_qubits: int) -> tuple[Circuit, float]:
    """Compile ``u`` to gates. Returns ``(circuit, alpha)`` with ``matrix(circuit) == e^{i alpha} u``.

    ``circuit.global_phase`` is left at ``-alpha`` so that simulating the
    circuit reproduces ``u`` exactly; ``alpha`` is what a caller must
    compensate if it drops the global phase, e.g. under a control qubit.
    """
    u = check_unitary(u)
    if u.shape[0] != 2**n_qubits:
        raise SizeError(f"{u.shape[0]}x{u.shape[0]} matrix is not a {n_qubits}-qubit operator")
    circ = Circuit(n_qubits)
    for f in reversed(two_level_decompose(u)):
        circ.extend(compile_two_level(f, n_qubits).ops)
    m = circuit_unitary(circ)
    z = gates.global_phase_between(m, u)
    alpha = float(np.angle(z)) if z is not None else 0.0
    circ.global_phase = -alpha
    return circ, alpha


def controlled_circuit(circuit: Circuit, control: int, control_value: int = 1,
                       n_qubits: int | None = None) -> Circuit:
    """Condition every gate of ``circuit`` on ``control`` (``|1>``, or ``|0>`` if value 0).

    The circuit's global phase becomes a ``U1`` on the control, since under a
    control it is a relative phase between the branches.
    """
    n = n_qubits if n_qubits is not None else circuit.n_qubits
    if any(control in op.qubits for op in circuit.ops):
        raise QubitIndexError(f"control qubit {control} is used by the circuit")
    out = Circuit(n)
    for op in circuit.ops:
        if op.kind in ("MEASURE", "BARRIER"):
            out.append(op)
            continue
        ctrls = [(c, 0 if op.anti else 1) for c in op.controls] + [(control, control_value)]
        out.extend(multi_controlled_ops(op.matrix(), ctrls, op.targets[0]))
    phase = circuit.global_phase
    if abs(phase) > _ZERO_TOL:
        if control_value == 0:
            out.x(control).u1(phase, control).x(control)
        else:
            out.u1(phase, control)
    return out


def controlled_unitary(u, n_qubits: int, control: int, control_value: int = 1) -> tuple[Circuit, float]:
    """Controlled-``u`` on qubits ``0..n-1`` with ``control`` outside that range.

    Routing blocks are left uncontrolled (they cancel when the core does not
    fire), so only each factor's core gains the extra control. The residual
    phase ``alpha`` of the active branch is measured and removed with a
    ``U1(-alpha)`` on the control; it is returned for reference.
    """
    u = check_unitary(u)
    if u.shape[0] != 2**n_qubits:
        raise SizeError(f"{u.shape[0]}x{u.shape[0]} matrix is not a {n_qubits}-qubit operator")
    if 0 <= control < n_qubits:
        raise QubitIndexError(f"control {control} overlaps the target register")
    width = max(n_qubits, control + 1)
    circ = Circuit(width)
    for f in reversed(two_level_decompose(u)):
        routing, block, controls, target = _two_level_parts(f, n_qubits)
        core = multi_controlled_ops(block, controls + [(control, control_value)], target)
        circ.extend(_assemble(routing, core))
    m = circuit_unitary(circ)
    idx = [b | (control_value << control) for b in range(2**n_qubits)]
    active = m[np.ix_(idx, idx)]
    z = gates.global_phase_between(active, u)
    alpha = float(np.angle(z)) if z is not None else 0.0
    if abs(alpha) > _ZERO_TOL:
        if control_value == 0:
            circ.x(control).u1(-alpha, control).x(control)
        else:
            circ.u1(-alpha, control)
    return circ, alpha
