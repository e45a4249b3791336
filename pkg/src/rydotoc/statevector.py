"""Dense statevector and gate-application kernels.

Qubit ordering is little-endian throughout the package: qubit 0 is the
least-significant bit of the basis index, so ``|q2 q1 q0>`` has index
``4*q2 + 2*q1 + q0``. Internally the amplitudes are viewed as an
``[2]*n`` tensor in C order, which puts qubit ``k`` on axis ``n - 1 - k``.

All kernels have value semantics: they return a new StateVector and never
touch the input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import QubitIndexError, SizeError, UnitarityError

MAX_QUBITS = 24
UNITARY_ATOL = 1e-10


@dataclass(frozen=True)
class StateVector:
    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amps.size != 2**self.n_qubits:
            raise SizeError(
                f"{amps.size} amplitudes do not describe {self.n_qubits} qubits"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_amplitudes(cls, amplitudes) -> "StateVector":
        amps = np.asarray(amplitudes, dtype=complex).reshape(-1)
        n = int(round(np.log2(amps.size))) if amps.size else -1
        if n < 0 or 2**n != amps.size:
            raise SizeError(f"length {amps.size} is not a power of two")
        return cls(n, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def tensor(self, other: "StateVector") -> "StateVector":
        """``other`` becomes the high qubits: ``|other> (x) |self>``."""
        return StateVector(
            self.n_qubits + other.n_qubits,
            np.kron(other.amplitudes, self.amplitudes),
        )

    def __len__(self):
        return self.amplitudes.size


def new_zero_state(n_qubits: int) -> StateVector:
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise SizeError(f"n_qubits must lie in [1, {MAX_QUBITS}], got {n_qubits}")
    amps = np.zeros(2**n_qubits, dtype=complex)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def check_unitary(u: np.ndarray, atol: float = UNITARY_ATOL) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise SizeError(f"gate matrix must be square, got shape {u.shape}")
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > atol:
        raise UnitarityError(f"matrix is not unitary (max |U^dag U - I| = {err:.3g})")
    return u


def _check_qubit(state: StateVector, q: int) -> None:
    if not 0 <= q < state.n_qubits:
        raise QubitIndexError(f"qubit {q} out of range for {state.n_qubits} qubits")


def _axis(n: int, q: int) -> int:
    return n - 1 - q


def apply_1q(state: StateVector, u, target: int) -> StateVector:
    u = check_unitary(u)
    if u.shape != (2, 2):
        raise SizeError(f"single-qubit gate must be 2x2, got {u.shape}")
    _check_qubit(state, target)
    n = state.n_qubits
    psi = state.amplitudes.reshape([2] * n)
    ax = _axis(n, target)
    out = np.tensordot(u, psi, axes=([1], [ax]))
    out = np.moveaxis(out, 0, ax)
    return StateVector(n, out.reshape(-1))


def apply_controlled(
    state: StateVector,
    u,
    control: int,
    target: int,
    control_on_zero: bool = False,
) -> StateVector:
    u = check_unitary(u)
    if u.shape != (2, 2):
        raise SizeError(f"controlled gate must be 2x2, got {u.shape}")
    _check_qubit(state, control)
    _check_qubit(state, target)
    if control == target:
        raise QubitIndexError("control and target must differ")
    n = state.n_qubits
    psi = np.array(state.amplitudes).reshape([2] * n)
    cax, tax = _axis(n, control), _axis(n, target)
    idx = [slice(None)] * n
    idx[cax] = 0 if control_on_zero else 1
    sub = psi[tuple(idx)]
    # removing the control axis shifts later axes down by one
    sub_tax = tax - 1 if tax > cax else tax
    new = np.moveaxis(np.tensordot(u, sub, axes=([1], [sub_tax])), 0, sub_tax)
    psi[tuple(idx)] = new
    return StateVector(n, psi.reshape(-1))


def apply_dense(state: StateVector, u, qubits: Sequence[int]) -> StateVector:
    """Apply a ``2^k x 2^k`` unitary to the listed qubits.

    ``qubits[0]`` is the least-significant bit of ``u``'s row/column index,
    matching the global little-endian convention.
    """
    qubits = list(qubits)
    k = len(qubits)
    u = np.asarray(u, dtype=complex)
    if u.shape != (2**k, 2**k):
        raise SizeError(f"matrix shape {u.shape} does not match {k} qubits")
    if k > state.n_qubits:
        raise SizeError("more gate qubits than state qubits")
    if len(set(qubits)) != k:
        raise QubitIndexError(f"qubit indices must be distinct: {qubits}")
    for q in qubits:
        _check_qubit(state, q)
    u = check_unitary(u)
    n = state.n_qubits
    psi = state.amplitudes.reshape([2] * n)
    # tensor axes of u are (out_{k-1}..out_0, in_{k-1}..in_0)
    ut = u.reshape([2] * (2 * k))
    axes = [_axis(n, q) for q in reversed(qubits)]
    out = np.tensordot(ut, psi, axes=(list(range(k, 2 * k)), axes))
    out = np.moveaxis(out, list(range(k)), axes)
    return StateVector(n, out.reshape(-1))


def expectation_x(state: StateVector, qubit: int) -> float:
    _check_qubit(state, qubit)
    n = state.n_qubits
    psi = np.moveaxis(state.amplitudes.reshape([2] * n), _axis(n, qubit), 0)
    val = 2.0 * np.real(np.vdot(psi[0], psi[1]))
    return float(np.clip(val, -1.0, 1.0))


def inner_product(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``."""
    if a.n_qubits != b.n_qubits:
        raise SizeError(f"cannot overlap {a.n_qubits}- and {b.n_qubits}-qubit states")
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def embed_operator(u, qubits: Sequence[int], n_qubits: int) -> np.ndarray:
    """Full ``2^n x 2^n`` matrix of ``u`` acting on ``qubits``.

    Built column by column through :func:`apply_dense`; used for small
    registers (reconstruction checks, noise trajectories).
    """
    dim = 2**n_qubits
    cols = []
    for j in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[j] = 1.0
        cols.append(apply_dense(StateVector(n_qubits, e), u, qubits).amplitudes)
    return np.array(cols).T
