"""Gate matrices for the X, H, CNOT, U1, U3 gate set and controlled wrappers.

U1 and U3 follow the OpenQASM 2.0 ``qelib1`` definitions::

    u1(l)      = diag(1, e^{il})
    u3(t,p,l)  = [[cos(t/2),        -e^{il} sin(t/2)],
                  [e^{ip} sin(t/2),  e^{i(p+l)} cos(t/2)]]

These are the conventions the QASM emitter writes, so a parsed circuit
reproduces the simulated matrices exactly.
"""
from __future__ import annotations

import numpy as np

from .statevector import check_unitary

TWO_PI = 2.0 * np.pi

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
_I = np.eye(2, dtype=complex)

PAULIS = (_I, _X, _Y, _Z)


def x() -> np.ndarray:
    return _X.copy()


def h() -> np.ndarray:
    return _H.copy()


def pauli_z() -> np.ndarray:
    return _Z.copy()


def u1(lam: float) -> np.ndarray:
    return np.array([[1, 0], [0, np.exp(1j * lam)]], dtype=complex)


def u3(theta: float, phi: float, lam: float) -> np.ndarray:
    c, s = np.cos(theta / 2.0), np.sin(theta / 2.0)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


def controlled(u) -> np.ndarray:
    """4x4 controlled-``u`` with the control on qubit 1 and target on qubit 0.

    Under little-endian ordering that is ``|0><0| (x) I + |1><1| (x) u``,
    i.e. ``block_diag(I, u)``.
    """
    u = check_unitary(u)
    if u.shape != (2, 2):
        raise ValueError(f"controlled() takes a 2x2 matrix, got {u.shape}")
    out = np.eye(4, dtype=complex)
    out[2:, 2:] = u
    return out


def cnot() -> np.ndarray:
    """CNOT with control qubit 1, target qubit 0."""
    return controlled(_X)


def canonical_angle(a: float) -> float:
    """Reduce an angle into ``[0, 2*pi)``."""
    r = float(np.mod(a, TWO_PI))
    return 0.0 if np.isclose(r, TWO_PI, rtol=0, atol=1e-15) else r


def global_phase_between(a, b) -> complex | None:
    """Return ``z`` with ``a == z * b`` if the two differ only by a phase."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[k]) < 1e-12:
        return None
    z = a[k] / b[k]
    if abs(abs(z) - 1.0) > 1e-8:
        return None
    return z / abs(z)


def projectively_equal(a, b, atol: float = 1e-10) -> bool:
    """Equality up to a global phase."""
    z = global_phase_between(a, b)
    return z is not None and np.max(np.abs(np.asarray(a) - z * np.asarray(b))) <= atol


def zyz_params(u) -> tuple[float, float, float, float]:
    """Angles ``(theta, phi, lam, gamma)`` with ``u == e^{i gamma} u3(theta, phi, lam)``."""
    u = np.asarray(u, dtype=complex)
    a, b = abs(u[0, 0]), abs(u[1, 0])
    theta = 2.0 * np.arctan2(b, a)
    # det(u) = e^{2i gamma} e^{i(phi + lam)}
    if b < 1e-12:
        gamma = np.angle(u[0, 0])
        phi = 0.0
        lam = np.angle(u[1, 1]) - gamma
    elif a < 1e-12:
        gamma = np.angle(u[1, 0])
        phi = 0.0
        lam = np.angle(-u[0, 1]) - gamma
    else:
        gamma = np.angle(u[0, 0])
        phi = np.angle(u[1, 0]) - gamma
        lam = np.angle(-u[0, 1]) - gamma
    return float(theta), canonical_angle(phi), canonical_angle(lam), float(gamma)
