"""Rydberg Ising Hamiltonian, exact propagator, and first-order Trotter circuits.

The model is

    H = omega * sum_i X_i + sum_{i<j} V_ij * (n_i n_j   or   Z_i Z_j)

with ``n = |1><1| = (I - Z)/2`` the Rydberg occupation (``|0>`` ground,
``|1>`` excited). Units take the drive energy as the scale, so the default
``omega = 1`` and ``V_12 = 1`` make the time axis read directly as
``V_12 * t``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from . import gates
from .circuit import Circuit
from .errors import SymmetryError

HERMITIAN_ATOL = 1e-10


class InteractionForm(enum.Enum):
    NUMBER_OPERATOR = "number"
    PAULI_ZZ = "zz"


@dataclass(frozen=True)
class HamiltonianSpec:
    """Parameters of the Ising model.

    ``v_couplings`` is the symmetric pair-coupling matrix. The van der Waals
    origin ``V_ij = C / R_ij`` is not modelled; pass the couplings directly.
    """

    n_spins: int = 2
    omega: float = 1.0
    v_couplings: np.ndarray = field(default=None)
    interaction_form: InteractionForm = InteractionForm.PAULI_ZZ

    def __post_init__(self):
        if self.n_spins < 1:
            raise ValueError("n_spins must be >= 1")
        v = self.v_couplings
        if v is None:
            v = np.zeros((self.n_spins, self.n_spins))
            if self.n_spins >= 2:
                v[0, 1] = v[1, 0] = 1.0
        v = np.array(v, dtype=float)
        if v.shape != (self.n_spins, self.n_spins):
            raise ValueError(f"v_couplings must be {self.n_spins}x{self.n_spins}")
        if not np.allclose(v, v.T, atol=0, rtol=0) or np.any(np.diag(v) != 0):
            raise ValueError("v_couplings must be symmetric with zero diagonal")
        if np.any(v < 0):
            raise ValueError("couplings must be non-negative (repulsive)")
        v.setflags(write=False)
        object.__setattr__(self, "v_couplings", v)
        object.__setattr__(self, "interaction_form", InteractionForm(self.interaction_form))

    @classmethod
    def two_spin(cls, omega: float = 1.0, v12: float = 1.0,
                 interaction_form=InteractionForm.PAULI_ZZ) -> "HamiltonianSpec":
        return cls(2, omega, np.array([[0.0, v12], [v12, 0.0]]), interaction_form)

    @property
    def v12(self) -> float:
        return float(self.v_couplings[0, 1]) if self.n_spins >= 2 else 0.0

    def pairs(self):
        n = self.n_spins
        return [(i, j, float(self.v_couplings[i, j]))
                for i in range(n) for j in range(i + 1, n) if self.v_couplings[i, j] != 0]


@dataclass(frozen=True)
class TrotterPlan:
    total_time: float
    steps: int = 1
    term_order: tuple[str, ...] = ("H1", "H2", "H3")

    def __post_init__(self):
        if self.steps < 1:
            raise ValueError("steps must be >= 1")
        if not np.isfinite(self.total_time):
            raise ValueError("total_time must be finite")

    @property
    def dt(self) -> float:
        return self.total_time / self.steps


_NUMBER = np.diag([0.0, 1.0]).astype(complex)


def product_operator(factors: dict[int, np.ndarray], n: int) -> np.ndarray:
    """Kronecker product with ``factors[q]`` on qubit ``q`` and identity elsewhere."""
    out = np.eye(1, dtype=complex)
    for q in reversed(range(n)):
        out = np.kron(out, factors.get(q, np.eye(2)))
    return out


def build_hamiltonian(spec: HamiltonianSpec) -> np.ndarray:
    n = spec.n_spins
    h = sum(spec.omega * product_operator({i: gates.x()}, n) for i in range(n))
    local = gates.pauli_z() if spec.interaction_form is InteractionForm.PAULI_ZZ else _NUMBER
    for i, j, vij in spec.pairs():
        h = h + vij * product_operator({i: local, j: local}, n)
    return np.asarray(h, dtype=complex)


def exact_evolution(h, t: float) -> np.ndarray:
    """``exp(-i h t)`` via Hermitian eigendecomposition."""
    h = np.asarray(h, dtype=complex)
    asym = np.max(np.abs(h - h.conj().T))
    if asym > HERMITIAN_ATOL:
        raise SymmetryError(f"Hamiltonian is not Hermitian (max |H - H^dag| = {asym:.3g})")
    evals, evecs = np.linalg.eigh(h)
    return (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T


def trotter_step_circuit(spec: HamiltonianSpec, dt: float) -> Circuit:
    """One first-order step ``e^{-i H1 dt} e^{-i H2 dt} e^{-i H3 dt}``.

    H1, H2 are the drives on spins 0 and 1 and H3 the pair interaction. The
    rightmost factor acts first, so the gates run H3, H2, H1 in time. Each
    drive factor is ``u3(2*omega*dt, 3pi/2, pi/2)``, which equals
    ``[[cos, -i sin], [-i sin, cos]]`` exactly. The ZZ factor is
    ``CNOT . u1(2 V dt) . CNOT`` with its ``e^{-i V dt}`` phase carried in
    ``global_phase``; the n.n factor is a controlled phase ``cu1(-V dt)``.
    More than two spins are handled by chaining all pair terms and all drives.
    """
    n = spec.n_spins
    circ = Circuit(n)
    for i, j, vij in spec.pairs():
        theta = vij * dt
        if spec.interaction_form is InteractionForm.PAULI_ZZ:
            circ.cx(i, j)
            circ.u1(2.0 * theta, j)
            circ.cx(i, j)
            circ.global_phase -= theta
        else:
            circ.cu1(-theta, i, j)
    for i in reversed(range(n)):
        circ.u3(2.0 * spec.omega * dt, 1.5 * np.pi, 0.5 * np.pi, i)
    return circ


def trotterized_evolution(spec: HamiltonianSpec, plan: TrotterPlan) -> Circuit:
    step = trotter_step_circuit(spec, plan.dt)
    circ = Circuit(spec.n_spins)
    for _ in range(plan.steps):
        circ.compose(step)
    return circ
