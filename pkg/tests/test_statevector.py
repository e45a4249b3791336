import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.stats import unitary_group

from rydotoc import gates
from rydotoc.errors import QubitIndexError, SizeError, UnitarityError
from rydotoc.hamiltonian import HamiltonianSpec, build_hamiltonian, exact_evolution
from rydotoc.statevector import (
    StateVector,
    apply_1q,
    apply_controlled,
    apply_dense,
    embed_operator,
    expectation_x,
    inner_product,
    new_zero_state,
)

S2 = 1 / np.sqrt(2)


def sv(*amps):
    return StateVector.from_amplitudes(amps)


@pytest.mark.parametrize("n,expected", [(1, [1, 0]), (2, [1, 0, 0, 0])])
def test_zero_state(n, expected):
    np.testing.assert_array_equal(new_zero_state(n).amplitudes, expected)


def test_zero_state_three_qubits():
    s = new_zero_state(3)
    assert s.amplitudes[0] == 1 and s.norm() == pytest.approx(1.0)


@pytest.mark.parametrize("n", [0, -1, 25])
def test_zero_state_out_of_range(n):
    with pytest.raises(SizeError):
        new_zero_state(n)


def test_hadamard_on_zero():
    np.testing.assert_allclose(apply_1q(new_zero_state(1), gates.h(), 0).amplitudes, [S2, S2])


def test_x_is_little_endian():
    out = apply_1q(new_zero_state(2), gates.x(), 0)
    assert out.amplitudes[1] == 1


def test_identity_gate_leaves_state():
    s = sv(0.6, 0.8j)
    np.testing.assert_array_equal(apply_1q(s, np.eye(2), 0).amplitudes, s.amplitudes)


def test_value_semantics():
    s = new_zero_state(1)
    apply_1q(s, gates.x(), 0)
    assert s.amplitudes[0] == 1
    with pytest.raises(ValueError):
        s.amplitudes[0] = 0


def test_apply_1q_errors():
    with pytest.raises(UnitarityError):
        apply_1q(new_zero_state(1), np.array([[1, 1], [0, 1]]), 0)
    with pytest.raises(QubitIndexError):
        apply_1q(new_zero_state(1), gates.x(), 1)


def test_cnot_inactive_control():
    s = sv(S2, S2, 0, 0)  # control (qubit 1) in |0>
    out = apply_controlled(s, gates.x(), control=1, target=0)
    np.testing.assert_allclose(out.amplitudes, s.amplitudes)


def test_cnot_bell_step():
    s = sv(S2, 0, S2, 0)  # (|00> + |10>)/sqrt2
    out = apply_controlled(s, gates.x(), control=1, target=0)
    np.testing.assert_allclose(out.amplitudes, [S2, 0, 0, S2])


def test_controlled_phase_on_11():
    out = apply_controlled(sv(0, 0, 0, 1), gates.u1(np.pi / 2), 1, 0)
    np.testing.assert_allclose(out.amplitudes, [0, 0, 0, 1j], atol=1e-15)


def test_control_equals_target():
    with pytest.raises(QubitIndexError):
        apply_controlled(new_zero_state(2), gates.x(), 0, 0)


def test_dense_identity_and_swap():
    s = sv(0, 1, 0, 0)
    np.testing.assert_array_equal(apply_dense(s, np.eye(4), [0, 1]).amplitudes, s.amplitudes)
    swap = np.eye(4)[[0, 2, 1, 3]]
    np.testing.assert_array_equal(apply_dense(s, swap, [0, 1]).amplitudes, [0, 0, 1, 0])


def test_dense_size_mismatch():
    with pytest.raises(SizeError):
        apply_dense(new_zero_state(2), np.eye(4), [0])


def test_dense_exact_evolution_matches_matrix_product():
    u = exact_evolution(build_hamiltonian(HamiltonianSpec()), 1.0)
    out = apply_dense(new_zero_state(2), u, [0, 1])
    np.testing.assert_allclose(out.amplitudes, u[:, 0], atol=1e-12)


@pytest.mark.parametrize("amps,expected", [((S2, S2), 1.0), ((1, 0), 0.0), ((S2, -S2), -1.0)])
def test_expectation_x(amps, expected):
    assert expectation_x(sv(*amps), 0) == pytest.approx(expected, abs=1e-12)


def test_inner_products():
    a, b = sv(1, 0, 0, 0), sv(0, 1, 0, 0)
    assert inner_product(a, a) == 1
    assert inner_product(a, b) == 0
    psi = sv(0.6, 0, 0.8j, 0)
    assert inner_product(psi, psi) == pytest.approx(1.0)
    with pytest.raises(SizeError):
        inner_product(a, new_zero_state(1))


gate_seq = st.lists(
    st.tuples(st.integers(0, 2**31 - 1), st.integers(0, 4), st.integers(0, 4), st.booleans()),
    min_size=1, max_size=100,
)


@settings(max_examples=30, deadline=None)
@given(n=st.integers(1, 5), seq=gate_seq)
def test_norm_preserved(n, seq):
    s = new_zero_state(n)
    for seed, a, b, two in seq:
        a %= n
        b %= n
        if two and a != b:
            s = apply_controlled(s, unitary_group.rvs(2, random_state=seed), a, b)
        else:
            s = apply_1q(s, unitary_group.rvs(2, random_state=seed), a)
    assert abs(s.norm() ** 2 - 1) < 1e-9


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), target=st.integers(0, 2))
def test_gate_then_adjoint(seed, target):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    s = StateVector.from_amplitudes(amps / np.linalg.norm(amps))
    u = unitary_group.rvs(2, random_state=seed)
    back = apply_1q(apply_1q(s, u, target), u.conj().T, target)
    np.testing.assert_allclose(back.amplitudes, s.amplitudes, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), c=st.integers(0, 2), t=st.integers(0, 2))
def test_anti_control_is_x_conjugation(seed, c, t):
    if c == t:
        return
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=8) + 1j * rng.normal(size=8)
    s = StateVector.from_amplitudes(amps / np.linalg.norm(amps))
    u = unitary_group.rvs(2, random_state=seed)
    direct = apply_controlled(s, u, c, t, control_on_zero=True)
    conj = apply_1q(apply_controlled(apply_1q(s, gates.x(), c), u, c, t), gates.x(), c)
    np.testing.assert_allclose(direct.amplitudes, conj.amplitudes, atol=1e-10)


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), n=st.integers(2, 4), data=st.data())
def test_dense_matches_brute_force(seed, n, data):
    qubits = data.draw(st.lists(st.integers(0, n - 1), min_size=2, max_size=2, unique=True))
    u = unitary_group.rvs(4, random_state=seed)
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    s = StateVector.from_amplitudes(amps / np.linalg.norm(amps))
    # brute-force: build the full matrix from basis-index bit manipulation
    dim = 2**n
    full = np.zeros((dim, dim), dtype=complex)
    q0, q1 = qubits
    for col in range(dim):
        sub_in = ((col >> q0) & 1) | (((col >> q1) & 1) << 1)
        rest = col & ~((1 << q0) | (1 << q1))
        for sub_out in range(4):
            row = rest | ((sub_out & 1) << q0) | (((sub_out >> 1) & 1) << q1)
            full[row, col] = u[sub_out, sub_in]
    np.testing.assert_allclose(apply_dense(s, u, qubits).amplitudes, full @ s.amplitudes, atol=1e-10)
    np.testing.assert_allclose(embed_operator(u, qubits, n), full, atol=1e-12)
