import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rydotoc import gates
from rydotoc.errors import UnitarityError
from rydotoc.statevector import check_unitary

angle = st.floats(-2 * np.pi, 2 * np.pi, allow_nan=False)


@pytest.mark.parametrize("lam,expected", [
    (0.0, [1, 1]), (np.pi, [1, -1]), (np.pi / 2, [1, 1j]),
])
def test_u1_cases(lam, expected):
    np.testing.assert_allclose(gates.u1(lam), np.diag(expected), atol=1e-15)


def test_u3_cases():
    np.testing.assert_allclose(gates.u3(0, 0, 0), np.eye(2), atol=1e-15)
    np.testing.assert_allclose(gates.u3(np.pi, 0, np.pi), gates.x(), atol=1e-15)
    np.testing.assert_allclose(gates.u3(np.pi / 2, 0, np.pi), gates.h(), atol=1e-15)


@pytest.mark.parametrize("g", [gates.x(), gates.h(), gates.cnot()])
def test_involutions(g):
    np.testing.assert_allclose(g @ g, np.eye(len(g)), atol=1e-15)


def test_controlled_cases():
    np.testing.assert_array_equal(gates.controlled(gates.x()), gates.cnot())
    np.testing.assert_array_equal(gates.controlled(np.eye(2)), np.eye(4))
    np.testing.assert_allclose(gates.controlled(gates.u1(0.3)), np.diag([1, 1, 1, np.exp(0.3j)]))
    with pytest.raises(UnitarityError):
        gates.controlled(np.ones((2, 2)))


def test_cnot_little_endian():
    # control qubit 1, target qubit 0: |10> (index 2) -> |11> (index 3)
    assert gates.cnot()[3, 2] == 1 and gates.cnot()[2, 3] == 1


@settings(max_examples=50)
@given(a=angle, b=angle, c=angle)
def test_constructors_are_unitary(a, b, c):
    for g in (gates.u1(a), gates.u3(a, b, c), gates.controlled(gates.u3(a, b, c))):
        check_unitary(g, atol=1e-12)


@settings(max_examples=50)
@given(phi=angle, lam=angle)
def test_u3_zero_theta_is_u1(phi, lam):
    assert gates.projectively_equal(gates.u3(0, phi, lam), gates.u1(phi + lam), atol=1e-12)


def test_fixed_gates_unitary():
    for g in (gates.x(), gates.h(), gates.pauli_z(), gates.cnot(), *gates.PAULIS):
        check_unitary(g, atol=1e-12)


@settings(max_examples=80)
@given(seed=st.integers(0, 2**31 - 1))
def test_zyz_roundtrip(seed):
    from scipy.stats import unitary_group
    u = unitary_group.rvs(2, random_state=seed)
    theta, phi, lam, gamma = gates.zyz_params(u)
    np.testing.assert_allclose(np.exp(1j * gamma) * gates.u3(theta, phi, lam), u, atol=1e-12)


def test_global_phase_between():
    z = gates.global_phase_between(1j * gates.h(), gates.h())
    assert z == pytest.approx(1j)
    assert gates.global_phase_between(gates.x(), gates.h()) is None


def test_canonical_angle():
    assert gates.canonical_angle(-np.pi / 2) == pytest.approx(3 * np.pi / 2)
    assert 0 <= gates.canonical_angle(7 * np.pi) < gates.TWO_PI
