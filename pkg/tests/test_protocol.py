import numpy as np
import pytest

from rydotoc import gates
from rydotoc.analysis import heisenberg, otoc_exact
from rydotoc.circuit import circuit_unitary, simulate
from rydotoc.errors import CapabilityError
from rydotoc.protocol import (
    EvolutionMode,
    InitialState,
    ProtocolConfig,
    branch_state,
    build_protocol_circuit,
    butterfly_operator,
    evolution_circuit,
    heisenberg_w_circuit,
    prepare_initial,
    preparation_circuit,
    run_protocol,
)
from rydotoc.statevector import expectation_x

STATES = list(InitialState)


def oracle_re(cfg):
    v, w = cfg.operators()
    return otoc_exact(cfg.hamiltonian, v, w, prepare_initial(cfg.initial_state), cfg.time).real


def test_initial_states():
    np.testing.assert_array_equal(prepare_initial(InitialState.PRODUCT_00).amplitudes, [1, 0, 0, 0])
    s = 1 / np.sqrt(2)
    np.testing.assert_allclose(prepare_initial(InitialState.BELL_BLOCKADE).amplitudes, [0, s, s, 0], atol=1e-15)
    with pytest.raises(CapabilityError):
        preparation_circuit(InitialState.BELL_BLOCKADE, 3)


def test_bell_gate_sequence():
    ops = [(op.kind, op.controls, op.targets) for op in preparation_circuit("bell").ops]
    assert ops == [("X", (), (0,)), ("H", (), (1,)), ("CNOT", (1,), (0,))]


def test_butterfly():
    np.testing.assert_allclose(butterfly_operator(0.0, 2), np.eye(4))
    np.testing.assert_allclose(butterfly_operator(np.pi / 4, 2), np.diag([-1j, 1, 1, 1j]), atol=1e-15)


@pytest.mark.parametrize("state", STATES)
def test_time_zero(state):
    cfg = ProtocolConfig(initial_state=state)
    assert run_protocol(cfg) == pytest.approx(1.0, abs=1e-12)
    joint = branch_state(cfg).amplitudes
    psi = prepare_initial(state).amplitudes
    expected = np.concatenate([psi, psi]) / np.sqrt(2)
    z = gates.global_phase_between(joint.reshape(-1, 1), expected.reshape(-1, 1))
    assert z is not None


def test_oracle_agreement_at_t1():
    cfg = ProtocolConfig(time=1.0)
    assert abs(run_protocol(cfg) - oracle_re(cfg)) < 1e-10


@pytest.mark.parametrize("state", STATES)
def test_protocol_matches_oracle_on_grid(state):
    for t in np.linspace(0, 8, 20):
        cfg = ProtocolConfig(time=float(t), initial_state=state)
        x = run_protocol(cfg)
        assert -1 <= x <= 1
        assert abs(x - oracle_re(cfg)) < 1e-9


@pytest.mark.parametrize("state", STATES)
@pytest.mark.parametrize("t", [0.4, 1.0, 2.5, 6.3])
def test_branch_states(state, t):
    cfg = ProtocolConfig(time=t, initial_state=state)
    v, w = cfg.operators()
    wt = heisenberg(cfg.hamiltonian, w, t)
    psi = prepare_initial(state).amplitudes
    joint = branch_state(cfg).amplitudes
    np.testing.assert_allclose(joint[:4], v @ wt @ psi / np.sqrt(2), atol=1e-9)
    np.testing.assert_allclose(joint[4:], wt @ v @ psi / np.sqrt(2), atol=1e-9)


def test_heisenberg_w_at_zero():
    cfg = ProtocolConfig()
    np.testing.assert_allclose(heisenberg(cfg.hamiltonian, cfg.operators()[1], 0.0), cfg.operators()[1], atol=1e-12)
    assert gates.projectively_equal(circuit_unitary(heisenberg_w_circuit(cfg)), cfg.operators()[1], atol=1e-12)


def test_trotter_close_to_oracle():
    cfg = ProtocolConfig(time=2.0, evolution_mode="trotter", trotter_steps=200)
    assert abs(run_protocol(cfg) - oracle_re(cfg)) < 0.05


def test_trotter_backward_is_negated_time():
    # negating every angle is not the adjoint of a non-symmetric product;
    # the mismatch U(-t)U(t) - I shrinks first-order with the step count
    def mismatch(steps):
        cfg = ProtocolConfig(time=0.8, evolution_mode="trotter", trotter_steps=steps)
        fwd = circuit_unitary(evolution_circuit(cfg, 0.8))
        back = circuit_unitary(evolution_circuit(cfg, -0.8))
        return np.max(np.abs(back @ fwd - np.eye(4)))

    assert 8 < mismatch(30) / mismatch(300) < 12


def test_explicit_operators():
    cfg = ProtocolConfig(time=1.3, v=np.eye(4), w=np.eye(4))
    assert run_protocol(cfg) == pytest.approx(1.0, abs=1e-10)


def test_protocol_circuit_width():
    assert build_protocol_circuit(ProtocolConfig(time=0.5)).n_qubits == 3
    with pytest.raises(ValueError):
        ProtocolConfig(time=-1)
