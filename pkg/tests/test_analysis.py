import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rydotoc.analysis import (
    Provenance,
    commutator_magnitude,
    commutator_norm_sq,
    dominant_period,
    otoc_exact,
    scrambling_time,
    sweep,
)
from rydotoc.errors import SizeError
from rydotoc.hamiltonian import HamiltonianSpec
from rydotoc.protocol import InitialState, ProtocolConfig, butterfly_operator, prepare_initial

SPEC = HamiltonianSpec()
V = butterfly_operator(np.pi / 4, 2)


@pytest.mark.parametrize("re_f,expected", [(1, 0), (-1, 4), (0.5, 1.0)])
def test_commutator_magnitude(re_f, expected):
    assert commutator_magnitude(re_f) == expected


def test_commutator_magnitude_range():
    with pytest.raises(ValueError):
        commutator_magnitude(1.5)


@pytest.mark.parametrize("n,dt,expected", [(2, 1.0, 1.0), (1, 1.0, 0.0), (8, 0.5, 1.5)])
def test_scrambling_time(n, dt, expected):
    assert scrambling_time(n, dt) == expected


def test_scrambling_time_errors():
    with pytest.raises(ValueError):
        scrambling_time(0, 1.0)
    with pytest.raises(ValueError):
        scrambling_time(2, 0.0)


def test_otoc_t0_and_identity():
    psi = prepare_initial(InitialState.PRODUCT_00)
    assert abs(otoc_exact(SPEC, V, V, psi, 0.0) - 1) < 1e-12
    assert otoc_exact(SPEC, np.eye(4), np.eye(4), psi, 2.7) == pytest.approx(1.0, abs=1e-14)


def test_otoc_dual_path_at_t1():
    psi = prepare_initial(InitialState.PRODUCT_00)
    a = otoc_exact(SPEC, V, V, psi, 1.0, method="overlap")
    b = otoc_exact(SPEC, V, V, psi, 1.0, method="operator")
    assert abs(a - b) < 1e-12


def test_otoc_size_error():
    with pytest.raises(SizeError):
        otoc_exact(SPEC, np.eye(2), np.eye(2), prepare_initial("product"), 1.0)


@settings(max_examples=60, deadline=None)
@given(t=st.floats(0, 8), bell=st.booleans())
def test_otoc_invariants(t, bell):
    psi = prepare_initial("bell" if bell else "product")
    f = otoc_exact(SPEC, V, V, psi, t)
    assert abs(f) <= 1 + 1e-12
    assert abs(f - otoc_exact(SPEC, V, V, psi, t, method="operator")) < 1e-12
    assert abs(commutator_norm_sq(SPEC, V, V, psi, t) - 2 * (1 - f.real)) < 1e-10


def test_default_sweep():
    sw = sweep(ProtocolConfig(), 8.0, 81)
    assert len(sw.points) == 81
    assert sw.value_at(0.0) == 1.0
    assert abs(sw.f_exact[0] - 1) < 1e-12
    np.testing.assert_allclose(sw.times, np.linspace(0, 8, 81))


@pytest.mark.parametrize("state", list(InitialState))
def test_exact_protocol_sweep_matches_oracle(state):
    cfg = ProtocolConfig(initial_state=state)
    oracle = sweep(cfg, 8.0, 41)
    prot = sweep(cfg, 8.0, 41, Provenance.PROTOCOL_EXACT)
    np.testing.assert_allclose(prot.re_f, oracle.re_f, atol=1e-9)


def test_sweep_workers_do_not_change_result():
    cfg = ProtocolConfig()
    a = sweep(cfg, 4.0, 9, Provenance.PROTOCOL_EXACT)
    b = sweep(cfg, 4.0, 9, Provenance.PROTOCOL_EXACT, workers=4)
    np.testing.assert_array_equal(a.re_f, b.re_f)


def test_sweep_arguments():
    with pytest.raises(ValueError):
        sweep(ProtocolConfig(), 8.0, 1)
    with pytest.raises(ValueError):
        sweep(ProtocolConfig(), 0.0, 10)


def test_dominant_period_reported():
    p = dominant_period(sweep(ProtocolConfig(), 8.0, 81))
    assert p is None or p > 0
