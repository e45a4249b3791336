"""Exact OTOC, commutator norm, scrambling time and time sweeps."""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .errors import SizeError
from .hamiltonian import HamiltonianSpec, build_hamiltonian, exact_evolution
from .noise import NoiseModel, run_protocol_noisy
from .protocol import EvolutionMode, ProtocolConfig, prepare_initial, run_protocol
from .statevector import StateVector, check_unitary


class Provenance(enum.Enum):
    ORACLE = "oracle"
    PROTOCOL_EXACT = "protocol-exact"
    PROTOCOL_TROTTER = "trotter"
    PROTOCOL_NOISY = "noisy"


def heisenberg(spec: HamiltonianSpec, w, t: float) -> np.ndarray:
    """``W_t = U(-t) W U(t)`` with the exact propagator."""
    u = exact_evolution(build_hamiltonian(spec), t)
    return u.conj().T @ np.asarray(w, dtype=complex) @ u


def _check_dims(spec, v, w, psi):
    dim = 2**spec.n_spins
    v = check_unitary(v)
    w = check_unitary(w)
    if v.shape != (dim, dim) or w.shape != (dim, dim):
        raise SizeError(f"operators must be {dim}x{dim} for {spec.n_spins} spins")
    amps = psi.amplitudes if isinstance(psi, StateVector) else np.asarray(psi, dtype=complex)
    if amps.size != dim:
        raise SizeError(f"state has {amps.size} amplitudes, expected {dim}")
    return v, w, amps


def otoc_exact(spec: HamiltonianSpec, v, w, psi, t: float, method: str = "overlap") -> complex:
    """``F(t) = <psi| W_t^dag V^dag W_t V |psi>``.

    ``method="overlap"`` evaluates ``<V W_t psi | W_t V psi>`` from two
    statevectors; ``method="operator"`` forms the full operator product.
    The two are independent evaluations of the same quantity.
    """
    v, w, amps = _check_dims(spec, v, w, psi)
    wt = heisenberg(spec, w, t)
    if method == "overlap":
        left = v @ (wt @ amps)
        right = wt @ (v @ amps)
        return complex(np.vdot(left, right))
    if method == "operator":
        op = wt.conj().T @ v.conj().T @ wt @ v
        return complex(amps.conj() @ op @ amps)
    raise ValueError(f"unknown method {method!r}")


def commutator_norm_sq(spec: HamiltonianSpec, v, w, psi, t: float) -> float:
    """``<psi| [W_t, V]^dag [W_t, V] |psi>`` computed directly from the commutator."""
    v, w, amps = _check_dims(spec, v, w, psi)
    wt = heisenberg(spec, w, t)
    comm = wt @ v - v @ wt
    return float(np.real(np.vdot(comm @ amps, comm @ amps)))


def commutator_magnitude(re_f: float) -> float:
    """``2 (1 - Re F)``, the expected squared commutator for unitary V, W."""
    if not -1.0 - 1e-12 <= re_f <= 1.0 + 1e-12:
        raise ValueError(f"Re F must lie in [-1, 1], got {re_f}")
    return 2.0 * (1.0 - re_f)


def scrambling_time(n_spins: int, delta_t: float) -> float:
    """``delta_t * log2(N)``: time for a two-spin perturbation applied every
    ``delta_t`` to spread over N spins."""
    if n_spins < 1:
        raise ValueError("n_spins must be >= 1")
    if delta_t <= 0:
        raise ValueError("delta_t must be positive")
    return delta_t * float(np.log2(n_spins))


@dataclass(frozen=True)
class OtocPoint:
    t: float
    re_f_protocol: float
    f_exact: complex
    commutator_sq: float


@dataclass
class OtocSweep:
    config: dict
    points: list[OtocPoint]
    provenance: Provenance

    @property
    def times(self) -> np.ndarray:
        return np.array([p.t for p in self.points])

    @property
    def re_f(self) -> np.ndarray:
        return np.array([p.re_f_protocol for p in self.points])

    @property
    def f_exact(self) -> np.ndarray:
        return np.array([p.f_exact for p in self.points])

    def mean_abs_re_f(self) -> float:
        return float(np.mean(np.abs(self.re_f)))

    def value_at(self, t: float) -> float:
        """Protocol Re F at the grid point nearest ``t``."""
        k = int(np.argmin(np.abs(self.times - t)))
        return float(self.re_f[k])


def _point_value(cfg: ProtocolConfig, provenance: Provenance, noise, shots, seed) -> float:
    if provenance is Provenance.PROTOCOL_EXACT:
        return run_protocol(replace_mode(cfg, EvolutionMode.EXACT_ORACLE))
    if provenance is Provenance.PROTOCOL_TROTTER:
        return run_protocol(replace_mode(cfg, EvolutionMode.TROTTER))
    if provenance is Provenance.PROTOCOL_NOISY:
        model = noise if noise is not None else NoiseModel.noiseless()
        return run_protocol_noisy(cfg, model, shots, seed=seed)
    raise ValueError(f"no protocol run for {provenance}")


def replace_mode(cfg: ProtocolConfig, mode: EvolutionMode) -> ProtocolConfig:
    return replace(cfg, evolution_mode=mode)


def sweep(cfg: ProtocolConfig, t_max: float = 8.0, n_points: int = 81,
          provenance: Provenance = Provenance.ORACLE, *, noise=None, shots: int = 8192,
          seed: int = 0, workers: int | None = None) -> OtocSweep:
    """Evaluate the OTOC on a uniform grid over ``[0, t_max]``.

    Every point carries the oracle F. ``re_f_protocol`` comes from the
    oracle itself, the exact or Trotterized protocol circuit, or the noisy
    shot-based protocol, per ``provenance``. Points may run in parallel;
    noisy points draw from per-point child seeds of ``seed`` so the output
    does not depend on ``workers``.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    if t_max <= 0:
        raise ValueError("t_max must be positive")
    provenance = Provenance(provenance)
    times = np.linspace(0.0, t_max, n_points)
    spec = cfg.hamiltonian
    v, w = cfg.operators()
    psi = prepare_initial(cfg.initial_state, cfg.n_system)
    seeds = np.random.SeedSequence(seed).spawn(n_points)

    def one(k: int) -> OtocPoint:
        t = float(times[k])
        f = otoc_exact(spec, v, w, psi, t)
        if provenance is Provenance.ORACLE:
            re_f = float(np.clip(f.real, -1.0, 1.0))
        else:
            re_f = _point_value(cfg.at(t), provenance, noise, shots, seeds[k])
        return OtocPoint(t, re_f, f, commutator_magnitude(re_f))

    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            points = list(pool.map(one, range(n_points)))
    else:
        points = [one(k) for k in range(n_points)]
    snapshot = cfg.snapshot()
    snapshot.pop("time")
    snapshot.update(t_max=t_max, n_points=n_points)
    if provenance is Provenance.PROTOCOL_NOISY:
        snapshot.update(shots=shots, seed=seed)
    return OtocSweep(snapshot, points, provenance)


def dominant_period(sw: OtocSweep) -> float | None:
    """Period of the strongest non-zero Fourier component of Re F, if any."""
    re_f = sw.re_f - sw.re_f.mean()
    if np.allclose(re_f, 0):
        return None
    dt = sw.times[1] - sw.times[0]
    spectrum = np.abs(np.fft.rfft(re_f))
    freqs = np.fft.rfftfreq(re_f.size, dt)
    k = int(np.argmax(spectrum[1:])) + 1
    return float(1.0 / freqs[k])
