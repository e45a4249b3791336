"""Statevector simulation of an interferometric OTOC measurement on a
two-atom Rydberg-type Ising model, with circuit compilation, Trotterized
evolution, device-style noise and OpenQASM 2.0 export."""

__version__ = "0.1.0"

from .analysis import (
    OtocPoint,
    OtocSweep,
    Provenance,
    commutator_magnitude,
    commutator_norm_sq,
    dominant_period,
    heisenberg,
    otoc_exact,
    scrambling_time,
    sweep,
)
from .circuit import Circuit, Op, circuit_unitary, lower_to_basis, simulate
from .compiler import (
    TwoLevelFactor,
    compile_two_level,
    compile_unitary,
    controlled_unitary,
    gray_path,
    two_level_decompose,
)
from .errors import (
    CapabilityError,
    EmissionError,
    QasmSyntaxError,
    QubitIndexError,
    SizeError,
    SymmetryError,
    UnitarityError,
)
from .hamiltonian import (
    HamiltonianSpec,
    InteractionForm,
    TrotterPlan,
    build_hamiltonian,
    exact_evolution,
    trotter_step_circuit,
    trotterized_evolution,
)
from .noise import (
    NoiseModel,
    ShotCounts,
    apply_readout_error,
    run_protocol_noisy,
    sample_shots,
    table1_noise_model,
)
from .protocol import (
    EvolutionMode,
    InitialState,
    ProtocolConfig,
    build_protocol_circuit,
    butterfly_operator,
    full_protocol_circuit,
    prepare_initial,
    preparation_circuit,
    run_protocol,
)
from .qasm import emit_qasm, parse_qasm
from .statevector import (
    StateVector,
    apply_1q,
    apply_controlled,
    apply_dense,
    expectation_x,
    inner_product,
    new_zero_state,
)
