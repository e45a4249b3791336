"""Dump the full protocol circuit as OpenQASM 2.0 and load it back."""
from rydotoc.circuit import circuit_unitary, lower_to_basis
from rydotoc.protocol import ProtocolConfig, full_protocol_circuit
from rydotoc.qasm import emit_qasm, parse_qasm

cfg = ProtocolConfig(time=1.0, evolution_mode="trotter", trotter_steps=1, initial_state="bell")
circ = lower_to_basis(full_protocol_circuit(cfg))
text = emit_qasm(circ)
print("\n".join(text.splitlines()[:12]))
print(f"... {len(text.splitlines())} lines")

back = parse_qasm(text)
print("op-identical after round trip:", back.ops == circ.ops)
