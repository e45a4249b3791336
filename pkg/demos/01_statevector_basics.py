"""Build a Bell pair by hand and read off probabilities and <X>."""
import numpy as np

from rydotoc import gates
from rydotoc.statevector import apply_1q, apply_controlled, expectation_x, new_zero_state

psi = new_zero_state(2)
psi = apply_1q(psi, gates.h(), 1)
psi = apply_controlled(psi, gates.x(), control=1, target=0)
print("amplitudes:", np.round(psi.amplitudes, 4))
print("P(00), P(11):", psi.probabilities()[[0, 3]])

# qubit 0 is the low bit: X on qubit 0 sends |00> to basis index 1
print("X on q0 of |00> ->", np.nonzero(apply_1q(new_zero_state(2), gates.x(), 0).amplitudes)[0])

plus = apply_1q(new_zero_state(1), gates.h(), 0)
print("<X> of |+> =", expectation_x(plus, 0))
