"""Compile exp(-i pi/4 S_Z) and a random unitary into x/h/u1/u3/cx gates."""
import numpy as np
from scipy.stats import unitary_group

from rydotoc import gates
from rydotoc.circuit import circuit_unitary, lower_to_basis
from rydotoc.compiler import compile_unitary, controlled_unitary, two_level_decompose
from rydotoc.protocol import butterfly_operator

v = butterfly_operator(np.pi / 4, 2)
print("V diagonal:", np.round(np.diag(v), 6))

circ, alpha = compile_unitary(v, 2)
print("ops:", circ.count_ops(), " residual phase:", round(alpha, 6))
print("matches V up to phase:", gates.projectively_equal(circuit_unitary(circ), v))

u = unitary_group.rvs(4, random_state=1)
print("two-level factors for a random 4x4:", len(two_level_decompose(u)))
c, _ = compile_unitary(u, 2)
print("reconstruction error:", np.max(np.abs(circuit_unitary(c) - u)))

cv, _ = controlled_unitary(v, 2, control=2)
low = lower_to_basis(cv)
print("controlled-V in basis gates:", low.count_ops())
