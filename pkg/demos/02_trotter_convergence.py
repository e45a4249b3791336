"""First-order Trotter error against the exact propagator."""
import numpy as np

from rydotoc.circuit import circuit_unitary
from rydotoc.hamiltonian import HamiltonianSpec, TrotterPlan, build_hamiltonian, exact_evolution, trotterized_evolution

spec = HamiltonianSpec()  # Omega = V12 = 1, sigma_z sigma_z coupling
t = 1.0
exact = exact_evolution(build_hamiltonian(spec), t)

steps = [10, 20, 40, 80, 160]
errors = []
for n in steps:
    u = circuit_unitary(trotterized_evolution(spec, TrotterPlan(t, n)))
    errors.append(np.max(np.abs(u - exact)))
    print(f"steps={n:4d}  max-norm error={errors[-1]:.3e}")

slope = np.polyfit(np.log(steps), np.log(errors), 1)[0]
print(f"log-log slope: {slope:.3f}  (first order -> -1)")
