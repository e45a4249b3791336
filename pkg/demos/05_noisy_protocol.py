"""Shot-based protocol runs with the ibmqx4 calibration noise."""
import numpy as np

from rydotoc.analysis import Provenance, sweep
from rydotoc.noise import NoiseModel, table1_noise_model
from rydotoc.protocol import ProtocolConfig

cfg = ProtocolConfig()
model = table1_noise_model(rng_seed=0)
print("readout errors:", model.readout_error)
print("1q / 2q gate errors:", model.gate_error_1q, model.gate_error_2q)

clean = sweep(cfg, 8.0, 9, Provenance.PROTOCOL_EXACT)
noisy = sweep(cfg, 8.0, 9, Provenance.PROTOCOL_NOISY, noise=model, shots=4096, seed=1, workers=4)
ideal_shots = sweep(cfg, 8.0, 9, Provenance.PROTOCOL_NOISY, noise=NoiseModel.noiseless(), shots=4096, seed=1)
print(" t    exact    no-noise shots   noisy")
for a, b, c in zip(clean.points, ideal_shots.points, noisy.points):
    print(f"{a.t:4.1f}  {a.re_f_protocol:+.3f}   {b.re_f_protocol:+.3f}           {c.re_f_protocol:+.3f}")
print("max|Re F| clean vs noisy:", np.max(np.abs(clean.re_f)), np.max(np.abs(noisy.re_f)))
