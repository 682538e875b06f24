"""Writes the fixture channels and states used by the C++ tests."""
import json
import os
import sys

import numpy as np

from common import channel_json, kraus_from_isometry, matrix_json, random_isometry

out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")
os.makedirs(out, exist_ok=True)

rng = np.random.default_rng(20240611)
shapes = [(2, 2, 2)] * 4 + [(2, 3, 2), (3, 2, 3), (3, 3, 2), (3, 3, 4)]
for idx, (din, dout, denv) in enumerate(shapes):
    v = random_isometry(dout * denv, din, rng)
    with open(os.path.join(out, f"channel_{idx}.json"), "w") as f:
        json.dump(channel_json(kraus_from_isometry(v, dout, denv)), f)

# isotropic two-qubit state at visibility 0.9
phi = np.zeros(4, dtype=complex)
phi[0] = phi[3] = 1 / np.sqrt(2)
iso = 0.9 * np.outer(phi, phi.conj()) + 0.1 * np.eye(4) / 4
with open(os.path.join(out, "isotropic_09.json"), "w") as f:
    json.dump({"dim_a": 2, "dim_b": 2, "rho": matrix_json(iso)}, f)

g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
rho = g @ g.conj().T
rho /= np.trace(rho).real
with open(os.path.join(out, "mixed_22.json"), "w") as f:
    json.dump({"dim_a": 2, "dim_b": 2, "rho": matrix_json(rho)}, f)
