"""Direct purification oracles for the state-distillation objectives."""
import json
import os

import numpy as np

here = os.path.dirname(os.path.abspath(__file__))


def load(name):
    with open(os.path.join(here, "..", "tests", "fixtures", name)) as f:
        j = json.load(f)
    rho = np.array([[complex(re, im) for re, im in row] for row in j["rho"]])
    return j["dim_a"], j["dim_b"], rho


def H(m):
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    w = w[w > 1e-14]
    return float(-(w * np.log2(w)).sum())


def purification(da, db, rho):
    w, v = np.linalg.eigh(rho)
    de = len(w)
    psi = np.zeros((da, db, de), dtype=complex)
    for k in range(de):
        if w[k] > 0:
            psi[:, :, k] = np.sqrt(w[k]) * v[:, k].reshape(da, db)
    return psi


def branches(da, db, rho, kraus):
    psi = purification(da, db, rho)
    out = []
    for K in kraus:
        phi = np.einsum("ij,jbe->ibe", K, psi)
        p = float(np.vdot(phi, phi).real)
        rb = np.einsum("ibe,ice->bc", phi, phi.conj())
        re = np.einsum("ibe,ibf->ef", phi, phi.conj())
        out.append((p, rb, re))
    return out


def d1(da, db, rho, kraus):
    return sum(p * (H(rb / p) - H(re / p)) for p, rb, re in branches(da, db, rho, kraus) if p > 1e-15)


def k1_trivial_t(da, db, rho, kraus):
    br = [b for b in branches(da, db, rho, kraus) if b[0] > 1e-15]
    rb = sum(b[1] for b in br)
    re = sum(b[2] for b in br)
    ib = H(rb) - sum(p * H(x / p) for p, x, _ in br)
    ie = H(re) - sum(p * H(y / p) for p, _, y in br)
    return ib - ie


for name in ["mixed_22.json", "isotropic_09.json"]:
    da, db, rho = load(name)
    trivial = [np.eye(da)]
    z = [np.diag([1.0 if i == k else 0.0 for i in range(da)]) for k in range(da)]
    t = np.sqrt(0.7)
    weak = [np.diag([t, np.sqrt(0.2)]), np.diag([np.sqrt(0.3), np.sqrt(0.8)])]
    print(name)
    print("  d1 trivial:", repr(d1(da, db, rho, trivial)))
    print("  d1 z-basis:", repr(d1(da, db, rho, z)))
    print("  d1 weak:", repr(d1(da, db, rho, weak)))
    print("  k1 z-basis trivial T:", repr(k1_trivial_t(da, db, rho, z)))
    print("  k1 weak trivial T:", repr(k1_trivial_t(da, db, rho, weak)))
