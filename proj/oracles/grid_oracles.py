"""Brute-force grid oracles (no SDP)."""
import numpy as np

from common import choi, depolarizing, identity

# 1/2 ||id - depol||_diamond for a qubit: the channels are unitarily covariant,
# so the input can be taken in Schmidt form cos t|00> + sin t|11>.
best = 0.0
for t in np.linspace(0.0, np.pi / 2, 200001):
    psi = np.zeros(4)
    psi[0], psi[3] = np.cos(t), np.sin(t)
    rho = np.outer(psi, psi)
    out_id = rho
    # (id (x) depol_1)(rho) = rho_A (x) I/2
    rho_a = np.diag([np.cos(t) ** 2, np.sin(t) ** 2])
    out_dep = np.kron(rho_a, np.eye(2) / 2)
    best = max(best, 0.5 * np.abs(np.linalg.eigvalsh(out_id - out_dep)).sum())
print("half diamond norm id - depol (= max trace distance):", best)

# PPT distance of the Bell state: twirling reduces to isotropic states
# F*Phi + (1-F)(I-Phi)/3, which are PPT iff F <= 1/2.
phi = np.zeros(4)
phi[0] = phi[3] = 1 / np.sqrt(2)
P = np.outer(phi, phi)
best = 1.0
for f in np.linspace(0.0, 0.5, 50001):
    s = f * P + (1 - f) * (np.eye(4) - P) / 3
    best = min(best, 0.5 * np.abs(np.linalg.eigvalsh(P - s)).sum())
print("ppt distance Bell:", best)
