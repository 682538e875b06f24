"""Independent cvxpy oracles for the SDP quantities; writes sdp_oracle.json.

Formulations differ on purpose from the C++ ones:
  * diamond norm of a general map: Watrous primal (maximization) form;
  * distance between two channels: 2 min ||Tr_B Z||_inf, Z >= J, Z >= 0;
  * PPT distance: nuclear norm objective.
"""
import glob
import json
import os

import cvxpy as cp
import numpy as np

from common import (amplitude_damping, choi, complement, erasure, identity, depolarizing,
                    load_channel, ptranspose_b)

SOLVER = "CLARABEL"
here = os.path.dirname(os.path.abspath(__file__))
fixtures = os.path.join(here, "..", "tests", "fixtures")


def diamond_general(j, da, db):
    n = da * db
    x = cp.Variable((n, n), complex=True)
    r0 = cp.Variable((da, da), hermitian=True)
    r1 = cp.Variable((da, da), hermitian=True)
    ib = np.eye(db)
    big = cp.bmat([[cp.kron(r0, ib), x], [x.H, cp.kron(r1, ib)]])
    cons = [big >> 0, r0 >> 0, r1 >> 0, cp.trace(r0) == 1, cp.trace(r1) == 1]
    obj = cp.Maximize(cp.real(cp.trace(j.conj().T @ x)))
    return cp.Problem(obj, cons).solve(solver=SOLVER)


def channel_distance_expr(j_diff, da, db, extra):
    z = cp.Variable((da * db, da * db), hermitian=True)
    t = cp.Variable()
    cons = [z >> 0, z - j_diff >> 0, t * np.eye(da) - cp.partial_trace(z, [da, db], axis=1) >> 0] + extra
    return z, t, cons


def eps_degradable(kn, kt):
    jn = choi(kn)
    da = kn[0].shape[1]
    db = kn[0].shape[0]
    de = kt[0].shape[0]
    jt = choi(kt)
    jd = cp.Variable((db * de, db * de), hermitian=True)
    cons = [jd >> 0, cp.partial_trace(jd, [db, de], axis=1) == np.eye(db)]
    # J(D o N) = Tr_B[(J_N^{T_B} (x) I_E)(I_A (x) J_D)] on A (x) B (x) E
    left = np.kron(ptranspose_b(jn, da, db), np.eye(de))
    right = cp.kron(np.eye(da), jd)
    comp = cp.partial_trace(left @ right, [da, db, de], axis=1)
    comp = (comp + comp.H) / 2
    z, t, c2 = channel_distance_expr(jt - comp, da, de, [])
    prob = cp.Problem(cp.Minimize(2 * t), cons + c2)
    return prob.solve(solver=SOLVER)


def channel_distance(ka, kb):
    da = ka[0].shape[1]
    db = ka[0].shape[0]
    z, t, cons = channel_distance_expr(choi(ka) - choi(kb), da, db, [])
    return cp.Problem(cp.Minimize(2 * t), cons).solve(solver=SOLVER)


def ppt_distance(kraus):
    da = kraus[0].shape[1]
    db = kraus[0].shape[0]
    rho = choi(kraus) / da
    n = da * db
    s = cp.Variable((n, n), hermitian=True)
    cons = [s >> 0, cp.partial_transpose(s, [da, db], axis=1) >> 0, cp.real(cp.trace(s)) == 1]
    return cp.Problem(cp.Minimize(0.5 * cp.normNuc(rho - s)), cons).solve(solver=SOLVER)


def transpose_bound(kraus):
    da = kraus[0].shape[1]
    db = kraus[0].shape[0]
    return float(np.log2(diamond_general(ptranspose_b(choi(kraus), da, db), da, db)))


def all_for(kraus):
    kc = complement(kraus)
    return {
        "transpose_q_upper": transpose_bound(kraus),
        "transpose_q_upper_c": transpose_bound(kc),
        "eps_degradable": eps_degradable(kraus, kc),
        "eps_antidegradable": eps_degradable(kc, kraus),
        "ppt_distance": ppt_distance(kraus),
        "ppt_distance_c": ppt_distance(kc),
    }


named = {
    "identity_2": identity(2),
    "erasure_2_0.25": erasure(2, 0.25),
    "erasure_2_0.5": erasure(2, 0.5),
    "erasure_2_0.75": erasure(2, 0.75),
    "amplitude_damping_0.3": amplitude_damping(0.3),
    "amplitude_damping_0.7": amplitude_damping(0.7),
    "depolarizing_2_0.3": depolarizing(2, 0.3),
    "depolarizing_3_0.5": depolarizing(3, 0.5),
}
out = {"named": {}, "fixtures": {}, "distances": {}}
for name, k in named.items():
    out["named"][name] = all_for(k)
    print(name, out["named"][name], flush=True)
for path in sorted(glob.glob(os.path.join(fixtures, "channel_*.json"))):
    name = os.path.splitext(os.path.basename(path))[0]
    out["fixtures"][name] = all_for(load_channel(path))
    print(name, out["fixtures"][name], flush=True)
out["distances"]["identity_2__depolarizing_2_1"] = channel_distance(identity(2), depolarizing(2, 1.0))
out["distances"]["identity_2__depolarizing_2_1_general"] = diamond_general(
    choi(identity(2)) - choi(depolarizing(2, 1.0)), 2, 2)
out["distances"]["channel_0__channel_1"] = channel_distance(
    load_channel(os.path.join(fixtures, "channel_0.json")), load_channel(os.path.join(fixtures, "channel_1.json")))
print(out["distances"])
with open(os.path.join(fixtures, "sdp_oracle.json"), "w") as f:
    json.dump(out, f, indent=1, sort_keys=True)
