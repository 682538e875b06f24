"""Shared numpy helpers for the oracle scripts (independent of the C++ code)."""
import json

import numpy as np


def random_isometry(rows, cols, rng):
    g = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
    q, r = np.linalg.qr(g)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def kraus_from_isometry(v, dout, denv):
    # rows of v ordered (b, k)
    return [v[k::denv, :] for k in range(denv)]


def complement(kraus):
    denv = len(kraus)
    dout, din = kraus[0].shape
    return [np.array([[kraus[k][j, i] for i in range(din)] for k in range(denv)]) for j in range(dout)]


def choi(kraus):
    dout, din = kraus[0].shape
    j = np.zeros((din * dout, din * dout), dtype=complex)
    for k in kraus:
        v = np.concatenate([k[:, i] for i in range(din)])
        j += np.outer(v, v.conj())
    return j


def ptranspose_b(m, da, db):
    return m.reshape(da, db, da, db).transpose(0, 3, 2, 1).reshape(da * db, da * db)


def ptrace_b(m, da, db):
    return np.trace(m.reshape(da, db, da, db), axis1=1, axis2=3)


def erasure(d, p):
    ks = []
    if p < 1:
        k = np.zeros((d + 1, d), dtype=complex)
        k[:d, :] = np.sqrt(1 - p) * np.eye(d)
        ks.append(k)
    if p > 0:
        for i in range(d):
            k = np.zeros((d + 1, d), dtype=complex)
            k[d, i] = np.sqrt(p)
            ks.append(k)
    return ks


def amplitude_damping(g):
    ks = [np.array([[1, 0], [0, np.sqrt(1 - g)]], dtype=complex)]
    if g > 0:
        ks.append(np.array([[0, np.sqrt(g)], [0, 0]], dtype=complex))
    return ks


def identity(d):
    return [np.eye(d, dtype=complex)]


def depolarizing(d, p):
    ks = []
    for a in range(d):
        for b in range(d):
            w = (1 - p + p / d**2) if a == 0 and b == 0 else p / d**2
            if w <= 0:
                continue
            m = np.zeros((d, d), dtype=complex)
            for j in range(d):
                m[(j + a) % d, j] = np.exp(2j * np.pi * b * j / d)
            ks.append(np.sqrt(w) * m)
    return ks


def matrix_json(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def channel_json(kraus):
    dout, din = kraus[0].shape
    return {"dim_in": din, "dim_out": dout, "kraus": [matrix_json(k) for k in kraus]}


def load_channel(path):
    with open(path) as f:
        j = json.load(f)
    return [np.array([[complex(a, b) for a, b in row] for row in k]) for k in j["kraus"]]


def entropy(rho):
    ev = np.linalg.eigvalsh((rho + rho.conj().T) / 2)
    ev = ev[ev > 1e-12]
    return float(-(ev * np.log2(ev)).sum())


def h2(x):
    if x <= 0 or x >= 1:
        return 0.0
    return float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))
