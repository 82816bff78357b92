#!/usr/bin/env python3
"""Exact-rational reference for the roughness priors and D-terms.

K_xy is formed as Dy * K * Dx^T with explicit difference-operator matrices
(central rows inside, first-order one-sided rows at the ends). The C++ code
loops over nodes instead, so the two routes are independent.

Writes prior_4x4.json: a seeded random 4x4 field, a candidate made by a 2x2
shift, K_xy for both, both roughness values, and diff terms for a pair of
seeded boundary vectors.
"""
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

import sympy as sp


def diff_matrix(length, h):
    D = sp.zeros(length, length)
    for t in range(length):
        if t == 0:
            D[t, 0], D[t, 1] = -1 / h, 1 / h
        elif t == length - 1:
            D[t, length - 2], D[t, length - 1] = -1 / h, 1 / h
        else:
            D[t, t - 1], D[t, t + 1] = -1 / (2 * h), 1 / (2 * h)
    return D


def roughness(M):
    r, c = M.shape
    s = 0
    for i in range(r):
        for j in range(c):
            if i > 0:
                s += (M[i, j] - M[i - 1, j]) ** 2
            if j > 0:
                s += (M[i, j] - M[i, j - 1]) ** 2
    return s


def kxy(K, hx, hy):
    n, m = K.shape
    return diff_matrix(n, hy) * K * diff_matrix(m, hx).T


def dyadic(rng, lo, hi, bits=20):
    # Values with short binary expansions keep the C++ inputs exact.
    return sp.Rational(rng.randint(int(lo * 2**bits), int(hi * 2**bits)), 2**bits)


def main(out_dir):
    rng = random.Random(20150601)
    n = m = 4
    hx = sp.Rational(2, 3)
    hy = sp.Rational(1, 2)
    K = sp.Matrix(n, m, lambda i, j: dyadic(rng, 0.5, 2.0))
    omega = sp.Rational(rng.randint(-5000, 5000), 2**20)
    Kc = K.copy()
    for di in (0, 1):
        for dj in (0, 1):
            Kc[1 + di, 2 + dj] += omega

    nb = 2 * (n + m) - 4
    sigma = sp.Rational(1, 10)
    d = [dyadic(rng, 50, 150) for _ in range(nb)]
    d_cand = [x + dyadic(rng, -1, 1) for x in d]
    d_curr = [x + dyadic(rng, -1, 1) for x in d]
    f_cand = sum((a - b) ** 2 for a, b in zip(d, d_cand)) / sigma**2
    f_curr = sum((a - b) ** 2 for a, b in zip(d, d_curr)) / sigma**2

    KxyA = kxy(K, hx, hy)
    KxyC = kxy(Kc, hx, hy)
    out = {
        "n": n, "m": m, "hx": float(hx), "hy": float(hy), "sigma": float(sigma),
        "k": [float(v) for v in K], "k_candidate": [float(v) for v in Kc],
        "kxy": [float(v) for v in KxyA], "kxy_candidate": [float(v) for v in KxyC],
        "roughness": float(roughness(K)), "mixed_roughness": float(roughness(KxyA)),
        "roughness_candidate": float(roughness(Kc)),
        "mixed_roughness_candidate": float(roughness(KxyC)),
        "d": [float(v) for v in d], "d_candidate": [float(v) for v in d_cand],
        "d_current": [float(v) for v in d_curr],
        "misfit_candidate": float(f_cand), "misfit_current": float(f_curr),
        "d1": float((f_cand - f_curr) / 2),
        "d2": float(roughness(Kc) - roughness(K)),
        "d3": float(roughness(KxyC) - roughness(KxyA)),
    }
    path = Path(out_dir) / "prior_4x4.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
