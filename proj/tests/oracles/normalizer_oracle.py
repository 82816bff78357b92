#!/usr/bin/env python3
"""Step-by-step arithmetic reference for the normalization schemes.

A scripted sequence of D-terms and accept decisions is pushed through each
scheme by hand-written recurrences (one small function per scheme, no shared
helpers with the C++ code). The first iteration is evaluated unnormalized and
seeds the memory. Writes normalizer_trace.json.
"""
import json
import math
import sys
from pathlib import Path

LAM = (0.5, 0.15, 0.45)
W0, W, CUTOFF, EPS = 0.1, 0.75, 1.5, 1e-12

STEPS = [
    # (d1, d2, d3, accepted)
    (1.25, -0.002, 0.5, True),
    (-0.4, 0.003, 0.0, False),
    (2.0, -0.001, -0.25, True),
    (0.3, 0.004, 1.5, False),
    (-1.1, 0.0005, 0.75, True),
]


def alpha_h_of(d, z):
    e = -sum(l * zi * di for l, zi, di in zip(LAM, z, d))
    return math.exp(max(-700.0, min(700.0, e)))


def run(scheme):
    rows = []
    mem = None  # dict once seeded
    for d1, d2, d3, acc in STEPS:
        d = (d1, d2, d3)
        mag = [max(abs(x), EPS) for x in d]
        if mem is None:
            z = [1.0, 1.0, 1.0]
            ah = alpha_h_of(d, z)
            z0 = 1.0
        else:
            if scheme == "z1":
                z = [W / mag[i] + (1 - W) / max(mem["dmax"][i], mag[i]) for i in range(3)]
                ah = alpha_h_of(d, z)
                z0 = W0 / max(ah, EPS) + (1 - W0) / max(max(mem["ahmax"], ah), EPS)
            elif scheme == "z2":
                z = [W / mag[i] + (1 - W) / mem["dprev"][i] for i in range(3)]
                ah = alpha_h_of(d, z)
                z0 = W0 / max(ah, EPS) + (1 - W0) / max(mem["ahprev"], EPS)
            elif scheme == "hybrid":
                z = [W / mag[i] + (1 - W) / mem["dacc"][i] for i in range(3)]
                ah = alpha_h_of(d, z)
                z0 = W0 / max(ah, EPS) + (1 - W0) / max(mem["ahprev"], EPS)
            else:
                raise ValueError(scheme)
        alpha = min(CUTOFF, z0 * ah)
        if mem is None:
            mem = {"dprev": mag[:], "dmax": mag[:], "dacc": mag[:], "ahprev": ah, "ahmax": ah,
                   "amin": alpha, "amax": alpha}
        else:
            mem["dprev"] = mag[:]
            mem["dmax"] = [max(a, b) for a, b in zip(mem["dmax"], mag)]
            if acc:
                mem["dacc"] = mag[:]
            mem["ahprev"] = ah
            mem["ahmax"] = max(mem["ahmax"], ah)
            mem["amin"] = min(mem["amin"], alpha)
            mem["amax"] = max(mem["amax"], alpha)
        rows.append({"d": list(d), "accepted": acc, "z": z, "z0": z0, "alpha_h": ah, "alpha": alpha,
                     "state": {k: (v[:] if isinstance(v, list) else v) for k, v in mem.items()}})
    return rows


def main(out_dir):
    out = {"lambda": LAM, "w0": W0, "w": W, "cutoff": CUTOFF, "eps": EPS,
           "schemes": {s: run(s) for s in ("z1", "z2", "hybrid")}}
    path = Path(out_dir) / "normalizer_trace.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures")
