#!/usr/bin/env python3
"""Write a synthetic ECG-like trace (sum of Gaussian P, Q, R, S, T waves plus
baseline wander) as a one-column CSV. Sampled at 360 Hz like MIT-BIH records."""

import argparse
import math
import random

WAVES = [  # (offset in s from the R peak, width in s, amplitude in mV)
    (-0.20, 0.025, 0.12),
    (-0.03, 0.010, -0.15),
    (0.00, 0.012, 1.10),
    (0.03, 0.010, -0.25),
    (0.28, 0.045, 0.30),
]


def trace(n, fs, rr, seed):
    rnd = random.Random(seed)
    beats, t = [], 0.35
    while t < n / fs + 1:
        beats.append(t)
        t += rr * (1 + 0.04 * rnd.uniform(-1, 1))
    out = []
    for i in range(n):
        x = i / fs
        v = -0.3 + 0.05 * math.sin(2 * math.pi * 0.3 * x)
        for b in beats:
            if abs(x - b) > 0.6:
                continue
            for off, w, a in WAVES:
                v += a * math.exp(-0.5 * ((x - b - off) / w) ** 2)
        v += 0.005 * rnd.gauss(0, 1)
        out.append(v)
    return out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("out")
    ap.add_argument("--samples", type=int, default=2000)
    ap.add_argument("--rate", type=float, default=360.0)
    ap.add_argument("--rr", type=float, default=0.8, help="mean beat interval in s")
    ap.add_argument("--seed", type=int, default=100)
    a = ap.parse_args()
    with open(a.out, "w") as f:
        f.write("mV\n")
        for v in trace(a.samples, a.rate, a.rr, a.seed):
            f.write(f"{v:.6f}\n")


if __name__ == "__main__":
    main()
