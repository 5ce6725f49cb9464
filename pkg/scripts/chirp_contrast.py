#!/usr/bin/env python3
"""The headline contrast experiment: the unimodular chirp exp(i|x|^{4/3}) is a
bounded multiplier for the oscillator-weighted first-order space but not for
the flat-weight one.  Prints both norm sequences side by side.

    python3 scripts/chirp_contrast.py
"""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from focklab.calibration import load_calibration
from focklab.multipliers import chirp43
from focklab.operators import boundedness_probe, classical_sobolev_probe


def main() -> int:
    th = load_calibration().growth_thresholds
    Ns = (8, 16, 32, 64)
    h = boundedness_probe(chirp43(), 1.0, Ns, th)
    c = classical_sobolev_probe(chirp43(), 1.0, Ns, th)
    print(f"{'N':>4s} {'oscillator side':>16s} {'flat side':>12s}")
    for N, a, b in zip(Ns, h.values, c.values):
        print(f"{N:4d} {a:16.4f} {b:12.4f}")
    print(f"\noscillator side: {h.classification} (max/min {h.max_min:.3f})")
    print(f"flat side:       {c.classification} (last/first {c.last_first:.3f})")
    print(f"thresholds: stable below {th.S:.3f}, growing above {th.G:.3f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
