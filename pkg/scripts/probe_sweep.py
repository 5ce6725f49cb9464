#!/usr/bin/env python3
"""Sweep the boundedness probe over the multiplier registry and smoothness
orders, writing a plot-ready CSV of weighted operator norms per truncation.

    python3 scripts/probe_sweep.py --out probe_sweep.csv
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from focklab.calibration import load_calibration
from focklab.multipliers import bump, chirp43, constant, modulation, signum
from focklab.operators import boundedness_probe, classical_sobolev_probe


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", default="probe_sweep.csv")
    ap.add_argument("--s", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])
    ap.add_argument("--N", type=int, nargs="+", default=[8, 16, 32, 64])
    args = ap.parse_args()

    th = load_calibration().growth_thresholds
    mults = [constant(1.0), modulation(0.7), bump(), signum(), chirp43()]
    rows = ["multiplier,side,s,N,norm,classification"]
    for m in mults:
        for s in args.s:
            for probe in (boundedness_probe, classical_sobolev_probe):
                r = probe(m, s, args.N, th)
                for N, val in zip(r.N_list, r.values):
                    rows.append(f"{r.multiplier},{r.side},{s!r},{N},{val!r},{r.classification}")
                print(f"{r.multiplier:14s} {r.side:9s} s={s:<4g} -> {r.classification:12s} "
                      f"last/first={r.last_first:.3f}")
    Path(args.out).write_text("\n".join(rows) + "\n")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
