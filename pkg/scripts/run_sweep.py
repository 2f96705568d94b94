"""Exhaustive sweep over basic tau-rigid sums of a fixture zoo, in every TF order.

Usage: python3 scripts/run_sweep.py [--algebra ex1] [--workers N] [--out sweep.json]
"""
from __future__ import annotations

import argparse
import collections
import time

from stratcartan import pipeline as pl
from stratcartan.serialize import canonical_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebra", default="ex1", choices=("ex1", "ex2"))
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out")
    args = ap.parse_args()

    t0 = time.perf_counter()
    summary, failures = pl.sweep(args.algebra, seed=args.seed, workers=args.workers)
    dt = time.perf_counter() - t0

    by_size = collections.Counter(len(r["summands"]) for r in summary["records"])
    print(f"{summary['candidates']} candidate subsets, {summary['tau_rigid_sums']} tau-rigid, "
          f"{summary['instances']} (sum, order) instances in {dt:.2f}s")
    print("instances by number of summands:", dict(sorted(by_size.items())))
    print("M in F(Delta):", summary["membership"])
    print(f"diagonal C: {summary['C_diagonal']}   R != 0: {summary['R_nonzero']}")
    for f in failures:
        print("FAIL:", f)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(summary))
    raise SystemExit(1 if failures else 0)


if __name__ == "__main__":
    main()
