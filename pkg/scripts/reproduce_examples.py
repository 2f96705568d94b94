"""Print the stratification reports for the three worked systems.

Usage: python3 scripts/reproduce_examples.py [--format json|text] [--outdir DIR]
"""
from __future__ import annotations

import argparse
import pathlib

from stratcartan import fixtures as fx
from stratcartan import pipeline as pl
from stratcartan.cli import render_stratify
from stratcartan.serialize import canonical_json


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("json", "text"), default="text")
    ap.add_argument("--outdir", type=pathlib.Path)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    failed = 0
    for case, g in sorted(fx.golden().items()):
        job = pl.JobSpec(g["algebra"], tuple(g["summands"]), order=tuple(g["order"]), seed=args.seed, golden=case)
        out = pl.run_job(job)
        failed += not out.ok
        text = canonical_json(out.report) if args.format == "json" else render_stratify(out.report)
        if args.outdir:
            args.outdir.mkdir(parents=True, exist_ok=True)
            (args.outdir / f"{case}.{args.format}").write_text(text, encoding="utf-8")
            print(f"{case}: {'ok' if out.ok else 'FAILED'} -> {args.outdir / f'{case}.{args.format}'}")
        else:
            print(f"==== {case}")
            print(text)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
