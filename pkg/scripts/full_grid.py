#!/usr/bin/env python3
"""Run the full-scale grid: n up to 500, 2^20 samples, 10 graphs per cell.

This is an hours-scale run on a single core. Start with scripts/desk_bench.py
unless you need the full curves.
"""

import argparse

from neurocut import ExperimentConfig, run_experiment


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", default="full-results")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--base-seed", type=int, default=2022)
    ap.add_argument("--methods", default="lif-gw,lif-trevisan,solver-rounding,random")
    args = ap.parse_args()

    cfg = ExperimentConfig.full_scale(
        out_dir=args.out_dir, jobs=args.jobs, base_seed=args.base_seed,
        methods=tuple(m.strip() for m in args.methods.split(",")))
    result = run_experiment(cfg)
    for gid, msg in result.failures:
        print(f"failed {gid}: {msg}")
    print(f"{len(result.rows)} rows written to {args.out_dir}/results.csv")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
