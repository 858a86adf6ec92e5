#!/usr/bin/env python3
"""Full desk-scale benchmark: every suite problem x every solver with the
default parameters, then performance profiles over wall time and final
objective value.
"""

import argparse
import os
import time

import curveopt as co


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--records", default="records.csv")
    ap.add_argument("--prefix", default="profile", help="profile output prefix")
    ap.add_argument("--jobs", type=int, default=int(os.environ.get("CURVEOPT_JOBS", "1")))
    args = ap.parse_args()

    solvers = [k.value for k in co.SolverKind]
    cfg = co.RunConfig(search=co.SearchConfig(memory=20))

    t0 = time.perf_counter()
    records = co.run_grid(co.DEFAULT_SUITE_KEYS, solvers, cfg, parallelism=args.jobs)
    elapsed = time.perf_counter() - t0
    co.write_records(records, args.records)

    counts = {s: 0 for s in solvers}
    for r in records:
        counts[r.solver] += r.status == "Converged"
    print(f"{len(records)} runs in {elapsed:.0f}s; converged: {counts}")
    print(f"wrote {args.records}")

    for metric in ["time", "fstar"]:
        curves = co.performance_profile(records, metric=metric)
        csv_path = f"{args.prefix}_{metric}.csv"
        svg_path = f"{args.prefix}_{metric}.svg"
        co.write_profiles(curves, csv_path)
        co.write_profile_svg(curves, svg_path, metric=metric)
        print(f"wrote {csv_path} and {svg_path}")


if __name__ == "__main__":
    main()
