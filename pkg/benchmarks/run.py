"""Monroe-SC scaling: wall time and memo size as n grows.

Usage: python3 benchmarks/run.py [--seeds 3] [--out results.csv]
"""

import argparse
import csv
import sys
import time

from committee_dp.generators import generate
from committee_dp.monroe_sc import solve_monroe_sc_sum
from committee_dp.recognition import detect_sc

SIZES = [(8, 5, 2), (12, 6, 3), (16, 7, 4), (20, 8, 4), (25, 9, 3), (30, 10, 3)]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--out", default="-")
    args = ap.parse_args(argv)
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "m", "k", "seed", "score", "memo_size", "elapsed_ms"])
    for n, m, k in SIZES:
        for seed in range(args.seeds):
            profile = generate("sc-approval", n, m, seed)
            order = detect_sc(profile).order
            start = time.perf_counter()
            sol = solve_monroe_sc_sum(profile, order, k)
            ms = (time.perf_counter() - start) * 1000
            writer.writerow([n, m, k, seed, sol.score, sol.extra["memo_size"], f"{ms:.1f}"])
            out.flush()


if __name__ == "__main__":
    main()
