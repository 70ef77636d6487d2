"""Run the dihedral normal-CI census over a range of n and print a summary table.

Example: python3 scripts/reproduce_classification.py --max-n 7 --graph-max-n 9 --outdir census
"""

import argparse
import sys
from pathlib import Path

from cayleyci.census import SUMMARY_HEADER, verify_theorem, write_jsonl


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--max-n", type=int, default=7, help="largest n for the digraph census")
    ap.add_argument("--graph-max-n", type=int, default=9, help="largest n for the graph census")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--outdir", type=Path, default=None, help="write census-n{n}-{mode}.jsonl here")
    args = ap.parse_args(argv)

    if args.outdir:
        args.outdir.mkdir(parents=True, exist_ok=True)
    print(SUMMARY_HEADER + f" {'seconds':>8}")
    ok = True
    for mode, top in (("digraph", args.max_n), ("graph", args.graph_max_n)):
        for n in range(args.min_n, top + 1):
            v = verify_theorem(n, mode, jobs=args.jobs, keep_records=args.outdir is not None)
            print(v.summary_line() + f" {v.seconds:>8.2f}", flush=True)
            if args.outdir:
                write_jsonl(v, args.outdir / f"census-n{n}-{mode}.jsonl")
            ok &= v.complete and v.claim_matches_prediction
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
