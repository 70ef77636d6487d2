"""Print the ladder-graph reports for even n and the n=4 exception."""

import argparse
import json

from cayleyci.cayley import analyse
from cayleyci.constructions import d8_counterexample_report, ladder, ladder_witness_subgroup


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", type=int, nargs="*", default=[6, 8, 10, 12])
    args = ap.parse_args(argv)
    print(f"{'n':>3} {'|Aut|':>6} {'normal':>6} {'CI':>5} {'regular':>7} {'witness':>7}")
    for n in args.ns:
        an = analyse(ladder(n))
        W = ladder_witness_subgroup(n)
        found = any(H == W for H in an.ci.subgroups)
        print(f"{n:>3} {an.aut.order():>6} {str(an.normality.verdict):>6} "
              f"{str(an.ci.verdict):>5} {an.ci.regular_subgroup_count:>7} {str(found):>7}")
    print("\nn=4:")
    print(json.dumps(d8_counterexample_report().to_json(), indent=2))


if __name__ == "__main__":
    main()
