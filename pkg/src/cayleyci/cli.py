"""Command-line driver: ``cayleyci <subcommand> --n N [--set SPEC] ...``.

Exit codes: 0 success, 1 usage error, 2 infeasible (cap or budget exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys

from .cayley import (ConnectionSet, analyse, build_cayley, digraph_automorphisms, enumeration_cap,
                     find_wreath_witness, is_normal, local_aut_nonnormal_check, parse_set,
                     serialize_set)
from .census import SUMMARY_HEADER, all_masks, mask_orbits, verify_theorem, write_jsonl
from .constructions import d8_counterexample_report, ladder, ladder_witness_subgroup
from .dihedral import holomorph, holomorph_structure_report, phi
from .errors import CapExceeded

EXIT_OK, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2

NEEDS_SET = {"build", "aut", "normal", "ci", "wreath"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cayleyci", description="Cayley digraphs of dihedral groups: normality and CI.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, with_set=False):
        p.add_argument("--n", type=int, required=True)
        if with_set:
            p.add_argument("--set", dest="set_text", required=True,
                           help='comma separated tokens "a^i" or "b*a^i"; "" is the empty set')
        p.add_argument("--out", default=None, help="JSON report path (default stdout)")
        return p

    for name in ("build", "aut", "normal", "ci", "wreath"):
        p = common(sub.add_parser(name), with_set=True)
        p.add_argument("--export-graph", default=None, help="write a DOT description here")
    p = common(sub.add_parser("ladder"))
    p.add_argument("--export-graph", default=None)
    sub.add_parser("d8").add_argument("--out", default=None)
    common(sub.add_parser("holomorph"))
    p = common(sub.add_parser("verify-theorem"))
    p.add_argument("--mode", choices=("digraph", "graph"), default="digraph")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--soundness", action="store_true")
    p = common(sub.add_parser("orbits"))
    p.add_argument("--mode", choices=("digraph", "graph"), default="digraph")
    return ap


def _emit(report: dict, out: str | None) -> None:
    text = json.dumps(report, sort_keys=True, indent=2)
    if out is None:
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def _export(gamma, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(gamma.to_dot())


def _run(args) -> int:
    n = getattr(args, "n", None)
    if n is not None and n < 2:
        raise UsageError("n must be >= 2")
    if args.command in NEEDS_SET:
        S = parse_set(args.set_text, n)
        gamma = build_cayley(n, S)
        _export(gamma, args.export_graph)
    cmd = args.command
    status = EXIT_OK

    if cmd == "build":
        report = {"n": n, "S": serialize_set(S), "is_graph": gamma.is_graph,
                  "vertices": 2 * n, "arc_count": len(gamma.arcs()),
                  "out": [list(o) for o in gamma.out]}
    elif cmd == "aut":
        A = digraph_automorphisms(gamma)
        report = {"n": n, "S": serialize_set(S), "aut_order": A.order(),
                  "base": list(A.base), "generators": A.to_json()["generators"]}
    elif cmd == "normal":
        nr = is_normal(gamma)
        report = {"n": n, "S": serialize_set(S), "normal": nr.verdict,
                  "aut_order": nr.aut_order, "aut_gs_order": nr.aut_gs_order}
    elif cmd == "ci":
        report = analyse(gamma, cap=enumeration_cap()).to_json()
        if report["ci"] is None:
            status = EXIT_INFEASIBLE
    elif cmd == "wreath":
        w = find_wreath_witness(n, S)
        g = local_aut_nonnormal_check(n, S)
        report = {"n": n, "S": serialize_set(S),
                  "wreath_witness": None if w is None else w.to_json(),
                  "local_aut": None if g is None else g.to_json(),
                  "certified_non_normal": w is not None or g is not None}
    elif cmd == "ladder":
        gamma = ladder(n)
        _export(gamma, args.export_graph)
        report = analyse(gamma, cap=enumeration_cap()).to_json()
        if n % 2 == 0 and n > 4:
            W = ladder_witness_subgroup(n)
            report["witness_subgroup"] = W.to_json()
            report["witness_in_aut"] = W.is_subgroup_of(digraph_automorphisms(gamma))
    elif cmd == "d8":
        report = d8_counterexample_report().to_json()
    elif cmd == "holomorph":
        if n < 3:
            raise UsageError("holomorph needs n >= 3")
        report = {"n": n, "order": holomorph(n).order(), "expected_order": 2 * n * n * phi(n)}
        if n % 2:
            hr = holomorph_structure_report(n)
            report.update(passed=hr.passed, sylow2_order=hr.sylow2_order,
                          hol_two_part=hr.hol_two_part, checks=hr.checks)
    elif cmd == "verify-theorem":
        v = verify_theorem(n, args.mode, exhaustive=args.exhaustive, budget=args.budget,
                           samples=args.samples, seed=args.seed, jobs=args.jobs,
                           soundness=args.soundness)
        path = args.out or f"census-n{n}-{args.mode}.jsonl"
        write_jsonl(v, path)
        print(SUMMARY_HEADER)
        print(v.summary_line())
        return EXIT_OK if v.complete else EXIT_INFEASIBLE
    elif cmd == "orbits":
        orbs = mask_orbits(n, all_masks(n, args.mode))
        report = {"n": n, "mode": args.mode, "orbit_count": len(orbs),
                  "orbits": [{"rep": serialize_set(ConnectionSet.from_mask(n, r)),
                              "size": len(m)} for r, m in sorted(orbs.items())]}
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(cmd)
    report["command"] = cmd
    _emit(report, args.out)
    return status


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return _run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
