"""Exhaustive and sampled censuses of connection sets of D_2n.

Connection sets are bitmasks over the 2n-1 non-identity elements in
(exp, flip) order.  Normality and CI verdicts are constant on Aut(D_2n)-orbits
of connection sets, so each orbit is analysed once through its least mask.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations

from .cayley import (ConnectionSet, analyse, build_cayley, find_wreath_witness,
                     local_aut_nonnormal_check, nonidentity_elements, serialize_set)
from .dihedral import automorphism_perms, to_vertex, vinv
from .errors import CapExceeded

DEFAULT_BABAI_CAP = 1000


def predicted_claim(n: int) -> bool:
    """True when every normal Cayley digraph of D_2n should be CI."""
    return n in (2, 4) or n % 2 == 1


# ---------------------------------------------------------------------------
# masks and symmetry
# ---------------------------------------------------------------------------

def _bit_vertices(n: int) -> list:
    return [to_vertex(e) for e in nonidentity_elements(n)]


def _mask_maps(n: int) -> list:
    """For each automorphism, the image bit of every bit."""
    verts = _bit_vertices(n)
    index = {v: j for j, v in enumerate(verts)}
    return [[index[p[v]] for v in verts] for p in automorphism_perms(n)]


def _apply(mask: int, bitmap: list) -> int:
    out = 0
    j = 0
    while mask:
        if mask & 1:
            out |= 1 << bitmap[j]
        mask >>= 1
        j += 1
    return out


def graph_masks(n: int) -> list:
    """All inverse-closed masks, built from inverse-pair and involution blocks."""
    verts = _bit_vertices(n)
    index = {v: j for j, v in enumerate(verts)}
    blocks, seen = [], set()
    for j, v in enumerate(verts):
        if j in seen:
            continue
        k = index[vinv(n, v)]
        seen.update({j, k})
        blocks.append((1 << j) | (1 << k))
    masks = []
    for sel in range(1 << len(blocks)):
        m = 0
        for i, b in enumerate(blocks):
            if sel >> i & 1:
                m |= b
        masks.append(m)
    return sorted(masks)


def all_masks(n: int, mode: str) -> list:
    if mode == "digraph":
        return list(range(1 << (2 * n - 1)))
    if mode == "graph":
        return graph_masks(n)
    raise ValueError(f"unknown mode {mode!r}")


def mask_orbits(n: int, masks) -> dict:
    """Map representative (least mask) -> sorted orbit members among ``masks``."""
    maps = _mask_maps(n)
    wanted = set(masks)
    rep_of: dict = {}
    orbits: dict = {}
    for m in sorted(wanted):
        if m in rep_of:
            continue
        orb = {_apply(m, bm) for bm in maps}
        rep = min(orb)
        members = sorted(orb & wanted)
        for x in members:
            rep_of[x] = rep
        orbits.setdefault(rep, []).extend(members)
    return {r: sorted(set(v)) for r, v in orbits.items()}


def reduce_by_symmetry(sets: list) -> list:
    """Aut(D_2n)-orbit representatives of ``sets``: (least set, orbit size), where
    the orbit size counts the full orbit (not only members present in ``sets``)."""
    if not sets:
        return []
    n = sets[0].n
    maps = _mask_maps(n)
    out, done = [], set()
    for S in sets:
        m = S.mask
        if m in done:
            continue
        orb = {_apply(m, bm) for bm in maps}
        done |= orb
        out.append((ConnectionSet.from_mask(n, min(orb)), len(orb)))
    return sorted(out, key=lambda t: t[0].mask)


# ---------------------------------------------------------------------------
# per-set analysis (worker)
# ---------------------------------------------------------------------------

def analyse_mask(n: int, mask: int, babai_cap: int = DEFAULT_BABAI_CAP) -> dict:
    S = ConnectionSet.from_mask(n, mask)
    gamma = build_cayley(n, S)
    try:
        an = analyse(gamma, babai=True, cap=babai_cap)
    except CapExceeded as exc:
        return {"n": n, "mask": mask, "S": serialize_set(S), "status": "infeasible",
                "error": str(exc)}
    rec = an.to_json()
    rec["mask"] = mask
    rec["status"] = "ok"
    rec["ci_status"] = None if an.ci is None else an.ci.status
    return rec


def _analyse_star(args):
    return analyse_mask(*args)


def soundness_record(n: int, mask: int) -> dict:
    S = ConnectionSet.from_mask(n, mask)
    w = find_wreath_witness(n, S)
    g = local_aut_nonnormal_check(n, S)
    return {"wreath": w is not None, "local_aut": g is not None}


# ---------------------------------------------------------------------------
# theorem check
# ---------------------------------------------------------------------------

@dataclass
class TheoremVerdict:
    n: int
    mode: str
    total_sets_scanned: int
    normal_count: int
    normal_non_ci_examples: list
    claim_matches_prediction: bool
    exhaustive: bool = True
    complete: bool = True
    orbit_count: int = 0
    ci_all_count: int = 0
    ci_unknown_count: int = 0
    infeasible_count: int = 0
    soundness_violations: int | None = None
    seed: int | None = None
    seconds: float = 0.0
    records: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {
            "n": self.n, "mode": self.mode, "exhaustive": self.exhaustive,
            "complete": self.complete, "seed": self.seed,
            "total_sets_scanned": self.total_sets_scanned, "orbit_count": self.orbit_count,
            "normal_count": self.normal_count,
            "normal_non_ci_count": len(self.normal_non_ci_examples),
            "normal_non_ci_examples": [serialize_set(S) for S in self.normal_non_ci_examples],
            "ci_all_count": self.ci_all_count, "ci_unknown_count": self.ci_unknown_count,
            "infeasible_count": self.infeasible_count,
            "soundness_violations": self.soundness_violations,
            "claim_matches_prediction": self.claim_matches_prediction,
            "seconds": round(self.seconds, 3),
        }

    def summary_line(self) -> str:
        return (f"{self.n:>3} {self.mode:<8} {self.total_sets_scanned:>7} {self.orbit_count:>6} "
                f"{self.normal_count:>7} {len(self.normal_non_ci_examples):>7} "
                f"{'yes' if self.complete else 'no':>8} "
                f"{'MATCH' if self.claim_matches_prediction else 'MISMATCH':>8}")


SUMMARY_HEADER = (f"{'n':>3} {'mode':<8} {'sets':>7} {'orbits':>6} {'normal':>7} "
                  f"{'N-nonCI':>7} {'complete':>8} {'verdict':>8}")


def _sampled_masks(n: int, mode: str, samples: int, seed: int) -> list:
    rng = random.Random(seed)
    width = 2 * n - 1
    pool = set()
    if mode == "digraph":
        for k in range(0, 5):
            for combo in combinations(range(width), k):
                pool.add(sum(1 << j for j in combo))
        for _ in range(samples):
            pool.add(rng.getrandbits(width))
    else:
        gm = graph_masks(n)
        for m in gm:
            if bin(m).count("1") <= 4:
                pool.add(m)
        for _ in range(samples):
            pool.add(rng.choice(gm))
    full = (1 << width) - 1
    pool |= {full ^ m for m in list(pool)}
    return sorted(pool)


def verify_theorem(n: int, mode: str = "digraph", *, exhaustive: bool = True,
                   budget: int | None = None, samples: int = 500, seed: int = 0,
                   jobs: int = 1, babai_cap: int = DEFAULT_BABAI_CAP,
                   soundness: bool = False, keep_records: bool = True,
                   reduce: bool = True) -> TheoremVerdict:
    """Scan connection sets of D_2n, flag normal non-CI ones, and compare with the
    prediction (none exist iff n in {2, 4} or n odd).

    ``budget`` bounds the number of sets; an exhaustive scan larger than the
    budget stops early and is flagged incomplete.  With ``reduce=False`` every
    set is analysed on its own instead of through its orbit representative.
    """
    t0 = time.time()
    if n < 2:
        raise ValueError("n must be >= 2")
    if exhaustive:
        masks = all_masks(n, mode)
        complete = budget is None or len(masks) <= budget
        if not complete:
            masks = masks[:budget]
        used_seed = None
    else:
        masks = _sampled_masks(n, mode, samples, seed)
        complete = True
        if budget is not None and len(masks) > budget:
            masks, complete = masks[:budget], False
        used_seed = seed

    orbits = mask_orbits(n, masks) if reduce else {m: [m] for m in masks}
    reps = sorted(orbits)
    tasks = [(n, r, babai_cap) for r in reps]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_analyse_star, tasks, chunksize=max(1, len(tasks) // (8 * jobs))))
    else:
        results = [_analyse_star(t) for t in tasks]
    by_rep = dict(zip(reps, results))

    records = []
    normal_count = ci_all = ci_unknown = infeasible = 0
    examples = []
    for rep in reps:
        res = by_rep[rep]
        for m in orbits[rep]:
            rec = dict(res)
            rec["mask"] = m
            rec["S"] = serialize_set(ConnectionSet.from_mask(n, m))
            rec["orbit_rep"] = rep
            if m != rep:
                rec["witness"] = None  # witnesses are stated for the representative
            records.append(rec)
            if res.get("status") != "ok":
                infeasible += 1
                continue
            if res["normal"]:
                normal_count += 1
                if res["ci"] is False:
                    examples.append(ConnectionSet.from_mask(n, m))
            if res["ci"] is True:
                ci_all += 1
            elif res["ci"] is None:
                ci_unknown += 1

    violations = None
    if soundness:
        violations = 0
        for rec in records:
            if rec.get("status") != "ok":
                continue
            s = soundness_record(n, rec["mask"])
            rec["wreath_witness"] = s["wreath"]
            rec["local_aut_hit"] = s["local_aut"]
            if (s["wreath"] or s["local_aut"]) and rec["normal"]:
                violations += 1

    records.sort(key=lambda r: r["mask"])
    examples.sort(key=lambda S: S.mask)
    complete = complete and infeasible == 0
    matches = (len(examples) == 0) == predicted_claim(n)
    return TheoremVerdict(
        n=n, mode=mode, total_sets_scanned=len(masks), normal_count=normal_count,
        normal_non_ci_examples=examples, claim_matches_prediction=matches, exhaustive=exhaustive,
        complete=complete, orbit_count=len(mask_orbits(n, masks)) if not reduce else len(reps), ci_all_count=ci_all,
        ci_unknown_count=ci_unknown, infeasible_count=infeasible,
        soundness_violations=violations, seed=used_seed, seconds=time.time() - t0,
        records=records if keep_records else [],
    )


def write_jsonl(verdict: TheoremVerdict, path) -> None:
    with open(path, "w") as fh:
        for rec in verdict.records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
        fh.write(json.dumps({"summary": verdict.to_json()}, sort_keys=True) + "\n")
