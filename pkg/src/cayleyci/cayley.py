"""Cayley digraphs of D_2n: automorphisms, normality and the CI-property."""

from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field
from typing import Iterable

from .dihedral import (DihedralAutomorphism, DihedralElement, FactoredN, automorphism_perms,
                       elements, from_vertex, full_aut_group, right_mult_perm, to_vertex, vinv,
                       vmul, aut_to_perm)
from .errors import CapExceeded
from .graphaut import DEFAULT_NODE_BUDGET, DEFAULT_VERTEX_CAP, automorphism_group
from .perm import (DEFAULT_ENUMERATION_CAP, GroupKind, PermGroup, Permutation,
                   enumerate_regular_subgroups, subgroup_conjugacy_search)

CAP_ENV = "CAYLEY_CI_CAP"


def enumeration_cap() -> int:
    """Aut-group enumeration cap, overridable through ``CAYLEY_CI_CAP``."""
    raw = os.environ.get(CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUMERATION_CAP


# ---------------------------------------------------------------------------
# connection sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConnectionSet:
    n: int
    members: frozenset

    def __post_init__(self):
        ms = frozenset(self.members)
        for m in ms:
            if m.n != self.n:
                raise ValueError(f"element {m} is not in D_{2 * self.n}")
        if DihedralElement.identity(self.n) in ms:
            raise ValueError("the identity cannot lie in a connection set")
        object.__setattr__(self, "members", ms)

    @classmethod
    def from_vertices(cls, n: int, vertices: Iterable[int]) -> "ConnectionSet":
        return cls(n, frozenset(from_vertex(n, v) for v in vertices))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "ConnectionSet":
        nonid = nonidentity_elements(n)
        return cls(n, frozenset(e for j, e in enumerate(nonid) if mask >> j & 1))

    @property
    def vertices(self) -> frozenset:
        return frozenset(to_vertex(m) for m in self.members)

    @property
    def mask(self) -> int:
        nonid = nonidentity_elements(self.n)
        return sum(1 << j for j, e in enumerate(nonid) if e in self.members)

    def sorted(self) -> list:
        return sorted(self.members, key=lambda e: e.key)

    def inverse_closed(self) -> bool:
        return all(m.inverse() in self.members for m in self.members)

    def complement(self) -> "ConnectionSet":
        return ConnectionSet(self.n, frozenset(nonidentity_elements(self.n)) - self.members)

    def image(self, perm: tuple) -> "ConnectionSet":
        return ConnectionSet.from_vertices(self.n, (perm[v] for v in self.vertices))

    def __len__(self) -> int:
        return len(self.members)

    def __str__(self) -> str:
        return serialize_set(self)


def nonidentity_elements(n: int) -> list:
    return [e for e in elements(n) if not e.is_identity()]


_TOKEN = re.compile(r"^(b\*)?a\^(\d+)$")


def parse_set(text: str, n: int) -> ConnectionSet:
    """Parse ``"a^1,a^5,b*a^0"``-style connection sets."""
    if n < 2:
        raise ValueError("n must be >= 2")
    text = text.strip()
    if not text:
        return ConnectionSet(n, frozenset())
    seen = []
    for tok in text.split(","):
        tok = tok.strip().replace(" ", "")
        m = _TOKEN.match(tok)
        if not m:
            raise ValueError(f"malformed token {tok!r}; expected a^i or b*a^i")
        exp = int(m.group(2))
        if exp >= n:
            raise ValueError(f"exponent {exp} out of range for n={n}")
        el = DihedralElement(n, exp, 1 if m.group(1) else 0)
        if el.is_identity():
            raise ValueError("identity a^0 is not allowed in a connection set")
        if el in seen:
            raise ValueError(f"duplicate token {tok!r}")
        seen.append(el)
    return ConnectionSet(n, frozenset(seen))


def serialize_set(S: ConnectionSet) -> str:
    return ",".join(str(e) for e in S.sorted())


# ---------------------------------------------------------------------------
# digraphs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CayleyDigraph:
    n: int
    S: ConnectionSet
    out: tuple  # out[g] = sorted vertices s*g

    @property
    def order(self) -> int:
        return 2 * self.n

    @property
    def is_graph(self) -> bool:
        return self.S.inverse_closed()

    def arcs(self) -> list:
        return [(u, v) for u in range(self.order) for v in self.out[u]]

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]

    def complement(self) -> "CayleyDigraph":
        return build_cayley(self.n, self.S.complement())

    def to_dot(self) -> str:
        n = self.n
        lines = [f'digraph "Cay(D{2 * n},{serialize_set(self.S)})" {{']
        for v in range(2 * n):
            lines.append(f'  {v} [label="{from_vertex(n, v)}"];')
        for u, v in self.arcs():
            lines.append(f"  {u} -> {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_cayley(n: int, S: ConnectionSet) -> CayleyDigraph:
    """Arcs (g, s g) for g in D_2n, s in S."""
    if S.n != n:
        raise ValueError("connection set modulus mismatch")
    sv = S.vertices
    if 0 in sv:
        raise ValueError("identity in connection set")
    out = tuple(tuple(sorted(vmul(n, s, g) for s in sv)) for g in range(2 * n))
    return CayleyDigraph(n, S, out)


def aut_g_s_perms(n: int, S: ConnectionSet) -> list:
    """Aut(D_2n, S) as raw vertex permutations (any n >= 2)."""
    sv = S.vertices
    return [p for p in automorphism_perms(n) if {p[v] for v in sv} == sv]


def aut_g_s(n: int, S: ConnectionSet) -> list:
    """Automorphisms of D_2n fixing S setwise.

    For n >= 3 these are :class:`DihedralAutomorphism` pairs; D_4 has
    automorphisms outside that family, so for n = 2 vertex permutations are
    returned instead.
    """
    if n == 2:
        return [Permutation(p) for p in aut_g_s_perms(n, S)]
    sv = S.vertices
    out = []
    for phi_ in full_aut_group(n):
        p = aut_to_perm(phi_).images
        if {p[v] for v in sv} == sv:
            out.append(phi_)
    return out


def normaliser_of_regular(n: int, S: ConnectionSet) -> PermGroup:
    """R(D_2n) x| Aut(D_2n, S), always a subgroup of the automorphism group."""
    gens = [right_mult_perm(n, 1), right_mult_perm(n, n)] + aut_g_s_perms(n, S)
    return PermGroup(2 * n, gens)


def digraph_automorphisms(gamma: CayleyDigraph, *, vertex_cap: int = DEFAULT_VERTEX_CAP,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> PermGroup:
    """Full automorphism group; works on the complement when |S| > n."""
    n = gamma.n
    if 2 * n > vertex_cap:
        raise CapExceeded(f"{2 * n} vertices exceeds cap {vertex_cap}")
    target = gamma.complement() if len(gamma.S) > n else gamma
    seeds = [right_mult_perm(n, 1), right_mult_perm(n, n)] + aut_g_s_perms(n, gamma.S)
    return automorphism_group(2 * n, [list(o) for o in target.out], seeds,
                              vertex_cap=vertex_cap, node_budget=node_budget)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class NormalityReport:
    n: int
    verdict: bool
    aut_order: int
    aut_gs_order: int
    witness: dict | None = None

    def __post_init__(self):
        assert self.verdict == (self.aut_order == 2 * self.n * self.aut_gs_order)


@dataclass
class CiReport:
    verdict: bool | None
    regular_subgroup_count: int
    non_conjugate_witness: PermGroup | None = None
    conjugators: list = field(default_factory=list)
    subgroups: list = field(default_factory=list)
    method: str = "normal"
    status: str = "ok"  # "ok" | "infeasible"


@dataclass
class WreathWitness:
    n: int
    H: frozenset  # of DihedralElement
    K: frozenset
    x: DihedralElement
    y: DihedralElement

    def to_json(self) -> dict:
        key = lambda e: e.key  # noqa: E731
        return {"H": [str(e) for e in sorted(self.H, key=key)],
                "K": [str(e) for e in sorted(self.K, key=key)],
                "x": str(self.x), "y": str(self.y)}


def is_normal(gamma: CayleyDigraph, A: PermGroup | None = None) -> NormalityReport:
    """Normal iff the vertex stabiliser equals Aut(D_2n, S), i.e. |A| = 2n |Aut(G,S)|."""
    if A is None:
        A = digraph_automorphisms(gamma)
    gs = len(aut_g_s_perms(gamma.n, gamma.S))
    order = A.order()
    return NormalityReport(gamma.n, order == 2 * gamma.n * gs, order, gs)


def regular_kind(n: int) -> GroupKind:
    return GroupKind.elementary_abelian_4() if n == 2 else GroupKind.dihedral(2 * n)


def is_ci_normal(gamma: CayleyDigraph, A: PermGroup | None = None,
                 normality: NormalityReport | None = None) -> CiReport:
    """CI test for normal digraphs: CI iff R(D_2n) is the only regular D_2n."""
    n = gamma.n
    if normality is None:
        normality = is_normal(gamma, A)
    if not normality.verdict:
        raise ValueError("is_ci_normal requires a normal Cayley digraph")
    # for normal digraphs the full group is the normaliser R(G) x| Aut(G,S)
    A = normaliser_of_regular(n, gamma.S)
    subs = enumerate_regular_subgroups(A, regular_kind(n))
    R = PermGroup(2 * n, [right_mult_perm(n, 1), right_mult_perm(n, n)])
    others = [H for H in subs if H != R]
    return CiReport(verdict=len(subs) == 1, regular_subgroup_count=len(subs),
                    non_conjugate_witness=others[0] if others else None,
                    subgroups=subs, method="normal")


def is_ci_babai(gamma: CayleyDigraph, A: PermGroup | None = None,
                cap: int | None = None) -> CiReport:
    """CI iff every regular subgroup isomorphic to D_2n is conjugate to R(D_2n) in A."""
    n = gamma.n
    cap = enumeration_cap() if cap is None else cap
    if A is None:
        A = digraph_automorphisms(gamma)
    if A.order() > cap:
        return CiReport(None, -1, method="babai", status="infeasible")
    subs = enumerate_regular_subgroups(A, regular_kind(n), cap=cap)
    R = PermGroup(2 * n, [right_mult_perm(n, 1), right_mult_perm(n, n)])
    conjugators, witness = [], None
    for H in subs:
        res = subgroup_conjugacy_search(A, R, H, cap=cap)
        if res.conjugator is None:
            witness = H
            break
        conjugators.append(res.conjugator)
    return CiReport(verdict=witness is None, regular_subgroup_count=len(subs),
                    non_conjugate_witness=witness, conjugators=conjugators,
                    subgroups=subs, method="babai")


# ---------------------------------------------------------------------------
# non-normality witnesses
# ---------------------------------------------------------------------------

def subgroups(n: int) -> list:
    """All subgroups of D_2n as frozensets of vertices, in a fixed order:
    rotation subgroups <a^d> by increasing order, then <a^d, b a^r>."""
    out = []
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    for d in sorted(divisors, reverse=True):
        out.append(frozenset((d * i) % n for i in range(n // d)))
    for d in sorted(divisors, reverse=True):
        for r in range(d):
            rot = [(d * i) % n for i in range(n // d)]
            out.append(frozenset(rot + [n + (r + x) % n for x in rot]))
    uniq = list(dict.fromkeys(out))  # n = 1, 2 can repeat
    return uniq


def is_normal_subgroup(n: int, H: frozenset) -> bool:
    return all(vmul(n, vmul(n, vinv(n, x), h), x) in H for x in (1, n) for h in H)


def find_wreath_witness(n: int, S: ConnectionSet) -> WreathWitness | None:
    """Search (H, K, x, y) with 1 < H <= K < G, H normal, S \\ K a union of
    H-cosets and y^x != y^-1; such data certifies non-normality."""
    N = 2 * n
    subs = subgroups(n)
    sv = S.vertices
    order = sorted(range(N), key=lambda v: from_vertex(n, v).key)
    for H in subs:
        if len(H) == 1 or len(H) == N or not is_normal_subgroup(n, H):
            continue
        for K in subs:
            if len(K) == N or not H <= K:
                continue
            outside = sv - K
            if any(vmul(n, s, h) not in outside for s in outside for h in H):
                continue
            for x in order:
                if x in K:
                    continue
                xi = vinv(n, x)
                y = next((y for y in order if y in H
                          and vmul(n, vmul(n, xi, y), x) != vinv(n, y)), None)
                if y is not None:
                    to_el = lambda vs: frozenset(from_vertex(n, v) for v in vs)  # noqa: E731
                    return WreathWitness(n, to_el(H), to_el(K), from_vertex(n, x), from_vertex(n, y))
    return None


def check_wreath_witness(n: int, S: ConnectionSet, w: WreathWitness) -> bool:
    """Re-verify every condition of a witness."""
    H = frozenset(to_vertex(e) for e in w.H)
    K = frozenset(to_vertex(e) for e in w.K)
    subs = set(subgroups(n))
    x, y = to_vertex(w.x), to_vertex(w.y)
    outside = S.vertices - K
    return (H in subs and K in subs and 1 < len(H) and H <= K and len(K) < 2 * n
            and is_normal_subgroup(n, H) and x not in K and y in H
            and vmul(n, vmul(n, vinv(n, x), y), x) != vinv(n, y)
            and all(vmul(n, s, h) in outside for s in outside for h in H))


def odd_square_primes(n: int) -> list:
    """Odd primes p with p^2 | n."""
    return [p for p, r in FactoredN.of(n).factors if p % 2 and r >= 2]


def local_aut_nonnormal_check(n: int, S: ConnectionSet) -> DihedralAutomorphism | None:
    """An element of Aut(D_2n, S) of odd prime order p, acting on <a> only
    through the p-primary part (inside <theta_a> x| Aut(C_{p^r})) but not lying
    in <theta_a>.  Its presence forces non-normality."""
    if n < 3:
        return None
    primes = odd_square_primes(n)
    if not primes:
        return None
    fac = FactoredN.of(n)
    for phi_ in aut_g_s(n, S):
        if phi_.mult == 1:
            continue
        for p in primes:
            rest = n // fac.prime_power(p)
            if (phi_.mult - 1) % rest == 0 and phi_.order() == p:
                return phi_
    return None


# ---------------------------------------------------------------------------
# one-shot analysis
# ---------------------------------------------------------------------------

@dataclass
class Analysis:
    gamma: CayleyDigraph
    aut: PermGroup
    normality: NormalityReport
    ci: CiReport | None

    def to_json(self) -> dict:
        ci = self.ci
        witness = None
        if ci is not None and ci.non_conjugate_witness is not None:
            witness = ci.non_conjugate_witness.to_json()
        return {
            "n": self.gamma.n,
            "S": serialize_set(self.gamma.S),
            "is_graph": self.gamma.is_graph,
            "aut_order": self.aut.order(),
            "normal": self.normality.verdict,
            "ci": None if ci is None else ci.verdict,
            "regular_subgroup_count": None if ci is None or ci.status != "ok"
            else ci.regular_subgroup_count,
            "witness": witness,
        }


def analyse(gamma: CayleyDigraph, *, babai: bool = True, cap: int | None = None) -> Analysis:
    """Normality plus a CI verdict.

    Normal digraphs use the unique-regular-subgroup test.  Non-normal ones get
    the Babai conjugacy test when ``babai`` is set; if |Aut| exceeds ``cap`` the
    CI status is "infeasible" and the verdict stays None.
    """
    A = digraph_automorphisms(gamma)
    nr = is_normal(gamma, A)
    if nr.verdict:
        ci = is_ci_normal(gamma, A, nr)
    elif babai:
        ci = is_ci_babai(gamma, A, cap=cap)
    else:
        ci = None
    return Analysis(gamma, A, nr, ci)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)

