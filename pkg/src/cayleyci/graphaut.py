"""Automorphism groups of small digraphs by partition refinement and backtracking.

The search builds a stabilizer chain directly: base points are the smallest
vertices not yet isolated by refinement; at each level every candidate image
outside the orbit known so far is tested by a backtracking search for a single
automorphism.  Orbits only ever grow by genuine automorphisms and every
remaining candidate is decided exactly, so the group is exact.
"""

from __future__ import annotations

from collections import Counter

from .errors import BudgetExceeded, CapExceeded
from .perm import PermGroup, _identity

DEFAULT_VERTEX_CAP = 40
DEFAULT_NODE_BUDGET = 10**7


class _Digraph:
    __slots__ = ("N", "out", "inn", "out_sets")

    def __init__(self, N: int, out: list):
        self.N = N
        self.out = [tuple(sorted(o)) for o in out]
        self.out_sets = [frozenset(o) for o in out]
        inn = [[] for _ in range(N)]
        for u, nbrs in enumerate(self.out):
            for v in nbrs:
                inn[v].append(u)
        self.inn = [tuple(x) for x in inn]


def _refine(g: _Digraph, colors: list) -> tuple:
    """Equitable refinement by out- and in-neighbour colour counts.

    Returns (colors, trace).  New colour = rank of the vertex signature, so
    the result and the trace are invariant under isomorphism.
    """
    out, inn = g.out, g.inn
    trace = []
    ncol = len(set(colors))
    while True:
        sigs = []
        for v in range(g.N):
            oc = Counter(colors[u] for u in out[v])
            ic = Counter(colors[u] for u in inn[v])
            sigs.append((colors[v], tuple(sorted(oc.items())), tuple(sorted(ic.items()))))
        ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        trace.append(tuple(sorted(Counter(sigs).items())))
        k = len(ranks)
        colors = new
        if k == ncol:
            return colors, tuple(trace)
        ncol = k


def _individualize(g: _Digraph, colors: list, v: int) -> tuple:
    c = list(colors)
    c[v] = -1
    return _refine(g, c)


class _Search:
    def __init__(self, g: _Digraph, budget: int):
        self.g = g
        self.budget = budget
        self.nodes = 0

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExceeded(f"automorphism search exceeded {self.budget} nodes")

    def is_automorphism(self, p: list) -> bool:
        out_sets = self.g.out_sets
        for u, nbrs in enumerate(self.g.out):
            target = out_sets[p[u]]
            if len(target) != len(nbrs):
                return False
            for v in nbrs:
                if p[v] not in target:
                    return False
        return True

    def extend(self, lc: list, rc: list):
        """Find an automorphism mapping colour classes of ``lc`` onto ``rc``."""
        self._tick()
        cells: dict = {}
        for v, c in enumerate(lc):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells, key=lambda c: (len(cells[c]), c)):
            if len(cells[c]) > 1:
                target = c
                break
        if target is None:
            where = {c: w for w, c in enumerate(rc)}
            p = [where[lc[v]] for v in range(self.g.N)]
            return p if self.is_automorphism(p) else None
        v = cells[target][0]
        lc2, ltr = _individualize(self.g, lc, v)
        for w in range(self.g.N):
            if rc[w] != target:
                continue
            rc2, rtr = _individualize(self.g, rc, w)
            if rtr != ltr:
                continue
            res = self.extend(lc2, rc2)
            if res is not None:
                return res
        return None


def _orbit(point: int, gens: list) -> set:
    orb = {point}
    queue = [point]
    for x in queue:
        for g in gens:
            y = g[x]
            if y not in orb:
                orb.add(y)
                queue.append(y)
    return orb


def automorphism_group(N: int, out: list, seeds=(), *, vertex_cap: int = DEFAULT_VERTEX_CAP,
                       node_budget: int = DEFAULT_NODE_BUDGET, stats: dict | None = None) -> PermGroup:
    """Full automorphism group of the digraph with out-neighbour lists ``out``.

    ``seeds`` are known automorphisms (raw tuples); they only prune the search.
    """
    if N > vertex_cap:
        raise CapExceeded(f"{N} vertices exceeds cap {vertex_cap}")
    g = _Digraph(N, out)
    search = _Search(g, node_budget)
    gens = [tuple(s) for s in seeds if tuple(s) != _identity(N)]
    for s in gens:
        if not search.is_automorphism(list(s)):
            raise ValueError("seed is not an automorphism")

    base: list = []
    colors, _ = _refine(g, [0] * N)
    while len(set(colors)) < N:
        cellsize = Counter(colors)
        b = next(v for v in range(N) if cellsize[colors[v]] > 1)
        # pointwise stabiliser of the base so far: generators fixing it
        level_gens = [s for s in gens if all(s[x] == x for x in base)]
        orb = _orbit(b, level_gens)
        left, ltr = _individualize(g, colors, b)
        for c in range(N):
            if c in orb or colors[c] != colors[b]:
                continue
            right, rtr = _individualize(g, colors, c)
            if rtr != ltr:
                continue
            found = search.extend(left, right)
            if found is not None:
                found = tuple(found)
                gens.append(found)
                level_gens.append(found)
                orb = _orbit(b, level_gens)
        base.append(b)
        colors = left
    if stats is not None:
        stats["nodes"] = search.nodes
        stats["base"] = list(base)
    if not gens:
        return PermGroup(N, [])
    return PermGroup.from_strong_generators(N, base, gens)
