"""Slow, independent reference implementations used only by the test-suite.

None of these share code with the package beyond plain data: they work on
raw image tuples and recompute everything from definitions.
"""

from __future__ import annotations

from itertools import permutations


def mul(p, q):
    # apply p first
    return tuple(q[x] for x in p)


def inv(p):
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def closure(gens, degree):
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def order(p):
    ident = tuple(range(len(p)))
    k, x = 1, p
    while x != ident:
        x = mul(x, p)
        k += 1
    return k


# dihedral arithmetic written independently: a^i -> (i, 0), b a^i -> (i, 1)
def d_mul(n, g, h):
    (i, d), (j, e) = g, h
    return (((-i if e else i) + j) % n, (d + e) % 2)


def d_elements(n):
    return [(i, d) for i in range(n) for d in (0, 1)]


def vertex(n, g):
    return g[1] * n + g[0]


def cayley_out(n, S):
    """Out-neighbours: g -> s g."""
    out = [None] * (2 * n)
    for g in d_elements(n):
        out[vertex(n, g)] = sorted(vertex(n, d_mul(n, s, g)) for s in S)
    return out


def right_mult(n, x):
    return tuple(vertex(n, d_mul(n, g, x)) for g in sorted(d_elements(n), key=lambda e: vertex(n, e)))


def count_automorphisms(out, cap=10**6):
    """Count digraph automorphisms by plain backtracking over vertex images."""
    N = len(out)
    arcs = {(u, v) for u in range(N) for v in out[u]}
    outdeg = [len(o) for o in out]
    indeg = [0] * N
    for u, v in arcs:
        indeg[v] += 1
    img = [-1] * N
    used = [False] * N
    count = 0

    def ok(u):
        for w in range(u):
            if ((u, w) in arcs) != ((img[u], img[w]) in arcs):
                return False
            if ((w, u) in arcs) != ((img[w], img[u]) in arcs):
                return False
        return ((u, u) in arcs) == ((img[u], img[u]) in arcs)

    def rec(u):
        nonlocal count
        if count > cap:
            raise RuntimeError("cap")
        if u == N:
            count += 1
            return
        for c in range(N):
            if used[c] or outdeg[c] != outdeg[u] or indeg[c] != indeg[u]:
                continue
            img[u] = c
            if ok(u):
                used[c] = True
                rec(u + 1)
                used[c] = False
        img[u] = -1

    rec(0)
    return count


def all_automorphisms(out):
    N = len(out)
    arcs = {(u, v) for u in range(N) for v in out[u]}
    return [p for p in permutations(range(N))
            if all((p[u], p[v]) in arcs for u, v in arcs)]


def regular_dihedral_subgroups(elements, n):
    """Element sets of all regular subgroups of order 2n that are dihedral
    (C2 x C2 when n = 2), found by closing every pair (x, y) with o(x) = n and
    o(y) = 2; every dihedral group has such a generating pair."""
    degree = 2 * n
    elements = list(elements)
    xs = [x for x in elements if order(x) == n]
    ys = [y for y in elements if order(y) == 2]
    found = set()
    for x in xs:
        for y in ys:
            G = closure([x, y], degree)
            if len(G) != degree or frozenset(G) in found:
                continue
            ident = tuple(range(degree))
            # regular: transitive with order = degree  <=> no non-identity fixes a point
            if any(g != ident and any(g[i] == i for i in range(degree)) for g in G):
                continue
            if _is_dihedral(G, n):
                found.add(frozenset(G))
    return found


def _is_dihedral(G, n):
    if n == 2:
        return all(order(g) <= 2 for g in G)
    for v in G:
        if order(v) == n:
            cyc = closure([v], len(v))
            if all(order(g) == 2 for g in G if g not in cyc):
                return True
    return False


def brute_force_aut_d2n(n):
    """Automorphisms of D_2n as vertex permutations: every choice of images
    for a and b, kept when the induced map is a bijective homomorphism."""
    els = d_elements(n)
    N = 2 * n
    found = set()
    for ia in els:
        for ib in els:
            imgs = {}
            for (i, d) in els:
                # image of b^d a^i is ib^d ia^i
                x = ib if d else (0, 0)
                for _ in range(i):
                    x = d_mul(n, x, ia)
                imgs[(i, d)] = x
            p = tuple(vertex(n, imgs[g]) for g in sorted(els, key=lambda e: vertex(n, e)))
            if len(set(p)) != N:
                continue
            if all(p[vertex(n, d_mul(n, g, h))] == vertex(n, d_mul(n, imgs[g], imgs[h]))
                   for g in els for h in els):
                found.add(p)
    return found
