"""Finite permutation groups on points 0..degree-1.

Composition convention everywhere in this package: ``compose(p, q)`` applies
``p`` first, then ``q`` (right actions, so ``x^(pq) = (x^p)^q``).  Conjugation
``h^c`` is ``c^-1 h c``.

Groups are stored as a stabilizer chain built by deterministic Schreier-Sims
with base points taken as the smallest moved point.  Internally permutations
are plain tuples; the public surface hands out :class:`Permutation` objects.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import CapExceeded

Raw = tuple  # tuple[int, ...]

DEFAULT_ENUMERATION_CAP = 10**6


# ---------------------------------------------------------------------------
# raw tuple helpers (hot paths)
# ---------------------------------------------------------------------------

def _mul(p: Raw, q: Raw) -> Raw:
    return tuple([q[x] for x in p])


def _inv(p: Raw) -> Raw:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def _identity(degree: int) -> Raw:
    return tuple(range(degree))


def _is_identity(p: Raw) -> bool:
    return all(i == v for i, v in enumerate(p))


def _cycle_type(p: Raw) -> tuple:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths))


def _order(p: Raw) -> int:
    return math.lcm(*_cycle_type(p)) if p else 1


def _power(p: Raw, k: int) -> Raw:
    if k < 0:
        p, k = _inv(p), -k
    result = _identity(len(p))
    base = p
    while k:
        if k & 1:
            result = _mul(result, base)
        base = _mul(base, base)
        k >>= 1
    return result


def _conj(h: Raw, c: Raw) -> Raw:
    """h^c = c^-1 h c, i.e. the map c(x) -> c(h(x))."""
    out = [0] * len(h)
    for x, hx in enumerate(h):
        out[c[x]] = c[hx]
    return tuple(out)


def _check_bijection(images: Sequence[int]) -> None:
    if sorted(images) != list(range(len(images))):
        raise ValueError(f"not a permutation of 0..{len(images) - 1}: {list(images)}")


# ---------------------------------------------------------------------------
# Permutation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Permutation:
    """Point-image permutation: point ``i`` maps to ``images[i]``."""

    images: tuple

    def __post_init__(self):
        imgs = tuple(int(x) for x in self.images)
        if not imgs:
            raise ValueError("degree must be >= 1")
        _check_bijection(imgs)
        object.__setattr__(self, "images", imgs)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(_identity(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Sequence[int]) -> "Permutation":
        img = list(range(degree))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                img[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        return Permutation(_power(self.images, k))

    def inverse(self) -> "Permutation":
        return Permutation(_inv(self.images))

    def is_identity(self) -> bool:
        return _is_identity(self.images)

    def cycle_type(self) -> tuple:
        return _cycle_type(self.images)

    def conjugate(self, c: "Permutation") -> "Permutation":
        return Permutation(_conj(self.images, c.images))

    def cycles(self) -> list:
        seen, out = set(), []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc, j = [], i
            while j not in seen:
                seen.add(j)
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"

    def to_json(self) -> list:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls(tuple(data))


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return the permutation ``x -> q(p(x))``."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(_mul(p.images, q.images))


def element_order(p: Permutation) -> int:
    return _order(p.images)


# ---------------------------------------------------------------------------
# Stabilizer chain
# ---------------------------------------------------------------------------

@dataclass
class _Level:
    point: int
    gens: list  # raw strong generators fixing all earlier base points
    trans: dict = field(default_factory=dict)  # orbit point -> raw u with u[point] = orbit point

    def rebuild(self, degree: int) -> None:
        self.trans = {self.point: _identity(degree)}
        queue = [self.point]
        for beta in queue:
            u = self.trans[beta]
            for g in self.gens:
                gamma = g[beta]
                if gamma not in self.trans:
                    self.trans[gamma] = _mul(u, g)
                    queue.append(gamma)


def _sift(levels: list, h: Raw) -> tuple:
    """Strip ``h`` through the chain. Returns (residue, depth reached)."""
    for i, lev in enumerate(levels):
        beta = h[lev.point]
        u = lev.trans.get(beta)
        if u is None:
            return h, i
        h = _mul(h, _inv(u))
    return h, len(levels)


def _first_moved(p: Raw, exclude=()) -> int:
    for i, v in enumerate(p):
        if i != v and i not in exclude:
            return i
    raise ValueError("identity has no moved point")


def _schreier_sims(degree: int, gens: list, base_prefix: Sequence[int] = ()) -> list:
    gens = [g for g in dict.fromkeys(gens) if not _is_identity(g)]
    base = list(base_prefix)
    for g in gens:
        if all(g[b] == b for b in base):
            base.append(_first_moved(g, base))
    levels = []
    for i, b in enumerate(base):
        lev = _Level(b, [g for g in gens if all(g[x] == x for x in base[:i])])
        lev.rebuild(degree)
        levels.append(lev)

    i = len(levels) - 1
    while i >= 0:
        lev = levels[i]
        added = False
        for beta, u in list(lev.trans.items()):
            for s in lev.gens:
                us = _mul(u, s)
                schreier = _mul(us, _inv(lev.trans[us[lev.point]]))
                h, j = _sift(levels[i + 1:], schreier)
                j += i + 1
                if j < len(levels) or not _is_identity(h):
                    if j == len(levels):
                        levels.append(_Level(_first_moved(h, [L.point for L in levels]), []))
                    for L in levels[i + 1:j + 1]:
                        L.gens.append(h)
                        L.rebuild(degree)
                    i = j
                    added = True
                    break
            if added:
                break
        if not added:
            i -= 1
    # drop trailing levels with trivial orbit (only possible from base_prefix)
    while levels and len(levels[-1].trans) == 1 and len(levels) > len(base_prefix):
        levels.pop()
    return levels


class PermGroup:
    """Permutation group with an exact stabilizer chain."""

    def __init__(self, degree: int, generators: Iterable, *, base_prefix: Sequence[int] = (),
                 _levels: list | None = None):
        self.degree = degree
        raw = []
        for g in generators:
            r = g.images if isinstance(g, Permutation) else tuple(g)
            if len(r) != degree:
                raise ValueError(f"generator degree {len(r)} != {degree}")
            _check_bijection(r)
            raw.append(r)
        self._gens = raw
        self._levels = _levels if _levels is not None else _schreier_sims(degree, raw, base_prefix)
        self._elements = None

    @classmethod
    def from_strong_generators(cls, degree: int, base: Sequence[int], strong_gens: Iterable) -> "PermGroup":
        """Build the chain directly from a known base and strong generating set."""
        raw = [g.images if isinstance(g, Permutation) else tuple(g) for g in strong_gens]
        levels = []
        for i, b in enumerate(base):
            lev = _Level(b, [g for g in raw if all(g[x] == x for x in base[:i])])
            lev.rebuild(degree)
            levels.append(lev)
        return cls(degree, raw, _levels=levels)

    # -- basic data ---------------------------------------------------------
    @property
    def generators(self) -> list:
        return [Permutation(g) for g in self._gens]

    @property
    def base(self) -> list:
        return [L.point for L in self._levels]

    def order(self) -> int:
        return math.prod(len(L.trans) for L in self._levels)

    def __len__(self) -> int:
        return self.order()

    def contains(self, p) -> bool:
        r = p.images if isinstance(p, Permutation) else tuple(p)
        if len(r) != self.degree:
            return False
        h, depth = _sift(self._levels, r)
        return depth == len(self._levels) and _is_identity(h)

    __contains__ = contains

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(other.contains(g) for g in self._gens)

    def _raw_elements(self, cap: int | None = None) -> list:
        if cap is not None and self.order() > cap:
            raise CapExceeded(f"group order {self.order()} exceeds enumeration cap {cap}")
        if self._elements is None:
            elems = [_identity(self.degree)]
            for lev in reversed(self._levels):
                elems = [_mul(e, u) for u in lev.trans.values() for e in elems]
            self._elements = elems
        return self._elements

    def elements(self, cap: int | None = DEFAULT_ENUMERATION_CAP) -> Iterator[Permutation]:
        for e in self._raw_elements(cap):
            yield Permutation(e)

    def element_set(self) -> frozenset:
        return frozenset(self._raw_elements())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PermGroup):
            return NotImplemented
        return (self.degree == other.degree and self.order() == other.order()
                and self.is_subgroup_of(other))

    def __hash__(self):
        return hash((self.degree, self.order()))

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order()}, ngens={len(self._gens)})"

    def to_json(self) -> dict:
        return {"degree": self.degree, "generators": [list(g) for g in self._gens]}

    @classmethod
    def from_json(cls, data: dict) -> "PermGroup":
        return cls(data["degree"], [tuple(g) for g in data["generators"]])

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def group_from_generators(degree: int, gens: Iterable) -> PermGroup:
    return PermGroup(degree, gens)


def naive_closure(degree: int, gens: Iterable) -> set:
    """All elements of <gens> by breadth-first closure (test oracle)."""
    raw = [g.images if isinstance(g, Permutation) else tuple(g) for g in gens]
    ident = _identity(degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for g in raw:
                h = _mul(e, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
        frontier = nxt
    return seen


# ---------------------------------------------------------------------------
# orbits, regularity, stabilizers
# ---------------------------------------------------------------------------

def orbits(G: PermGroup) -> list:
    parent = list(range(G.degree))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in G._gens:
        for x, y in enumerate(g):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    classes: dict = {}
    for x in range(G.degree):
        classes.setdefault(find(x), []).append(x)
    return sorted(classes.values())


def is_transitive(G: PermGroup) -> bool:
    return len(orbits(G)) == 1


def is_regular(G: PermGroup) -> bool:
    return is_transitive(G) and G.order() == G.degree


def is_semiregular(G: PermGroup) -> bool:
    # all stabilizers trivial <=> every orbit has length |G|
    order = G.order()
    return all(len(orb) == order for orb in orbits(G))


def point_stabilizer(G: PermGroup, x: int) -> PermGroup:
    if not 0 <= x < G.degree:
        raise ValueError(f"point {x} out of range")
    if G.order() == 1:
        return PermGroup(G.degree, [])
    chain = _schreier_sims(G.degree, list(G._gens), base_prefix=[x])
    rest = chain[1:]
    gens = list(dict.fromkeys(g for L in rest for g in L.gens))
    return PermGroup(G.degree, gens, _levels=[_Level(L.point, L.gens, L.trans) for L in rest])


# ---------------------------------------------------------------------------
# subgroup conjugacy
# ---------------------------------------------------------------------------

@dataclass
class ConjugacySearchResult:
    conjugator: Permutation | None
    nodes: int
    predicted: int


def _fingerprint(gens: list) -> tuple:
    """Cycle types of generators and their consecutive products."""
    fp = [_cycle_type(g) for g in gens]
    fp += [_cycle_type(_mul(gens[i], gens[i + 1])) for i in range(len(gens) - 1)]
    return tuple(fp)


def _small_generating_set(H: PermGroup) -> list:
    """Greedy: keep generators that enlarge the group generated so far."""
    chosen: list = []
    current = 1
    for g in sorted(H._gens, key=lambda r: (-_order(r), r)):
        trial = PermGroup(H.degree, chosen + [g]).order()
        if trial > current:
            chosen.append(g)
            current = trial
        if current == H.order():
            break
    return chosen


def _build_conjugator(hgens: list, kgens: list, start: int, degree: int) -> Raw | None:
    """The unique c with c(0)=start and c h_i = k_i c, if <hgens> is transitive."""
    c = {0: start}
    queue = [0]
    for x in queue:
        cx = c[x]
        for h, k in zip(hgens, kgens):
            y, cy = h[x], k[cx]
            got = c.get(y)
            if got is None:
                c[y] = cy
                queue.append(y)
            elif got != cy:
                return None
    if len(c) != degree or len(set(c.values())) != degree:
        return None
    return tuple(c[x] for x in range(degree))


def subgroup_conjugacy_search(A: PermGroup, H: PermGroup, K: PermGroup,
                              cap: int | None = DEFAULT_ENUMERATION_CAP) -> ConjugacySearchResult:
    """Find ``c`` in ``A`` with ``H^c = K``, exhaustively.

    For transitive ``H`` the search runs over fingerprint-compatible images of a
    small generating set of ``H`` in ``K`` and over the image of point 0; each
    such choice determines at most one candidate ``c``.  Otherwise every
    element of ``A`` is tried.
    """
    if not H.is_subgroup_of(A) or not K.is_subgroup_of(A):
        raise ValueError("H and K must be subgroups of A")
    deg = A.degree
    if H.order() != K.order():
        return ConjugacySearchResult(None, 0, 0)
    hgens = _small_generating_set(H)
    if not hgens:
        return ConjugacySearchResult(Permutation(_identity(deg)), 1, 1)

    if not is_transitive(H):
        nodes = 0
        for c in A._raw_elements(cap):
            nodes += 1
            if all(K.contains(_conj(h, c)) for h in hgens):
                return ConjugacySearchResult(Permutation(c), nodes, A.order())
        assert nodes == A.order()
        return ConjugacySearchResult(None, nodes, A.order())

    kel = K._raw_elements(cap)
    target_fp = _fingerprint(hgens)
    by_type: dict = {}
    for k in kel:
        by_type.setdefault(_cycle_type(k), []).append(k)
    pools = [by_type.get(_cycle_type(h), []) for h in hgens]
    compatible = [ks for ks in itertools.product(*pools) if _fingerprint(list(ks)) == target_fp]
    predicted = len(compatible) * deg
    nodes = 0
    for ks in compatible:
        for start in range(deg):
            nodes += 1
            c = _build_conjugator(hgens, list(ks), start, deg)
            if c is not None and A.contains(c):
                return ConjugacySearchResult(Permutation(c), nodes, predicted)
    assert nodes == predicted
    return ConjugacySearchResult(None, nodes, predicted)


def are_conjugate(A: PermGroup, H: PermGroup, K: PermGroup) -> Permutation | None:
    return subgroup_conjugacy_search(A, H, K).conjugator


# ---------------------------------------------------------------------------
# regular subgroups of a prescribed type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupKind:
    """Isomorphism type targeted by regular-subgroup enumeration."""

    tag: str  # "dihedral" | "cyclic" | "elementary_abelian_4"
    order: int

    def __post_init__(self):
        if self.tag not in ("dihedral", "cyclic", "elementary_abelian_4"):
            raise ValueError(f"unknown group kind {self.tag!r}")
        if self.order < 2:
            raise ValueError("order must be >= 2")
        if self.tag == "dihedral" and self.order % 2:
            raise ValueError("dihedral order must be even")
        if self.tag == "elementary_abelian_4" and self.order != 4:
            raise ValueError("elementary abelian kind has order 4")

    @classmethod
    def dihedral(cls, order: int) -> "GroupKind":
        return cls("dihedral", order)

    @classmethod
    def cyclic(cls, order: int) -> "GroupKind":
        return cls("cyclic", order)

    @classmethod
    def elementary_abelian_4(cls) -> "GroupKind":
        return cls("elementary_abelian_4", 4)


def _cyclic_closure(v: Raw) -> list:
    out = [_identity(len(v))]
    x = v
    while not _is_identity(x):
        out.append(x)
        x = _mul(x, v)
    return out


def enumerate_regular_subgroups(A: PermGroup, kind: GroupKind,
                                cap: int | None = DEFAULT_ENUMERATION_CAP) -> list:
    """All regular subgroups of ``A`` isomorphic to ``kind``, sorted by element set.

    Dihedral of order 2m (and C2 x C2, treated as m = 2): pairs (v, w) with
    v semiregular of order m, w a fixed-point-free involution inverting v and
    swapping the two <v>-orbits.  Cyclic of order m: elements of cycle type (m,).
    """
    deg = A.degree
    if kind.order != deg:
        raise ValueError(f"kind order {kind.order} != degree {deg}")
    elems = A._raw_elements(cap)

    found: dict = {}
    if kind.tag == "cyclic":
        for v in elems:
            if _cycle_type(v) == (deg,):
                key = frozenset(_cyclic_closure(v))
                found.setdefault(key, [v])
    else:
        m = deg // 2
        vs, seen_cyc = [], set()
        for v in elems:
            if _cycle_type(v) == (m, m):
                cyc = _cyclic_closure(v)
                key = frozenset(cyc)
                if key not in seen_cyc:
                    seen_cyc.add(key)
                    vs.append((v, cyc))
        invols = [w for w in elems if _cycle_type(w) == (2,) * m]
        for v, cyc in vs:
            vinv = _inv(v)
            side = _orbit_of(v, 0)
            for w in invols:
                if w[0] in side:
                    continue
                if _conj(v, w) != vinv:
                    continue
                members = cyc + [_mul(x, w) for x in cyc]
                key = frozenset(members)
                if key not in found:
                    found[key] = [v, w]
    groups = []
    for key in sorted(found, key=lambda s: sorted(s)):
        groups.append(PermGroup(deg, found[key]))
    return groups


def _orbit_of(p: Raw, x: int) -> set:
    orb = {x}
    y = p[x]
    while y != x:
        orb.add(y)
        y = p[y]
    return orb


def presentation_holds(gens: Sequence[Permutation], kind: GroupKind) -> bool:
    """Check the defining relations of ``kind`` on a generating pair/singleton."""
    raw = [g.images for g in gens]
    if kind.tag == "cyclic":
        return len(raw) == 1 and _order(raw[0]) == kind.order
    v, w = raw
    m = kind.order // 2
    return (_order(v) == m and _order(w) == 2 and _conj(v, w) == _inv(v))


def cycle_type_counts(G: PermGroup) -> Counter:
    return Counter(_cycle_type(e) for e in G._raw_elements())
