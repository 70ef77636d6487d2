"""Exact arithmetic in the dihedral group D_2n, its automorphisms and holomorph.

Elements are ``b^flip * a^exp``.  With right actions the product law is

    (b^d a^i)(b^e a^j) = b^(d+e) a^((-1)^e i + j).

Vertices: ``a^i -> i`` and ``b*a^i -> n + i``.  An automorphism ``(k, t)`` maps
``a -> a^k`` and ``b -> b*a^t``; composition applies the left factor first.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from sympy import factorint, totient

from .perm import Permutation, PermGroup, _mul, _inv, _identity


@dataclass(frozen=True, order=True)
class DihedralElement:
    n: int
    exp: int
    flip: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        object.__setattr__(self, "exp", self.exp % self.n)
        object.__setattr__(self, "flip", self.flip % 2)

    @classmethod
    def identity(cls, n: int) -> "DihedralElement":
        return cls(n, 0, 0)

    @classmethod
    def a(cls, n: int, i: int = 1) -> "DihedralElement":
        return cls(n, i, 0)

    @classmethod
    def b(cls, n: int, i: int = 0) -> "DihedralElement":
        """The reflection ``b*a^i``."""
        return cls(n, i, 1)

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        return dihedral_mul(self, other)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(self.n, -self.exp, 0)

    def __pow__(self, k: int) -> "DihedralElement":
        if self.flip:
            return self if k % 2 else DihedralElement.identity(self.n)
        return DihedralElement(self.n, self.exp * k, 0)

    def is_identity(self) -> bool:
        return self.exp == 0 and self.flip == 0

    def order(self) -> int:
        if self.flip:
            return 2
        return self.n // math.gcd(self.exp, self.n)

    @property
    def key(self) -> tuple:
        return (self.exp, self.flip)

    def __str__(self) -> str:
        return f"b*a^{self.exp}" if self.flip else f"a^{self.exp}"

    def to_json(self) -> list:
        return [self.exp, self.flip]


def dihedral_mul(g: DihedralElement, h: DihedralElement) -> DihedralElement:
    if g.n != h.n:
        raise ValueError(f"modulus mismatch: {g.n} vs {h.n}")
    sign = -1 if h.flip else 1
    return DihedralElement(g.n, sign * g.exp + h.exp, g.flip + h.flip)


def elements(n: int) -> list:
    """All of D_2n in (exp, flip) order."""
    return [DihedralElement(n, e, f) for e in range(n) for f in (0, 1)]


def to_vertex(g: DihedralElement) -> int:
    return g.flip * g.n + g.exp


def from_vertex(n: int, v: int) -> DihedralElement:
    return DihedralElement(n, v % n, v // n)


def vmul(n: int, u: int, v: int) -> int:
    """Product of vertex-encoded elements."""
    d, i = divmod(u, n)
    e, j = divmod(v, n)
    exp = (-i if e else i) + j
    return ((d + e) % 2) * n + exp % n


def vinv(n: int, u: int) -> int:
    return u if u >= n else (-u) % n


def right_mult_perm(n: int, x: int) -> tuple:
    """Raw permutation R(x): g -> g x on vertices."""
    return tuple(vmul(n, g, x) for g in range(2 * n))


def left_mult_perm(n: int, x: int) -> tuple:
    return tuple(vmul(n, x, g) for g in range(2 * n))


def right_regular(n: int):
    """Return ``(R(a), R(b), R(D_2n))``."""
    if n < 2:
        raise ValueError("n must be >= 2")
    ra = Permutation(right_mult_perm(n, 1))
    rb = Permutation(right_mult_perm(n, n))
    return ra, rb, PermGroup(2 * n, [ra, rb])


def R(g: DihedralElement) -> Permutation:
    return Permutation(right_mult_perm(g.n, to_vertex(g)))


# ---------------------------------------------------------------------------
# factorisation and CRT coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FactoredN:
    n: int
    factors: tuple  # ((p, r), ...) increasing p

    @classmethod
    def of(cls, n: int) -> "FactoredN":
        if n < 2:
            raise ValueError("n must be >= 2")
        return cls(n, tuple(sorted(factorint(n).items())))

    @property
    def primes(self) -> list:
        return [p for p, _ in self.factors]

    def prime_power(self, p: int) -> int:
        return p ** dict(self.factors)[p]

    def crt_idempotent(self, p: int) -> int:
        """e with e = 1 mod p^r and e = 0 mod n/p^r, so a_p = a^e."""
        q = self.prime_power(p)
        rest = self.n // q
        return (rest * pow(rest, -1, q)) % self.n if rest > 1 else 1 % self.n

    def component(self, exp: int, p: int) -> int:
        """Exponent of the p-part a_p-coordinate of a^exp, as an exponent of a."""
        return (exp * self.crt_idempotent(p)) % self.n


def units(n: int) -> list:
    return [k for k in range(1, n) if math.gcd(k, n) == 1]


def phi(n: int) -> int:
    return int(totient(n))


# ---------------------------------------------------------------------------
# automorphisms
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class DihedralAutomorphism:
    """``a -> a^mult``, ``b -> b*a^trans``."""

    n: int
    mult: int
    trans: int = 0

    def __post_init__(self):
        object.__setattr__(self, "mult", self.mult % self.n)
        object.__setattr__(self, "trans", self.trans % self.n)
        if math.gcd(self.mult, self.n) != 1:
            raise ValueError(f"mult {self.mult} not a unit mod {self.n}")

    @classmethod
    def identity(cls, n: int) -> "DihedralAutomorphism":
        return cls(n, 1, 0)

    @classmethod
    def theta(cls, n: int, i: int) -> "DihedralAutomorphism":
        """a -> a, b -> b a^i."""
        return cls(n, 1, i)

    def __call__(self, g: DihedralElement) -> DihedralElement:
        return aut_apply(self, g)

    def __mul__(self, other: "DihedralAutomorphism") -> "DihedralAutomorphism":
        return aut_compose(self, other)

    def inverse(self) -> "DihedralAutomorphism":
        kinv = pow(self.mult, -1, self.n) if self.n > 1 else 0
        return DihedralAutomorphism(self.n, kinv, -self.trans * kinv)

    def __pow__(self, e: int) -> "DihedralAutomorphism":
        base = self if e >= 0 else self.inverse()
        out = DihedralAutomorphism.identity(self.n)
        for _ in range(abs(e)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return self.mult == 1 % self.n and self.trans == 0

    def order(self) -> int:
        k, x = 1, self
        while not x.is_identity():
            x = x * self
            k += 1
        return k

    def conjugate(self, by: "DihedralAutomorphism") -> "DihedralAutomorphism":
        """self^by = by^-1 self by."""
        return by.inverse() * self * by

    def to_json(self) -> dict:
        return {"k": self.mult, "t": self.trans, "n": self.n}

    def __str__(self) -> str:
        return f"(k={self.mult}, t={self.trans})"


def aut_apply(phi_: DihedralAutomorphism, g: DihedralElement) -> DihedralElement:
    if phi_.n != g.n:
        raise ValueError("modulus mismatch")
    if g.flip:
        return DihedralElement(g.n, phi_.trans + g.exp * phi_.mult, 1)
    return DihedralElement(g.n, g.exp * phi_.mult, 0)


def aut_compose(f: DihedralAutomorphism, g: DihedralAutomorphism) -> DihedralAutomorphism:
    """Apply ``f`` then ``g``: (k1,t1)(k2,t2) = (k1 k2, t2 + t1 k2)."""
    if f.n != g.n:
        raise ValueError("modulus mismatch")
    n = f.n
    return DihedralAutomorphism(n, f.mult * g.mult, g.trans + f.trans * g.mult)


def full_aut_group(n: int) -> list:
    """Aut(D_2n) for n >= 3 as the n*phi(n) pairs (k, t)."""
    if n < 3:
        raise ValueError("full_aut_group needs n >= 3; D_4 is handled by automorphism_perms")
    return [DihedralAutomorphism(n, k, t) for k in units(n) for t in range(n)]


def aut_c_n(n: int) -> list:
    return [DihedralAutomorphism(n, k, 0) for k in units(n)]


def aut_to_perm(phi_: DihedralAutomorphism) -> Permutation:
    return Permutation(_aut_raw(phi_.n, phi_.mult, phi_.trans))


def _aut_raw(n: int, k: int, t: int) -> tuple:
    return tuple([(i * k) % n for i in range(n)] + [n + (t + i * k) % n for i in range(n)])


def is_homomorphism_perm(n: int, p: tuple) -> bool:
    """Does the vertex permutation ``p`` respect the group law?"""
    N = 2 * n
    return all(p[vmul(n, u, v)] == vmul(n, p[u], p[v]) for u in range(N) for v in range(N))


@lru_cache(maxsize=None)
def _automorphism_perms_cached(n: int) -> tuple:
    if n >= 3:
        return tuple(_aut_raw(n, k, t) for k in units(n) for t in range(n))
    # D_4 = C2 x C2: brute force over bijections fixing the identity
    out = []
    for rest in itertools.permutations(range(1, 2 * n)):
        p = (0,) + rest
        if is_homomorphism_perm(n, p):
            out.append(p)
    return tuple(out)


def automorphism_perms(n: int) -> list:
    """Aut(D_2n) as raw vertex permutations, valid for every n >= 2."""
    return list(_automorphism_perms_cached(n))


def brute_force_automorphisms(n: int) -> set:
    """Every bijective homomorphism, found by choosing images of a and b (oracle)."""
    found = set()
    els = elements(n)
    for ia in els:
        if ia.order() != n:
            continue
        for ib in els:
            if ib.order() != 2:
                continue
            # relations a^n = b^2 = 1 hold by order; check b a b = a^-1
            if ib * ia * ib != ia.inverse():
                continue
            imgs = {}
            for g in els:
                x = ib if g.flip else DihedralElement.identity(n)
                imgs[g] = x * ia ** g.exp
            if len(set(imgs.values())) == 2 * n:
                found.add(tuple(to_vertex(imgs[from_vertex(n, v)]) for v in range(2 * n)))
    return found


def fixed_point_set(phi_: DihedralAutomorphism) -> set:
    return {g for g in elements(phi_.n) if aut_apply(phi_, g) == g}


def local_aut_group(n: int, p: int) -> list:
    """<theta_a> x| Aut(C_{p^r}): the (k, t) with k acting trivially off the p-part."""
    off = n // FactoredN.of(n).prime_power(p)
    return [DihedralAutomorphism(n, k, t) for k in units(n) if (k - 1) % off == 0
            for t in range(n)]


def fixed_set_offset(phi_: DihedralAutomorphism, p: int) -> int | None:
    """r with fixed set equal to M u b a^r M, M = <a^p>; None if not of that form."""
    n = phi_.n
    fixed = fixed_point_set(phi_)
    M = [DihedralElement(n, p * j) for j in range(n // p)]
    if any(x not in fixed for x in M):
        return None
    for r in range(p):
        shape = set(M) | {DihedralElement.b(n, r) * x for x in M}
        if fixed == shape:
            return r
    return None


# ---------------------------------------------------------------------------
# holomorph
# ---------------------------------------------------------------------------

def _unit_generators(n: int) -> list:
    """A generating set of Z_n^* (greedy)."""
    gens, span = [], {1 % n}
    for k in units(n):
        if k in span:
            continue
        gens.append(k)
        frontier = list(span)
        span = set(span)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = (x * g) % n
                if y not in span:
                    span.add(y)
                    frontier.append(y)
    return gens


def holomorph(n: int) -> PermGroup:
    if n < 3:
        raise ValueError("holomorph needs n >= 3")
    ra, rb, _ = right_regular(n)
    gens = [ra, rb, aut_to_perm(DihedralAutomorphism.theta(n, 1))]
    gens += [aut_to_perm(DihedralAutomorphism(n, k, 0)) for k in _unit_generators(n)]
    return PermGroup(2 * n, gens)


def two_part(m: int) -> int:
    return m & -m


@dataclass
class HolomorphReport:
    n: int
    commute_and_trivial_meet: bool
    product_normal: bool
    sylow2_order: int
    hol_two_part: int
    sylow2_ok: bool
    cross_prime_ok: bool
    checks: dict

    @property
    def passed(self) -> bool:
        return (self.commute_and_trivial_meet and self.product_normal and self.sylow2_ok
                and self.cross_prime_ok)


def _raw_power_list(p: tuple) -> list:
    out = [_identity(len(p))]
    x = p
    while x != out[0]:
        out.append(x)
        x = _mul(x, p)
    return out


def holomorph_structure_report(n: int) -> HolomorphReport:
    """Check the holomorph structure for odd n (commuting rotation/theta product,
    its normality, the Sylow 2-subgroup and the cross-prime commutation facts)."""
    if n % 2 == 0 or n < 3:
        raise ValueError("holomorph_structure_report needs odd n >= 3")
    N = 2 * n
    hol = holomorph(n)
    ra = right_mult_perm(n, 1)
    rb = right_mult_perm(n, n)
    th = _aut_raw(n, 1, 1)

    Ra = _raw_power_list(ra)
    Th = _raw_power_list(th)
    commute = all(_mul(x, y) == _mul(y, x) for x in (ra,) for y in (th,))
    meet = set(Ra) & set(Th)
    commute_ok = commute and meet == {_identity(N)} and len(Ra) == n and len(Th) == n

    P = PermGroup(N, [ra, th])
    normal = P.order() == n * n and all(
        P.contains(_mul(_mul(_inv(g), x), g)) for g in hol._gens for x in (ra, th))

    u2 = [k for k in units(n) if two_part(_mult_order(k, n)) == _mult_order(k, n)]
    syl = PermGroup(N, [rb] + [_aut_raw(n, k, 0) for k in u2])
    rb_central = all(_mul(rb, _aut_raw(n, k, 0)) == _mul(_aut_raw(n, k, 0), rb) for k in u2)
    hol2 = two_part(hol.order())
    sylow_ok = rb_central and syl.order() == 2 * len(u2) == hol2 and syl.is_subgroup_of(hol)

    # elements R(a)^s theta^t of the abelian product
    fac = FactoredN.of(n)
    prod_elems = {}
    for s in range(n):
        for t in range(n):
            prod_elems[(s, t)] = _mul(Ra[s], Th[t])
    cross_ok = True
    checks = {}
    for p, r in fac.factors:
        q = p ** r
        rest = n // q
        aut_p = [k for k in units(n) if (k - 1) % rest == 0]  # Aut(C_{p^r}) inside Aut(C_n)
        for pj, rj in fac.factors:
            if pj == p:
                continue
            qj = pj ** rj
            pj_elems = [e for (s, t), e in prod_elems.items()
                        if (s * qj) % n == 0 and (t * qj) % n == 0]
            ok = all(_mul(_aut_raw(n, k, 0), e) == _mul(e, _aut_raw(n, k, 0))
                     for k in aut_p for e in pj_elems)
            checks[f"aut_C{q} centralises {pj}-elements"] = ok
            cross_ok &= ok
        full_order = [e for (s, t), e in prod_elems.items()
                      if math.lcm(n // math.gcd(s, n), n // math.gcd(t, n)) == q]
        fixers = sorted(k for k in aut_p
                        if any(_mul(_aut_raw(n, k, 0), e) == _mul(e, _aut_raw(n, k, 0))
                               for e in full_order))
        ok = fixers == [1]
        checks[f"only identity of aut_C{q} fixes an element of order {q}"] = ok
        cross_ok &= ok
    return HolomorphReport(n, commute_ok, normal, syl.order(), hol2, sylow_ok, cross_ok, checks)


def _mult_order(k: int, n: int) -> int:
    e, x = 1, k % n
    while x != 1 % n:
        x = (x * k) % n
        e += 1
    return e

