"""Ladder graphs, their second regular dihedral subgroup, and the D_8 example."""

from __future__ import annotations

from dataclasses import dataclass

from .cayley import (CayleyDigraph, ConnectionSet, build_cayley, digraph_automorphisms,
                     enumerate_regular_subgroups, is_ci_babai, is_normal, normaliser_of_regular,
                     regular_kind)
from .dihedral import DihedralAutomorphism, DihedralElement, _aut_raw, right_mult_perm, vmul
from .perm import (PermGroup, _mul, is_regular, is_transitive, subgroup_conjugacy_search)


def ladder_set(n: int) -> ConnectionSet:
    return ConnectionSet(n, frozenset({DihedralElement.a(n, 1), DihedralElement.a(n, -1),
                                       DihedralElement.b(n, 0)}))


def ladder(n: int) -> CayleyDigraph:
    """Cay(D_2n, {a, a^-1, b}): the prism over an n-cycle."""
    if n < 3:
        raise ValueError("ladder needs n >= 3")
    return build_cayley(n, ladder_set(n))


def _witness_generators(n: int) -> list:
    # R(ab) followed by the inversion automorphism a -> a^-1, b -> b; and R(b)
    ab = vmul(n, 1, n)
    alpha = _aut_raw(n, -1 % n, 0)
    return [_mul(right_mult_perm(n, ab), alpha), right_mult_perm(n, n)]


def _witness_group(n: int) -> PermGroup:
    return PermGroup(2 * n, _witness_generators(n))


def ladder_witness_subgroup(n: int) -> PermGroup:
    """<R(ab) alpha, R(b)>: regular dihedral of order 2n, different from R(D_2n)."""
    if n % 2 or n <= 4:
        raise ValueError("ladder_witness_subgroup needs even n > 4")
    return _witness_group(n)


def right_regular_group(n: int) -> PermGroup:
    return PermGroup(2 * n, [right_mult_perm(n, 1), right_mult_perm(n, n)])


def four_cycles_through(gamma: CayleyDigraph, u: int, v: int) -> int:
    """Number of 4-cycles of the (undirected) graph through the edge {u, v}."""
    adj = [set(o) for o in gamma.out]
    count = 0
    for x in adj[v] - {u}:
        for y in adj[x] - {v, u}:
            if u in adj[y]:
                count += 1
    return count


def conjugacy_classes_of_subgroups(A: PermGroup, subs: list) -> list:
    """Partition ``subs`` into A-conjugacy classes (indices)."""
    classes: list = []
    for i, H in enumerate(subs):
        for cls in classes:
            if subgroup_conjugacy_search(A, subs[cls[0]], H).conjugator is not None:
                cls.append(i)
                break
        else:
            classes.append([i])
    return classes


@dataclass
class D8Report:
    aut_order: int
    normal: bool
    regular_subgroup_count: int
    conjugacy_class_count: int
    babai_ci: bool | None
    named_pair_conjugate: bool
    sylow2_order: int
    sylow2_contains_regular: bool

    @property
    def passed(self) -> bool:
        return (self.aut_order == 48 and not self.normal and self.babai_ci is False
                and not self.named_pair_conjugate and self.conjugacy_class_count == 2
                and self.sylow2_order == 16 and self.sylow2_contains_regular)

    def to_json(self) -> dict:
        d = dict(self.__dict__)
        d["passed"] = self.passed
        return d


def d8_counterexample_report() -> D8Report:
    n = 4
    gamma = ladder(n)
    A = digraph_automorphisms(gamma)
    nr = is_normal(gamma, A)
    subs = enumerate_regular_subgroups(A, regular_kind(n))
    classes = conjugacy_classes_of_subgroups(A, subs)
    babai = is_ci_babai(gamma, A)
    R = right_regular_group(n)
    W = _witness_group(n)
    conj = subgroup_conjugacy_search(A, R, W).conjugator is not None
    syl = normaliser_of_regular(n, gamma.S)  # R(D_8) x| <alpha>, order 16 = 2-part of 48
    return D8Report(
        aut_order=A.order(), normal=nr.verdict, regular_subgroup_count=len(subs),
        conjugacy_class_count=len(classes), babai_ci=babai.verdict,
        named_pair_conjugate=conj, sylow2_order=syl.order(),
        sylow2_contains_regular=R.is_subgroup_of(syl) and syl.is_subgroup_of(A),
    )


def inversion_automorphism(n: int) -> DihedralAutomorphism:
    return DihedralAutomorphism(n, -1, 0)


def witness_is_valid(n: int) -> bool:
    """Regular, transitive, order 2n, inside Aut(ladder(n)), and not R(D_2n)."""
    W = _witness_group(n)
    A = digraph_automorphisms(ladder(n))
    return (W.order() == 2 * n and is_transitive(W) and is_regular(W) and W.is_subgroup_of(A)
            and W != right_regular_group(n))
