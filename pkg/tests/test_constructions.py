import pytest

from cayleyci.cayley import digraph_automorphisms, is_normal
from cayleyci.constructions import (d8_counterexample_report, four_cycles_through, ladder,
                                    ladder_witness_subgroup, right_regular_group, witness_is_valid)
from cayleyci.dihedral import right_mult_perm
from cayleyci.perm import Permutation, is_regular, is_transitive, point_stabilizer


def _girth(out):
    N = len(out)
    best = None
    for s in range(N):
        dist, parent, queue = {s: 0}, {s: -1}, [s]
        for u in queue:
            for v in out[u]:
                if v not in dist:
                    dist[v], parent[v] = dist[u] + 1, u
                    queue.append(v)
                elif parent[u] != v:
                    c = dist[u] + dist[v] + 1
                    best = c if best is None else min(best, c)
    return best


def test_ladder_six_local_structure():
    gamma = ladder(6)
    n = 6
    assert all(len(o) == 3 for o in gamma.out)
    # edges {1, b} and {1, a}: vertex 0 is the identity, 1 is a, n is b
    assert four_cycles_through(gamma, 0, n) == 2
    assert four_cycles_through(gamma, 0, 1) == 1


def test_ladder_four_is_k44_minus_matching():
    out = ladder(4).out
    side = {0: 0}
    queue = [0]
    for u in queue:
        for v in out[u]:
            if v not in side:
                side[v] = 1 - side[u]
                queue.append(v)
            assert side[v] != side[u]
    left = [v for v in range(8) if side[v] == 0]
    right = [v for v in range(8) if side[v] == 1]
    assert len(left) == len(right) == 4
    for u in left:
        assert len(set(right) - set(out[u])) == 1
    assert len({next(iter(set(right) - set(out[u]))) for u in left}) == 4


def test_ladder_five():
    gamma = ladder(5)
    assert all(len(o) == 3 for o in gamma.out)
    assert _girth([list(o) for o in gamma.out]) == 4
    assert is_transitive(digraph_automorphisms(gamma))


def test_ladder_rejects_small_n():
    with pytest.raises(ValueError):
        ladder(2)


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_ladder_normal_for_even_n(n):
    assert is_normal(ladder(n)).verdict


def test_ladder_four_not_normal():
    assert not is_normal(ladder(4)).verdict


def test_ladder_six_stabiliser():
    A = digraph_automorphisms(ladder(6))
    assert A.order() == 24
    assert point_stabilizer(A, 0).order() == 2


def test_witness_square():
    n = 6
    W = ladder_witness_subgroup(n)
    g = W.generators[0]
    assert g * g == Permutation(right_mult_perm(n, 2))


def test_witness_differs_from_regular_representation():
    W = ladder_witness_subgroup(6)
    R = right_regular_group(6)
    assert W.element_set() != R.element_set()


def test_witness_transitive_n8():
    W = ladder_witness_subgroup(8)
    assert is_transitive(W) and W.degree == 16 and W.order() == 16


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_witness_inside_automorphism_group(n):
    W = ladder_witness_subgroup(n)
    A = digraph_automorphisms(ladder(n))
    assert all(A.contains(g) for g in W.generators)
    assert is_regular(W) and W.order() == 2 * n
    assert witness_is_valid(n)


@pytest.mark.parametrize("n", [3, 4, 5, 7])
def test_witness_precondition(n):
    with pytest.raises(ValueError):
        ladder_witness_subgroup(n)


def test_witness_is_dihedral():
    n = 10
    W = ladder_witness_subgroup(n)
    v, w = W.generators
    assert (v ** n).is_identity() and (w * w).is_identity()
    assert w * v * w == v.inverse()


def test_d8_report():
    rep = d8_counterexample_report()
    assert rep.aut_order == 48
    assert rep.normal is False
    assert rep.babai_ci is False
    assert rep.named_pair_conjugate is False
    assert rep.conjugacy_class_count == 2
    assert rep.sylow2_order == 16 and rep.sylow2_contains_regular
    assert rep.passed
    assert rep.to_json()["passed"] is True


def test_d8_sylow_is_normaliser():
    from cayleyci.cayley import normaliser_of_regular
    from cayleyci.constructions import ladder_set
    rep = d8_counterexample_report()
    A = digraph_automorphisms(ladder(4))
    N = normaliser_of_regular(4, ladder_set(4))
    # 16 is the full 2-part of 48
    assert A.order() // rep.sylow2_order == 3
    assert N.order() == 16 and N.is_subgroup_of(A)
    assert right_regular_group(4).is_subgroup_of(N)
