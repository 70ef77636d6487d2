import json

import pytest

from cayleyci.cayley import ConnectionSet, parse_set
from cayleyci.census import (all_masks, graph_masks, mask_orbits,
                             predicted_claim, reduce_by_symmetry, verify_theorem, write_jsonl)
from cayleyci.dihedral import units


def test_same_orbit_for_unit_powers():
    n = 7
    sets = [parse_set(f"a^{k}", n) for k in units(n)]
    reps = reduce_by_symmetry(sets)
    assert len(reps) == 1 and reps[0][1] == len(units(n))


def test_same_orbit_for_reflections():
    n = 6
    reps = reduce_by_symmetry([parse_set(f"b*a^{i}", n) for i in range(n)])
    assert len(reps) == 1 and reps[0][1] == n


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_orbit_sizes_sum_to_all_sets(n):
    sets = [ConnectionSet.from_mask(n, m) for m in range(1 << (2 * n - 1))]
    reps = reduce_by_symmetry(sets)
    assert sum(size for _, size in reps) == 1 << (2 * n - 1)
    assert all(S.mask == min(m for m in mask_orbits(n, [S.mask])[S.mask]) for S, _ in reps)


def test_least_representative():
    n = 5
    (rep, size), = reduce_by_symmetry([parse_set("a^3", n)])
    assert rep == parse_set("a^1", n) and size == 4


@pytest.mark.parametrize("n", range(2, 10))
def test_graph_masks_are_exactly_inverse_closed(n):
    gm = graph_masks(n)
    assert all(ConnectionSet.from_mask(n, m).inverse_closed() for m in gm)
    if n <= 6:
        ref = [m for m in range(1 << (2 * n - 1)) if ConnectionSet.from_mask(n, m).inverse_closed()]
        assert gm == ref
    involutions = n + (1 if n % 2 == 0 else 0)
    assert len(gm) == 1 << (involutions + (n - 1) // 2)


def test_unknown_mode():
    with pytest.raises(ValueError):
        all_masks(3, "hypergraph")


def test_predicate():
    assert [n for n in range(2, 13) if predicted_claim(n)] == [2, 3, 4, 5, 7, 9, 11]


def test_small_digraph_censuses():
    v2 = verify_theorem(2, "digraph")
    assert v2.total_sets_scanned == 8 and v2.ci_all_count == 8 and v2.claim_matches_prediction
    v3 = verify_theorem(3, "digraph")
    assert v3.total_sets_scanned == 32 and not v3.normal_non_ci_examples and v3.claim_matches_prediction
    v4 = verify_theorem(4, "digraph")
    assert v4.total_sets_scanned == 128 and not v4.normal_non_ci_examples and v4.claim_matches_prediction


def test_graph_census_n6_contains_ladder():
    v = verify_theorem(6, "graph")
    assert v.complete and v.claim_matches_prediction
    assert parse_set("a^1,a^5,b*a^0", 6) in v.normal_non_ci_examples


@pytest.mark.parametrize("n", [3, 4])
def test_orbit_reduction_matches_direct_analysis(n):
    red = verify_theorem(n, "digraph")
    direct = verify_theorem(n, "digraph", reduce=False)
    keys = ("normal", "ci", "aut_order", "regular_subgroup_count")
    assert [tuple(r[k] for k in keys) for r in red.records] == \
        [tuple(r[k] for k in keys) for r in direct.records]


def test_budget_flags_incomplete():
    v = verify_theorem(4, "digraph", budget=50)
    assert not v.complete and v.total_sets_scanned == 50


def test_sampled_mode_deterministic():
    a = verify_theorem(6, "digraph", exhaustive=False, samples=40, seed=3, keep_records=False)
    b = verify_theorem(6, "digraph", exhaustive=False, samples=40, seed=3, keep_records=False)
    assert a.to_json() | {"seconds": 0} == b.to_json() | {"seconds": 0}
    assert a.seed == 3 and not a.exhaustive
    # all sets of size <= 4 and their complements
    assert a.total_sets_scanned >= 2 * sum(1 for m in range(1 << 11) if bin(m).count("1") <= 4) - 1


def test_parallel_run_matches_serial():
    a = verify_theorem(4, "digraph")
    b = verify_theorem(4, "digraph", jobs=2)
    assert a.records == b.records


def test_soundness_counts():
    v = verify_theorem(4, "digraph", soundness=True)
    assert v.soundness_violations == 0
    assert any(r["wreath_witness"] for r in v.records)


@pytest.mark.parametrize("n,mode", [(2, "graph"), (5, "graph"), (6, "graph"), (4, "digraph")])
def test_verdict_invariant(n, mode):
    v = verify_theorem(n, mode, keep_records=False)
    assert v.claim_matches_prediction == ((not v.normal_non_ci_examples) == predicted_claim(n))
    assert v.claim_matches_prediction


def test_jsonl_output(tmp_path):
    v = verify_theorem(3, "graph")
    path = tmp_path / "census-n3-graph.jsonl"
    write_jsonl(v, path)
    lines = [json.loads(x) for x in path.read_text().splitlines()]
    assert len(lines) == v.total_sets_scanned + 1
    assert [r["mask"] for r in lines[:-1]] == sorted(graph_masks(3))
    assert lines[-1]["summary"]["claim_matches_prediction"] is True
