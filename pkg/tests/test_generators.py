"""Seeded generators: graphs, formulas, random instances."""
import pytest

from jitsched.core import Variant
from jitsched.errors import UsageError
from jitsched.generators import (
    gen_3cnf,
    gen_kpartite,
    gen_random_instance,
    gen_random_unrelated,
    planted_clique_of,
)


# --- k-partite graphs -----------------------------------------------------------

def test_kpartite_is_deterministic():
    a = gen_kpartite(3, (2, 3, 1), edge_prob=0.5, plant_clique=False, seed=42)
    b = gen_kpartite(3, (2, 3, 1), edge_prob=0.5, plant_clique=False, seed=42)
    assert a == b
    c = gen_kpartite(3, (2, 3, 1), edge_prob=0.5, plant_clique=False, seed=43)
    assert a != c


def test_kpartite_shape():
    g = gen_kpartite(3, (2, 3, 1), edge_prob=1.0, plant_clique=False, seed=0)
    assert tuple(len(p) for p in g.parts) == (2, 3, 1)
    assert g.vertex_count == 6
    # full probability yields every cross-color pair
    assert len(g.edges) == 2 * 3 + 2 * 1 + 3 * 1


def test_kpartite_scalar_size_broadcasts():
    g = gen_kpartite(3, 2, edge_prob=0.0, plant_clique=False, seed=0)
    assert tuple(len(p) for p in g.parts) == (2, 2, 2)


def test_planted_clique_is_valid_and_known():
    for seed in range(20):
        g = gen_kpartite(3, (3, 2, 3), edge_prob=0.3, plant_clique=True, seed=seed)
        witness = planted_clique_of(3, (3, 2, 3), seed)
        colors = sorted(g.color_of[v] for v in witness.vertices)
        assert colors == [1, 2, 3]
        for i, u in enumerate(witness.vertices):
            for w in witness.vertices[i + 1:]:
                assert g.has_edge(u, w)


def test_planting_only_adds_edges():
    for seed in range(20):
        base = gen_kpartite(3, (3, 3, 3), edge_prob=0.3, plant_clique=False, seed=seed)
        planted = gen_kpartite(3, (3, 3, 3), edge_prob=0.3, plant_clique=True, seed=seed)
        assert set(base.edges) <= set(planted.edges)
        extra = set(planted.edges) - set(base.edges)
        witness = set(planted_clique_of(3, (3, 3, 3), seed).vertices)
        assert all(u in witness and w in witness for u, w in extra)


def test_kpartite_rejects_bad_parameters():
    with pytest.raises(UsageError):
        gen_kpartite(1, 2, edge_prob=0.5, plant_clique=False, seed=0)
    with pytest.raises(UsageError):
        gen_kpartite(2, 2, edge_prob=1.5, plant_clique=False, seed=0)
    with pytest.raises(UsageError):
        gen_kpartite(2, (2,), edge_prob=0.5, plant_clique=False, seed=0)


# --- formulas --------------------------------------------------------------------

def test_3cnf_is_deterministic_and_in_range():
    a = gen_3cnf(alpha=3, beta=5, seed=9)
    assert a == gen_3cnf(alpha=3, beta=5, seed=9)
    assert a.variable_count == 3 and a.clause_count == 5
    for clause in a.clauses:
        assert len(clause) == 3
        for lit in clause:
            assert 0 <= lit.variable < 3


def test_3cnf_strict34_has_exact_occurrences():
    for seed in range(10):
        f = gen_3cnf(alpha=3, beta=4, seed=seed, strict34=True)
        assert f.is_exact_3_4()
        assert f.occurrence_counts() == [4, 4, 4]


def test_3cnf_strict34_requires_matching_counts():
    with pytest.raises(UsageError):
        gen_3cnf(alpha=2, beta=2, seed=0, strict34=True)


def test_3cnf_rejects_bad_parameters():
    with pytest.raises(UsageError):
        gen_3cnf(alpha=0, beta=1, seed=0)
    with pytest.raises(UsageError):
        gen_3cnf(alpha=1, beta=-1, seed=0)


# --- random instances ---------------------------------------------------------------

def test_random_instance_bounds_and_determinism():
    a = gen_random_instance(n=8, m=3, max_d=9, max_p=6, max_w=20,
                            eligibility_prob=0.7, seed=4)
    assert a == gen_random_instance(n=8, m=3, max_d=9, max_p=6, max_w=20,
                                    eligibility_prob=0.7, seed=4)
    assert a.variant is Variant.ELIGIBLE
    assert a.job_count == 8 and a.machine_count == 3
    for job, row in zip(a.jobs, a.table.rows):
        assert 1 <= job.deadline <= 9
        assert 0 <= job.weight <= 20
        durations = {p for p in row if p is not None}
        assert len(durations) <= 1
        assert all(0 <= p <= 6 for p in durations)


def test_random_instance_full_eligibility():
    inst = gen_random_instance(n=6, m=2, max_d=5, max_p=5, max_w=5,
                               eligibility_prob=1.0, seed=1)
    assert all(None not in row for row in inst.table.rows)


def test_random_unrelated_has_no_holes():
    inst = gen_random_unrelated(n=6, m=3, max_d=5, max_p=5, max_w=9, seed=2)
    assert inst.variant is Variant.UNRELATED
    assert all(None not in row for row in inst.table.rows)
    assert all(0 <= p <= 5 for row in inst.table.rows for p in row)


def test_random_unrelated_unit_weights():
    inst = gen_random_unrelated(n=5, m=2, max_d=5, max_p=5, max_w=9, seed=3,
                                unit_weights=True)
    assert inst.variant is Variant.UNRELATED_UNWEIGHTED
    assert all(job.weight == 1 for job in inst.jobs)


def test_random_generators_reject_bad_parameters():
    with pytest.raises(UsageError):
        gen_random_instance(n=1, m=0, max_d=5, max_p=5, max_w=5,
                            eligibility_prob=0.5, seed=0)
    with pytest.raises(UsageError):
        gen_random_instance(n=1, m=1, max_d=0, max_p=5, max_w=5,
                            eligibility_prob=0.5, seed=0)
    with pytest.raises(UsageError):
        gen_random_instance(n=1, m=1, max_d=5, max_p=5, max_w=5,
                            eligibility_prob=2.0, seed=0)
    with pytest.raises(UsageError):
        gen_random_unrelated(n=-1, m=1, max_d=5, max_p=5, max_w=5, seed=0)
