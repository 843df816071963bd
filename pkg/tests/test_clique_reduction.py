"""Clique gadget: graph model, weight ladder, witnesses, extraction."""
import random

import pytest

from jitsched.core import ConflictViolation, Variant, interval_of, intervals_conflict, validate_schedule
from jitsched.errors import BudgetExceededError, UsageError, WitnessError
from jitsched.generators import gen_kpartite, planted_clique_of
from jitsched.reductions.artifacts import PATCHED, VERBATIM
from jitsched.reductions.clique import (
    CliqueWitness,
    ExtractionFailure,
    KPartiteGraph,
    brute_force_clique,
    clique_from_schedule,
    mcc_target,
    mcc_to_isem,
    schedule_from_clique,
    weight_constants,
)
from jitsched.solvers import solve_frontier_dp

TWO_VERTEX = KPartiteGraph(parts=(("a",), ("b",)), edges=(("a", "b"),))
TRIANGLE = KPartiteGraph(
    parts=(("u",), ("v",), ("w",)),
    edges=(("u", "v"), ("u", "w"), ("v", "w")),
)
# Every color is coverable and every color pair has an edge, yet no
# transversal is pairwise adjacent.  Threshold schedules on this graph
# exist without any clique behind them.
CLIQUELESS = KPartiteGraph(
    parts=(("a1", "a2"), ("b",), ("c",)),
    edges=(("a1", "b"), ("a2", "c"), ("b", "c")),
)


# --- graph model -------------------------------------------------------------

def test_graph_normalizes_edges():
    flipped = KPartiteGraph(parts=(("a",), ("b",)), edges=(("b", "a"),))
    assert flipped == TWO_VERTEX
    assert flipped.has_edge("a", "b") and flipped.has_edge("b", "a")


def test_graph_rejects_same_color_edge():
    with pytest.raises(UsageError):
        KPartiteGraph(parts=(("a", "b"),), edges=(("a", "b"),))


def test_graph_rejects_unknown_endpoint():
    with pytest.raises(UsageError):
        KPartiteGraph(parts=(("a",), ("b",)), edges=(("a", "zzz"),))


def test_graph_rejects_duplicate_vertex():
    with pytest.raises(UsageError):
        KPartiteGraph(parts=(("a",), ("a",)), edges=())


def test_color_lookup():
    assert CLIQUELESS.color_of["a2"] == 1
    assert CLIQUELESS.color_of["c"] == 3
    assert CLIQUELESS.k == 3 and CLIQUELESS.vertex_count == 4


# --- weight ladder ------------------------------------------------------------

def test_frozen_weight_constants():
    assert weight_constants(2, 2).as_tuple() == (3, 9, 217)
    assert weight_constants(3, 3).as_tuple() == (4, 28, 3025)
    assert weight_constants(3, 6).as_tuple() == (7, 91, 39313)


def test_ladder_formulas_hold_generally():
    for k in (2, 3, 4):
        for n in (k, k + 2, 3 * k):
            c1, c2, c3 = weight_constants(k, n).as_tuple()
            assert c1 == n + 1
            assert c2 == (k - 1) * n * c1 + n + 1
            assert c3 == (k * n + k * k * n) * n * c2 + 1


# --- frozen artifacts ----------------------------------------------------------

def test_two_vertex_artifact_rows():
    art = mcc_to_isem(TWO_VERTEX)
    assert art.mode == PATCHED
    assert art.target == 243
    assert art.instance.machine_count == 2
    assert art.instance.variant is Variant.ELIGIBLE
    rows = {
        job.id: (job.deadline, job.weight, row)
        for job, row in zip(art.instance.jobs, art.instance.table.rows)
    }
    assert rows == {
        "vertex:a:1": (5, 1, (None, 4)),
        "vertex:a:2": (2, 3, (1, 1)),
        "vertex:b:1": (7, 3, (1, 1)),
        "vertex:b:2": (9, 1, (None, 4)),
        "edge:a:b": (6, 226, (4, None)),
        "combo:a:1.2": (1, 9, (0, None)),
        "combo:b:1.2": (10, 0, (3, None)),
    }
    assert [r.kind for r in art.machine_roles] == [
        "edge-selection",
        "clique-validation",
    ]


def test_verbatim_differs_only_in_edge_durations():
    patched = mcc_to_isem(TWO_VERTEX, mode=PATCHED)
    verbatim = mcc_to_isem(TWO_VERTEX, mode=VERBATIM)
    assert verbatim.mode == VERBATIM
    assert verbatim.target == patched.target
    for job, prow, vrow in zip(
        patched.instance.jobs, patched.instance.table.rows, verbatim.instance.table.rows
    ):
        if verbatim.role_of(job.id).kind == "edge":
            assert [p + 1 if p is not None else None for p in prow] == list(vrow)
        else:
            assert prow == vrow


def test_triangle_target():
    assert mcc_target(TRIANGLE) == 9354


# --- witness construction -------------------------------------------------------

def test_patched_witness_is_feasible_at_target():
    art = mcc_to_isem(TWO_VERTEX)
    report = validate_schedule(art.instance, schedule_from_clique(art, ("a", "b")))
    assert report.feasible
    assert report.total_weight == art.target


def test_triangle_witness_is_feasible_at_target():
    art = mcc_to_isem(TRIANGLE)
    witness = schedule_from_clique(art, CliqueWitness(("u", "v", "w")))
    report = validate_schedule(art.instance, witness)
    assert report.feasible and report.total_weight == 9354


def test_verbatim_witness_has_exactly_one_conflict():
    art = mcc_to_isem(TWO_VERTEX, mode=VERBATIM)
    report = validate_schedule(art.instance, schedule_from_clique(art, ("a", "b")))
    assert report.total_weight == 243
    assert report.violations == (
        ConflictViolation(0, "vertex:a:2", "edge:a:b"),
    )


def test_witness_rejects_duplicate_color():
    art = mcc_to_isem(CLIQUELESS)
    with pytest.raises(WitnessError):
        schedule_from_clique(art, ("a1", "a2", "b"))


def test_witness_rejects_missing_color():
    art = mcc_to_isem(CLIQUELESS)
    with pytest.raises(WitnessError):
        schedule_from_clique(art, ("a1", "b"))


def test_witness_rejects_non_edge_pair():
    art = mcc_to_isem(CLIQUELESS)
    with pytest.raises(WitnessError):
        schedule_from_clique(art, ("a1", "b", "c"))


def test_witness_rejects_unknown_vertex():
    art = mcc_to_isem(TWO_VERTEX)
    with pytest.raises(WitnessError):
        schedule_from_clique(art, ("a", "nope"))


# --- extraction -----------------------------------------------------------------

def test_extraction_inverts_witness():
    art = mcc_to_isem(TRIANGLE)
    witness = schedule_from_clique(art, ("u", "v", "w"))
    assert clique_from_schedule(art, witness) == CliqueWitness(("u", "v", "w"))


def test_extraction_requires_threshold_weight():
    from jitsched.core import empty_schedule

    art = mcc_to_isem(TWO_VERTEX)
    with pytest.raises(UsageError):
        clique_from_schedule(art, empty_schedule(art.instance))


def test_cliqueless_threshold_schedule_defeats_extraction():
    # Regression pin: the gadget's reverse direction is not airtight.
    # This graph has no multicolored clique, yet the exact optimum
    # exceeds the target and decodes to an incomplete selection.
    assert brute_force_clique(CLIQUELESS) is None
    art = mcc_to_isem(CLIQUELESS)
    assert art.target == 26506
    result = solve_frontier_dp(art.instance)
    assert result.optimum == 26550
    outcome = clique_from_schedule(art, result.schedule)
    assert isinstance(outcome, ExtractionFailure)
    assert outcome.selected == ("b", "c")
    assert outcome.missing_colors == (1,)
    assert "clique" in outcome.describe()


# --- shape invariants ------------------------------------------------------------

@pytest.mark.parametrize("trial", range(12))
def test_artifact_shape_invariants(trial):
    rng = random.Random(7600 + trial)
    k = rng.choice((2, 3))
    sizes = [rng.randint(1, 3) for _ in range(k)]
    graph = gen_kpartite(
        k, sizes, edge_prob=0.6, plant_clique=False, seed=rng.randrange(2**32)
    )
    art = mcc_to_isem(graph)
    n = graph.vertex_count
    pairs = k * (k - 1) // 2
    c1, c2, c3 = weight_constants(k, n).as_tuple()

    assert art.instance.machine_count == pairs + 1
    # each vertex has k vertex jobs plus one combo job per pair
    # containing its own color, so k-1 combo jobs
    assert len(art.instance.jobs) == n * k + len(graph.edges) + n * (k - 1)
    assert all(job.weight <= n * c2 + c3 for job in art.instance.jobs)

    # edge jobs live on exactly one machine and pairwise conflict there
    by_machine = {}
    for job, row in zip(art.instance.jobs, art.instance.table.rows):
        if art.role_of(job.id).kind != "edge":
            continue
        eligible = [i for i, p in enumerate(row) if p is not None]
        assert len(eligible) == 1
        by_machine.setdefault(eligible[0], []).append(job.id)
    for machine, ids in by_machine.items():
        for pos, a in enumerate(ids):
            for b in ids[pos + 1:]:
                assert intervals_conflict(
                    interval_of(art.instance, a, machine),
                    interval_of(art.instance, b, machine),
                )


@pytest.mark.parametrize("trial", range(8))
def test_planted_witness_round_trip(trial):
    rng = random.Random(7700 + trial)
    k = rng.choice((2, 3))
    sizes = [rng.randint(1, 3) for _ in range(k)]
    seed = rng.randrange(2**32)
    graph = gen_kpartite(k, sizes, edge_prob=0.5, plant_clique=True, seed=seed)
    witness = planted_clique_of(k, sizes, seed)
    art = mcc_to_isem(graph)
    schedule = schedule_from_clique(art, witness)
    report = validate_schedule(art.instance, schedule)
    assert report.feasible and report.total_weight == art.target
    assert clique_from_schedule(art, schedule) == witness


def test_brute_force_clique_budget():
    graph = gen_kpartite(3, [4, 4, 4], edge_prob=1.0, plant_clique=False, seed=1)
    with pytest.raises(BudgetExceededError):
        brute_force_clique(graph, budget=10)
