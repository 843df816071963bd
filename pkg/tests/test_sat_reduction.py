"""Formula gadget: CNF model, unit-weight instance, witnesses, equivalence."""
import random

import pytest

from jitsched.core import Variant, validate_schedule
from jitsched.errors import UsageError, ValidationError, WitnessError
from jitsched.generators import gen_3cnf
from jitsched.reductions.sat import (
    CnfFormula,
    Literal,
    brute_force_sat,
    sat_job_order,
    sat_to_uisum,
    schedule_from_assignment,
    assignment_from_schedule,
)
from jitsched.solvers import solve_all_jobs_decision

# x or x or not-x: satisfiable by either polarity
TAUTOLOGY = CnfFormula(1, ((Literal(0, False), Literal(0, False), Literal(0, True)),))
# x and not-x, padded to three literals per clause
CONTRADICTION = CnfFormula(1, ((Literal(0, False),) * 3, (Literal(0, True),) * 3))


# --- formula model ------------------------------------------------------------

def test_formula_rejects_wrong_literal_count():
    with pytest.raises(UsageError):
        CnfFormula(1, ((Literal(0, False), Literal(0, True)),))


def test_formula_rejects_variable_out_of_range():
    with pytest.raises(UsageError):
        CnfFormula(1, ((Literal(0, False), Literal(0, False), Literal(1, False)),))


def test_occurrence_counts():
    assert TAUTOLOGY.occurrence_counts() == [3]
    assert not TAUTOLOGY.is_exact_3_4()


def test_satisfied_by():
    assert TAUTOLOGY.satisfied_by({0: True})
    assert TAUTOLOGY.satisfied_by({0: False})
    assert not CONTRADICTION.satisfied_by({0: True})
    assert not CONTRADICTION.satisfied_by({0: False})


# --- frozen artifact -----------------------------------------------------------

def test_tautology_artifact_rows():
    art = sat_to_uisum(TAUTOLOGY)
    assert art.target == 9
    assert art.instance.machine_count == 4
    assert art.instance.variant is Variant.UNRELATED_UNWEIGHTED
    listing = [
        (job.id, job.deadline, row)
        for job, row in zip(art.instance.jobs, art.instance.table.rows)
    ]
    assert listing == [
        ("dummy:0", 1, (1, 1, 1, 1)),
        ("dummy:1", 2, (2, 2, 2, 2)),
        ("dummy:2", 3, (3, 3, 3, 3)),
        ("dummy:3", 4, (4, 4, 4, 4)),
        ("clause:0:2", 5, (5, 1, 1, 1)),
        ("var:0:F", 6, (2, 6, 6, 2)),
        ("clause:0:0", 7, (7, 3, 3, 1)),
        ("clause:0:1", 8, (8, 4, 4, 1)),
        ("var:0:T", 9, (5, 9, 9, 4)),
    ]
    assert all(job.weight == 1 for job in art.instance.jobs)
    assert [r.kind for r in art.machine_roles] == [
        "variable-selection",
        "clause-selection",
        "clause-selection",
        "sat-validation",
    ]


def test_job_order_matches_role_positions():
    formula = gen_3cnf(alpha=3, beta=3, seed=11)
    art = sat_to_uisum(formula)
    roles = sat_job_order(formula)
    assert [r.position for r in roles] == list(range(1, len(roles) + 1))
    assert [art.role_of(job.id) for job in art.instance.jobs] == list(roles)
    # dummies come first, then the mixed formula jobs by deadline
    deadlines = [job.deadline for job in art.instance.jobs]
    assert deadlines == sorted(deadlines)
    assert deadlines == list(range(1, len(deadlines) + 1))


def test_shape_counts():
    for alpha, beta in ((1, 1), (2, 1), (2, 3), (3, 3)):
        formula = gen_3cnf(alpha=alpha, beta=beta, seed=alpha * 10 + beta)
        art = sat_to_uisum(formula)
        assert art.instance.machine_count == 2 * alpha + 2 * beta
        dummies = [
            j for j in art.instance.jobs if art.role_of(j.id).kind == "dummy"
        ]
        assert len(dummies) == art.instance.machine_count
        assert len(art.instance.jobs) == 4 * alpha + 5 * beta
        assert art.target == len(art.instance.jobs)
        assert len(art.machines_with_role("variable-selection")) == alpha
        assert len(art.machines_with_role("clause-selection")) == 2 * beta
        assert len(art.machines_with_role("sat-validation")) == alpha


def test_strict34_names_offenders():
    with pytest.raises(ValidationError, match="variable 0: 3"):
        sat_to_uisum(TAUTOLOGY, strict34=True)


# --- witnesses --------------------------------------------------------------------

@pytest.mark.parametrize("value", (True, False))
def test_witness_round_trip_both_polarities(value):
    art = sat_to_uisum(TAUTOLOGY)
    schedule = schedule_from_assignment(art, {0: value})
    report = validate_schedule(art.instance, schedule)
    assert report.feasible and report.total_weight == 9
    assert len(schedule.scheduled_ids()) == 9
    assert assignment_from_schedule(art, schedule) == {0: value}


def test_witness_rejects_unsatisfying_assignment():
    formula = CnfFormula(1, ((Literal(0, False),) * 3,))
    art = sat_to_uisum(formula)
    with pytest.raises(WitnessError, match="clause 0"):
        schedule_from_assignment(art, {0: False})


def test_witness_rejects_partial_assignment():
    formula = gen_3cnf(alpha=2, beta=1, seed=3)
    art = sat_to_uisum(formula)
    with pytest.raises(UsageError):
        schedule_from_assignment(art, {0: True})


def test_assignment_readback_rejects_incomplete_schedule():
    from jitsched.core import empty_schedule

    art = sat_to_uisum(TAUTOLOGY)
    with pytest.raises(UsageError):
        assignment_from_schedule(art, empty_schedule(art.instance))


# --- unsatisfiable side --------------------------------------------------------------

def test_contradiction_gives_infeasible_instance():
    art = sat_to_uisum(CONTRADICTION)
    assert len(art.instance.jobs) == 14
    assert art.instance.machine_count == 6
    assert brute_force_sat(CONTRADICTION) is None
    assert not solve_all_jobs_decision(art.instance).feasible


def test_brute_force_sat_budget():
    formula = gen_3cnf(alpha=3, beta=2, seed=5)
    from jitsched.errors import BudgetExceededError

    with pytest.raises(BudgetExceededError):
        brute_force_sat(formula, budget_vars=2)


# --- equivalence ----------------------------------------------------------------------

@pytest.mark.parametrize("trial", range(30))
def test_decision_tracks_satisfiability(trial):
    rng = random.Random(7800 + trial)
    formula = gen_3cnf(
        alpha=rng.randint(1, 3), beta=rng.randint(1, 3), seed=rng.randrange(2**32)
    )
    art = sat_to_uisum(formula)
    model = brute_force_sat(formula)
    decision = solve_all_jobs_decision(art.instance)
    assert decision.feasible == (model is not None)
    if model is None:
        return
    witness = schedule_from_assignment(art, model)
    assert validate_schedule(art.instance, witness).feasible
    # the solver's own schedule must decode to a satisfying assignment
    report = validate_schedule(art.instance, decision.schedule)
    assert report.feasible
    extracted = assignment_from_schedule(art, decision.schedule)
    assert formula.satisfied_by(extracted)
