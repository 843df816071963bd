"""3-CNF gadget: formulas in, unweighted unrelated-machines instances out.

``sat_to_uisum`` turns a 3-CNF formula into a unit-weight instance on
unrelated machines in which every job can be scheduled exactly when the
formula is satisfiable.  Each job's deadline is its rank in a fixed
ordering; on most machines a job's duration equals its deadline, pinning
the job to the interval (0, d] where the machine's dummy job blocks it.
Only the deliberate exceptions below leave room:

* the variable-selection machine of x admits both of x's truth jobs
  (they conflict with each other there);
* the two clause-selection machines of a clause admit that clause's
  three jobs (pairwise conflicting there);
* the validation machine of x admits both truth jobs and, as unit
  jobs, every clause job whose literal mentions x.  The 'false' job
  blocks exactly the negated-literal slots, the 'true' job exactly the
  plain-literal slots.

With one dummy per machine forced, scheduling all jobs amounts to
choosing a truth value per variable and a satisfied literal per clause.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional

from ..core import Instance, Job, ProcessingTable, Schedule, Variant
from ..errors import (
    BudgetExceededError,
    UsageError,
    ValidationError,
    WitnessError,
)
from .artifacts import (
    ClauseJobRole,
    ClauseSelectionMachine,
    DummyJobRole,
    JobRole,
    ReductionArtifact,
    SatValidationMachine,
    VariableJobRole,
    VariableSelectionMachine,
)

DEFAULT_SAT_VARIABLE_BUDGET = 24


@dataclass(frozen=True)
class Literal:
    """Occurrence of a variable (0-based index), possibly negated."""

    variable: int
    negated: bool

    def satisfied_by(self, value: bool) -> bool:
        return value != self.negated


@dataclass(frozen=True)
class CnfFormula:
    """CNF with exactly three literals per clause.

    Repeated variables and mixed polarities within one clause are
    allowed; 'exact (3,4)' shape (every variable occurring exactly four
    times) is a separate, optional check.
    """

    variable_count: int
    clauses: tuple[tuple[Literal, Literal, Literal], ...]

    def __post_init__(self):
        if self.variable_count < 0:
            raise UsageError("variable count must be >= 0")
        object.__setattr__(
            self, "clauses", tuple(tuple(clause) for clause in self.clauses)
        )
        for c, clause in enumerate(self.clauses):
            if len(clause) != 3:
                raise UsageError(f"clause {c} has {len(clause)} literals, need 3")
            for lit in clause:
                if not (0 <= lit.variable < self.variable_count):
                    raise UsageError(
                        f"clause {c} uses variable {lit.variable},"
                        f" known range 0..{self.variable_count - 1}"
                    )

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def occurrence_counts(self) -> list[int]:
        counts = [0] * self.variable_count
        for clause in self.clauses:
            for lit in clause:
                counts[lit.variable] += 1
        return counts

    def is_exact_3_4(self) -> bool:
        return all(c == 4 for c in self.occurrence_counts())

    def satisfied_by(self, assignment: Mapping[int, bool]) -> bool:
        return all(
            any(lit.satisfied_by(assignment[lit.variable]) for lit in clause)
            for clause in self.clauses
        )


def _job_id(role: JobRole) -> str:
    if isinstance(role, DummyJobRole):
        return f"dummy:{role.index}"
    if isinstance(role, ClauseJobRole):
        return f"clause:{role.clause}:{role.literal}"
    if isinstance(role, VariableJobRole):
        return f"var:{role.variable}:{'T' if role.polarity else 'F'}"
    raise UsageError(f"not a formula-gadget job role: {role!r}")


def sat_job_order(formula: CnfFormula) -> tuple[JobRole, ...]:
    """Job roles in deadline order, positions 1..4a+5b filled in.

    Blocks, in order: dummies (one per machine), clause jobs of negated
    literals, 'false' variable jobs, clause jobs of plain literals,
    'true' variable jobs.  Within a block: dummies by index, clause jobs
    by (clause, literal slot), variable jobs by variable index.
    """
    a = formula.variable_count
    b = formula.clause_count
    blocks: list[list] = [[], [], [], [], []]
    blocks[0] = [("dummy", t) for t in range(2 * a + 2 * b)]
    for c, clause in enumerate(formula.clauses):
        for s, lit in enumerate(clause):
            blocks[1 if lit.negated else 3].append(("clause", c, s, lit))
    blocks[2] = [("var", x, False) for x in range(a)]
    blocks[4] = [("var", x, True) for x in range(a)]

    roles: list[JobRole] = []
    pos = 0
    for block in blocks:
        for item in block:
            pos += 1
            if item[0] == "dummy":
                roles.append(DummyJobRole(index=item[1], position=pos))
            elif item[0] == "clause":
                _, c, s, lit = item
                roles.append(
                    ClauseJobRole(
                        clause=c,
                        literal=s,
                        variable=lit.variable,
                        negated=lit.negated,
                        position=pos,
                    )
                )
            else:
                _, x, polarity = item
                roles.append(
                    VariableJobRole(variable=x, polarity=polarity, position=pos)
                )
    return tuple(roles)


def sat_to_uisum(formula: CnfFormula, strict34: bool = False) -> ReductionArtifact:
    """Build the unit-weight unrelated-machines instance for a formula.

    Machines, in order: one variable-selection machine per variable, two
    clause-selection machines per clause, one validation machine per
    variable.  Every job's default duration on a machine is its deadline
    (blocked); the exceptions are listed in the module docstring.  The
    target is the job count 4a+5b: the instance is a yes-instance of the
    all-jobs decision exactly when the formula is satisfiable.

    With ``strict34`` the formula must have every variable occurring
    exactly four times (validation error naming offenders otherwise).
    """
    if strict34:
        offenders = {
            x: c for x, c in enumerate(formula.occurrence_counts()) if c != 4
        }
        if offenders:
            listing = ", ".join(f"variable {x}: {c}" for x, c in offenders.items())
            raise ValidationError(
                f"formula is not exact (3,4); occurrence counts off: {listing}"
            )

    a = formula.variable_count
    b = formula.clause_count
    block = 2 * a + 2 * b  # dummy count == machine count
    roles = sat_job_order(formula)
    n = len(roles)

    var_sel = {x: x for x in range(a)}
    clause_sel = {(c, copy): a + 2 * c + copy for c in range(b) for copy in (0, 1)}
    var_val = {x: a + 2 * b + x for x in range(a)}
    machine_count = block
    if machine_count == 0:
        raise UsageError("formula gadget needs at least one variable or clause")

    position = {}
    for role in roles:
        position[_job_id(role)] = role.position
    var_pos = {
        (r.variable, r.polarity): r.position
        for r in roles
        if isinstance(r, VariableJobRole)
    }

    jobs = []
    rows = []
    job_roles: dict[str, JobRole] = {}
    for role in roles:
        job_id = _job_id(role)
        d = role.position
        row = [d] * machine_count  # blocked everywhere by default
        if isinstance(role, VariableJobRole):
            x = role.variable
            if role.polarity:
                row[var_sel[x]] = d - block
                row[var_val[x]] = d - var_pos[(x, False)] + 1
            else:
                row[var_sel[x]] = d - block
                row[var_val[x]] = d - block
        elif isinstance(role, ClauseJobRole):
            row[clause_sel[(role.clause, 0)]] = d - block
            row[clause_sel[(role.clause, 1)]] = d - block
            row[var_val[role.variable]] = 1
        jobs.append(Job(job_id, deadline=d, weight=1))
        rows.append(tuple(row))
        job_roles[job_id] = role

    machine_roles = (
        tuple(VariableSelectionMachine(variable=x) for x in range(a))
        + tuple(
            ClauseSelectionMachine(clause=c, copy=copy)
            for c in range(b)
            for copy in (0, 1)
        )
        + tuple(SatValidationMachine(variable=x) for x in range(a))
    )
    instance = Instance(
        jobs=tuple(jobs),
        table=ProcessingTable(machine_count=machine_count, rows=tuple(rows)),
        variant=Variant.UNRELATED_UNWEIGHTED,
    )
    return ReductionArtifact(
        instance=instance,
        job_roles=job_roles,
        machine_roles=machine_roles,
        target=n,
        mode=None,
    )


def _sat_structure(artifact: ReductionArtifact):
    var_sel: dict[int, int] = {}
    clause_sel: dict[int, list[int]] = {}
    var_val: dict[int, int] = {}
    for i, role in enumerate(artifact.machine_roles):
        if isinstance(role, VariableSelectionMachine):
            var_sel[role.variable] = i
        elif isinstance(role, ClauseSelectionMachine):
            clause_sel.setdefault(role.clause, [None, None])[role.copy] = i
        elif isinstance(role, SatValidationMachine):
            var_val[role.variable] = i
        else:
            raise UsageError("artifact does not carry formula-gadget machine roles")
    return var_sel, clause_sel, var_val


def schedule_from_assignment(
    artifact: ReductionArtifact, assignment: Mapping[int, bool]
) -> Schedule:
    """Witness schedule for a satisfying assignment; schedules every job.

    Dummy t goes to machine t.  A true variable's 'true' job goes to its
    selection machine and its 'false' job to its validation machine (a
    false variable swaps them).  Each clause sends the job of its first
    satisfied literal to that literal's validation machine and the other
    two, in slot order, to its two clause-selection machines.  An
    assignment that leaves some clause unsatisfied is rejected with a
    witness error naming the clause.
    """
    var_sel, clause_sel, var_val = _sat_structure(artifact)
    variables = sorted(var_sel)
    missing = [x for x in variables if x not in assignment]
    if missing:
        raise UsageError(f"assignment misses variables {missing}")

    placement: dict[str, Optional[int]] = {}
    clause_lits: dict[int, list[ClauseJobRole]] = {}
    for job_id, role in artifact.job_roles.items():
        if isinstance(role, DummyJobRole):
            placement[job_id] = role.index
        elif isinstance(role, VariableJobRole):
            x = role.variable
            on_selection = role.polarity == bool(assignment[x])
            placement[job_id] = var_sel[x] if on_selection else var_val[x]
        elif isinstance(role, ClauseJobRole):
            clause_lits.setdefault(role.clause, []).append(role)
        else:
            raise UsageError("artifact mixes formula-gadget and other job roles")

    for c, lits in sorted(clause_lits.items()):
        lits.sort(key=lambda r: r.literal)
        satisfied = [
            r for r in lits if bool(assignment[r.variable]) != r.negated
        ]
        if not satisfied:
            raise WitnessError(f"assignment leaves clause {c} unsatisfied")
        chosen = satisfied[0]
        placement[_job_id(chosen)] = var_val[chosen.variable]
        rest = [r for r in lits if r is not chosen]
        for copy, role in enumerate(rest):
            placement[_job_id(role)] = clause_sel[c][copy]

    return Schedule(placement)


def assignment_from_schedule(
    artifact: ReductionArtifact, schedule: Schedule
) -> dict[int, bool]:
    """Read a truth assignment off a schedule that placed every job.

    A variable is true exactly when its 'true' job sits on its
    variable-selection machine.  Any rejected job is a usage error;
    feasibility is the caller's precondition (harnesses validate and
    then assert the assignment satisfies the source formula).
    """
    var_sel, _, _ = _sat_structure(artifact)
    rejected = [j for j, m in schedule.assignment.items() if m is None]
    if rejected:
        raise UsageError(f"schedule rejects jobs {sorted(rejected)}")
    result: dict[int, bool] = {}
    for job_id, role in artifact.job_roles.items():
        if isinstance(role, VariableJobRole) and role.polarity:
            result[role.variable] = (
                schedule.assignment[job_id] == var_sel[role.variable]
            )
    return dict(sorted(result.items()))


def brute_force_sat(
    formula: CnfFormula, *, budget_vars: int = DEFAULT_SAT_VARIABLE_BUDGET
) -> Optional[dict[int, bool]]:
    """First satisfying assignment in lexicographic order, or None.

    Assignments are enumerated with False before True, variable 0 most
    significant.  Refuses formulas with more than ``budget_vars``
    variables.
    """
    a = formula.variable_count
    if a > budget_vars:
        raise BudgetExceededError(
            f"brute-force satisfiability over {a} variables, budget {budget_vars}",
            budget=budget_vars,
            required=a,
        )
    for mask in range(1 << a):
        assignment = {
            x: bool((mask >> (a - 1 - x)) & 1) for x in range(a)
        }
        if formula.satisfied_by(assignment):
            return assignment
    return None
