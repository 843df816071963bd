"""
From 3-CNF satisfiability to all-jobs scheduling
================================================

The formula gadget maps a 3-CNF to a unit-weight unrelated-machines
instance that can schedule every job exactly when the formula is
satisfiable.  Dummies block the early slots, variable jobs commit a
polarity, and each clause's three jobs need one literal's validation
machine to be free.
"""

from jitsched.core import validate_schedule
from jitsched.io import parse_dimacs, write_dimacs
from jitsched.reductions.sat import (
    assignment_from_schedule,
    brute_force_sat,
    sat_to_uisum,
    schedule_from_assignment,
)
from jitsched.solvers import solve_all_jobs_decision

formula = parse_dimacs("""\
p cnf 2 2
1 -2 2 0
-1 -1 2 0
""")
print("formula:")
print(write_dimacs(formula), end="")

artifact = sat_to_uisum(formula)
print(f"gadget: {artifact.instance.job_count} jobs on"
      f" {artifact.instance.machine_count} machines (unit weights)")

# Forward: a satisfying assignment schedules everything.
model = brute_force_sat(formula)
witness = schedule_from_assignment(artifact, model)
print(f"model {model}: {validate_schedule(artifact.instance, witness).describe()}")

# Backward: the solver's schedule reads back as a satisfying assignment.
decision = solve_all_jobs_decision(artifact.instance)
extracted = assignment_from_schedule(artifact, decision.schedule)
print(f"decision feasible={decision.feasible}, extracted {extracted},"
      f" satisfies={formula.satisfied_by(extracted)}")

# An unsatisfiable formula yields an infeasible instance.
contradiction = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
blocked = sat_to_uisum(contradiction)
print(f"contradiction gadget feasible:"
      f" {solve_all_jobs_decision(blocked.instance).feasible}")
