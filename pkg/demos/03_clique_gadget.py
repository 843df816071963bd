"""
From multicolored cliques to weighted scheduling
================================================

The clique gadget turns "does this k-partite graph contain a clique
with one vertex per color" into "does this eligible-machines instance
have a schedule of weight at least the target".  A three-rung weight
ladder (filler, combination, edge anchors) forces any threshold
schedule to pick exactly one edge job per color pair.
"""

from jitsched.core import validate_schedule
from jitsched.reductions.artifacts import VERBATIM
from jitsched.reductions.clique import (
    KPartiteGraph,
    brute_force_clique,
    clique_from_schedule,
    mcc_to_isem,
    schedule_from_clique,
    weight_constants,
)
from jitsched.solvers import solve_frontier_dp

graph = KPartiteGraph(
    parts=(("u",), ("v",), ("w",)),
    edges=(("u", "v"), ("u", "w"), ("v", "w")),
)
print(f"ladder constants {weight_constants(graph.k, graph.vertex_count).as_tuple()}")

artifact = mcc_to_isem(graph)
print(f"gadget: {artifact.instance.job_count} jobs,"
      f" {artifact.instance.machine_count} machines, target {artifact.target}")

# Forward direction: a clique becomes a threshold witness schedule.
clique = brute_force_clique(graph)
witness = schedule_from_clique(artifact, clique)
report = validate_schedule(artifact.instance, witness)
print(f"witness from {clique.vertices}: {report.describe()}")

# Backward direction: decode the solver's own optimal schedule.
result = solve_frontier_dp(artifact.instance)
print(f"solver optimum {result.optimum}")
print(f"decoded: {clique_from_schedule(artifact, result.schedule)}")

# Verbatim mode keeps the longer edge-job duration; the same witness
# then carries exactly one overlap on an edge-selection machine.
verbatim = mcc_to_isem(graph, mode=VERBATIM)
verbatim_report = validate_schedule(
    verbatim.instance, schedule_from_clique(verbatim, clique)
)
print("\nverbatim mode witness:")
print(verbatim_report.describe())
