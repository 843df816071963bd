"""
Exact solvers and their cross-checks
====================================

The frontier dynamic program processes jobs in deadline order and
tracks, per machine, how far the last accepted job reaches.  Brute
force enumerates every assignment and is the reference oracle at tiny
sizes.  On one machine a simple chain DP suffices.
"""

from jitsched.generators import gen_random_instance, gen_random_unrelated
from jitsched.solvers import (
    solve_all_jobs_decision,
    solve_brute_force,
    solve_frontier_dp,
    solve_single_machine,
)

instance = gen_random_unrelated(n=7, m=2, max_d=10, max_p=8, max_w=50, seed=11)
print(f"{instance.job_count} jobs on {instance.machine_count} machines")

dp = solve_frontier_dp(instance)
reference = solve_brute_force(instance)
print(f"frontier DP optimum {dp.optimum}, brute force {reference.optimum}")
assert dp.optimum == reference.optimum

# The DP's per-layer state counts stay far below the (n+1)^m ceiling
# because equal-reach frontiers are merged by rank.
bound = (instance.job_count + 1) ** instance.machine_count
print(f"layer states {dp.stats.layer_states} (bound {bound})")

# Dominance pruning is optional and never changes the answer.
pruned = solve_frontier_dp(instance, prune_dominated=True)
print(f"pruned: {pruned.stats.states_explored} states"
      f" vs {dp.stats.states_explored} unpruned")

# The all-jobs decision asks whether rejection can be avoided entirely.
decision = solve_all_jobs_decision(instance)
print(f"all jobs schedulable: {decision.feasible}")

# Single-machine chain DP against the same oracle.
chain = gen_random_instance(n=6, m=1, max_d=10, max_p=6, max_w=30,
                            eligibility_prob=1.0, seed=3)
assert solve_single_machine(chain).optimum == solve_brute_force(chain).optimum
print(f"single-machine optimum {solve_single_machine(chain).optimum}"
      " (matches brute force)")
