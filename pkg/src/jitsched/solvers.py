"""Exact solvers.

Every solver is deterministic: identical inputs and flags produce the
identical schedule, not merely the same optimum.  Work limits are
explicit parameters; exceeding one raises BudgetExceededError, which is
distinct from an instance being infeasible.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right, insort
from dataclasses import dataclass, field
from typing import Optional

from .core import Instance, Schedule, REJECTED
from .errors import BudgetExceededError, UsageError, checked_add

#: Default cap on (m+1)^n complete assignments for the brute-force solver.
DEFAULT_ASSIGNMENT_BUDGET = 200_000_000

#: Default cap on search nodes for the all-jobs decision solver.
DEFAULT_NODE_BUDGET = 10_000_000


@dataclass(frozen=True)
class SolveStats:
    """Work counters.

    ``states_explored``  total memoized states (DP) or leaves reached (search)
    ``nodes_expanded``   transitions or search nodes attempted
    ``layer_states``     frontier-DP states alive per processed job, in
                         deadline order; empty for the other solvers
    """

    states_explored: int
    nodes_expanded: int
    layer_states: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class OptResult:
    optimum: int
    schedule: Schedule
    stats: SolveStats


@dataclass(frozen=True)
class DecisionResult:
    """Outcome of the all-jobs decision: a schedule, or None if infeasible."""

    schedule: Optional[Schedule]
    stats: SolveStats

    @property
    def feasible(self) -> bool:
        return self.schedule is not None


def _deadline_order(instance: Instance) -> list[int]:
    # Stable sort keeps input order among equal deadlines.
    return sorted(range(instance.job_count), key=lambda k: instance.jobs[k].deadline)


def _split_zero_duration(instance: Instance, order: list[int]):
    """Peel off jobs that fit in an empty interval somewhere.

    A job with duration zero on some eligible machine occupies no time
    there, so taking it on the lowest such machine is always optimal and
    never constrains any other job.  Returns (greedy assignment map,
    greedy weight, remaining order).
    """
    greedy: dict[str, int] = {}
    gained = 0
    remaining = []
    for k in order:
        row = instance.table.rows[k]
        zero = next((i for i, p in enumerate(row) if p == 0), None)
        if zero is None:
            remaining.append(k)
        else:
            greedy[instance.jobs[k].id] = zero
            gained = checked_add(gained, instance.jobs[k].weight, "schedule weight")
    return greedy, gained, remaining


def _frontier_floor(instance: Instance, remaining: list[int]) -> int:
    """A frontier value at or below every possible start time.

    Durations may exceed deadlines, so intervals can start at negative
    times; an all-zero initial frontier would wrongly forbid them.
    """
    low = 0
    for k in remaining:
        d = instance.jobs[k].deadline
        for p in instance.table.rows[k]:
            if p is not None and d - p < low:
                low = d - p
    return low


def _future_start_lists(
    instance: Instance, remaining: list[int]
) -> list[list[list[int]]]:
    """Per processing position, the sorted distinct future starts per machine.

    Entry t holds, for each machine, the sorted deduplicated start times
    d - p of the jobs at positions t.. that are eligible there.  Entry
    len(remaining) is all-empty.
    """
    m = instance.machine_count
    lists: list[list[list[int]]] = [[[] for _ in range(m)]]
    counts: list[dict[int, int]] = [dict() for _ in range(m)]
    for k in reversed(remaining):
        d = instance.jobs[k].deadline
        current = [list(values) for values in lists[0]]
        for i, p in enumerate(instance.table.rows[k]):
            if p is None:
                continue
            start = d - p
            seen = counts[i].get(start, 0)
            counts[i][start] = seen + 1
            if seen == 0:
                insort(current[i], start)
        lists.insert(0, current)
    return lists


def solve_frontier_dp(
    instance: Instance,
    *,
    prune_dominated: bool = False,
    state_budget: Optional[int] = None,
) -> OptResult:
    """Exact optimum via dynamic programming over per-machine frontiers.

    Jobs are processed in deadline order (ties by input position).  A
    state records, per machine, the latest deadline scheduled there so
    far; job j fits machine i exactly when its start d - p is at or past
    that frontier.  Each job is either rejected or assigned to one
    fitting eligible machine; zero-duration jobs are assigned up front
    and never enter the state space.

    Internally a frontier value is stored as its rank among the distinct
    start times still to come on that machine: frontiers that admit the
    same set of future starts are interchangeable, so merging them loses
    no schedules and keeps the state space small.  Per layer at most
    (n+1)^m states can exist either way, which ``stats.layer_states``
    lets callers check.

    Ties are broken deterministically: rejection is considered before
    machines in ascending index order, and an equal-weight later option
    never replaces an earlier one.

    ``prune_dominated`` drops states whose frontier is componentwise no
    better and weight no higher than another state in the same layer.
    It never changes the optimum, only (possibly) which optimal schedule
    is returned.  ``state_budget`` caps total states across layers.
    """
    order = _deadline_order(instance)
    greedy, gained, remaining = _split_zero_duration(instance, order)
    m = instance.machine_count
    future = _future_start_lists(instance, remaining)

    # The initial frontier is below every start, so every rank is 0.
    origin = (0,) * m
    # layer maps state -> (weight, parent state, decision); decision is
    # None for rejection or the machine index the job was assigned to.
    layer: dict[tuple[int, ...], tuple[int, tuple[int, ...], Optional[int]]] = {
        origin: (0, origin, None)
    }
    trace: list[dict] = []
    layer_counts: list[int] = []
    states_total = 1
    nodes = 0

    for t, k in enumerate(remaining):
        job = instance.jobs[k]
        d = job.deadline
        here, there = future[t], future[t + 1]
        # Rank r at this layer stands for any frontier f with exactly r
        # future starts below it; its representative is here[i][r] (one
        # past the last start for the top rank).  remap translates ranks
        # to the next layer, where this job's start may have dropped out.
        remap: list[Optional[list[int]]] = []
        for i in range(m):
            if here[i] == there[i]:
                remap.append(None)  # identity
            else:
                reps = here[i] + [here[i][-1] + 1 if here[i] else 0]
                remap.append([bisect_left(there[i], rep) for rep in reps])
        moves = []
        for i, p in enumerate(instance.table.rows[k]):
            if p is None:
                continue
            # The move is allowed from states whose rank on machine i is
            # at most the rank of this job's start; afterwards the
            # frontier is d, ranked against the next layer's starts.
            moves.append((i, bisect_left(here[i], d - p), bisect_left(there[i], d)))

        nxt: dict[tuple[int, ...], tuple[int, tuple[int, ...], Optional[int]]] = {}
        for state, (weight, _, _) in layer.items():
            nodes += 1
            rejected = tuple(
                rank if remap[i] is None else remap[i][rank]
                for i, rank in enumerate(state)
            )
            prev = nxt.get(rejected)
            if prev is None or weight > prev[0]:
                nxt[rejected] = (weight, state, None)
            for i, start_rank, new_rank in moves:
                nodes += 1
                if state[i] > start_rank:
                    continue
                new_state = rejected[:i] + (new_rank,) + rejected[i + 1 :]
                cand = checked_add(weight, job.weight, "schedule weight")
                prev = nxt.get(new_state)
                if prev is None or cand > prev[0]:
                    nxt[new_state] = (cand, state, i)
        if prune_dominated:
            nxt = _prune_dominated(nxt)
        layer_counts.append(len(nxt))
        states_total += len(nxt)
        if state_budget is not None and states_total > state_budget:
            raise BudgetExceededError(
                f"frontier DP exceeded state budget {state_budget}",
                budget=state_budget,
                required=states_total,
            )
        trace.append(layer)
        layer = nxt

    best_state = None
    best_weight = -1
    for state, (weight, _, _) in layer.items():
        if weight > best_weight:
            best_weight = weight
            best_state = state

    assignment: dict[str, Optional[int]] = {job.id: REJECTED for job in instance.jobs}
    assignment.update(greedy)
    state = best_state
    for pos in range(len(remaining) - 1, -1, -1):
        weight, parent, decision = layer[state]
        if decision is not None:
            assignment[instance.jobs[remaining[pos]].id] = decision
        layer = trace[pos]
        state = parent

    optimum = checked_add(best_weight, gained, "schedule weight")
    return OptResult(
        optimum=optimum,
        schedule=Schedule(assignment),
        stats=SolveStats(
            states_explored=states_total,
            nodes_expanded=nodes,
            layer_states=tuple(layer_counts),
        ),
    )


def _prune_dominated(layer: dict) -> dict:
    """Drop states dominated by an earlier-or-better state.

    State T dominates S when T's frontier is componentwise <= S's and
    T's weight is >= S's.  Scanning in descending weight keeps the pass
    deterministic (stable sort preserves discovery order among equal
    weights).
    """
    items = sorted(
        layer.items(), key=lambda kv: kv[1][0], reverse=True
    )
    kept: list[tuple[tuple[int, ...], tuple]] = []
    for state, entry in items:
        dominated = False
        for kstate, _ in kept:
            if all(a <= b for a, b in zip(kstate, state)):
                dominated = True
                break
        if not dominated:
            kept.append((state, entry))
    kept_states = {state for state, _ in kept}
    return {state: entry for state, entry in layer.items() if state in kept_states}


def solve_brute_force(
    instance: Instance, *, budget: int = DEFAULT_ASSIGNMENT_BUDGET
) -> OptResult:
    """Reference optimum by exhaustive enumeration.

    Walks all (m+1)^n assignments in lexicographic order over the
    choices (REJECTED, machine 0, ..., machine m-1) per job in input
    order, keeping the first maximum-weight feasible assignment.
    Branches whose partial assignment is already infeasible are skipped;
    every completion of such a branch stays infeasible, so no feasible
    assignment is missed.  Refuses instances whose assignment count
    exceeds ``budget``.
    """
    n = instance.job_count
    m = instance.machine_count
    space = (m + 1) ** n
    if space > budget:
        raise BudgetExceededError(
            f"brute force needs {space} assignments, budget is {budget}",
            budget=budget,
            required=space,
        )

    jobs = instance.jobs
    rows = instance.table.rows
    per_machine: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    choice: list[Optional[int]] = [REJECTED] * n
    best: dict = {"weight": -1, "assignment": None}
    counters = {"nodes": 0, "leaves": 0}

    def descend(k: int, weight: int):
        counters["nodes"] += 1
        if k == n:
            counters["leaves"] += 1
            if weight > best["weight"]:
                best["weight"] = weight
                best["assignment"] = list(choice)
            return
        # REJECTED first keeps the enumeration lexicographic.
        choice[k] = REJECTED
        descend(k + 1, weight)
        d = jobs[k].deadline
        for i in range(m):
            p = rows[k][i]
            if p is None:
                continue
            start = d - p
            if start < d and any(
                max(start, s) < min(d, e) for s, e in per_machine[i]
            ):
                continue
            choice[k] = i
            per_machine[i].append((start, d))
            descend(k + 1, checked_add(weight, jobs[k].weight, "schedule weight"))
            per_machine[i].pop()
        choice[k] = REJECTED

    descend(0, 0)
    assignment = {
        jobs[k].id: best["assignment"][k] for k in range(n)
    }
    return OptResult(
        optimum=best["weight"] if n else 0,
        schedule=Schedule(assignment if n else {}),
        stats=SolveStats(
            states_explored=counters["leaves"], nodes_expanded=counters["nodes"]
        ),
    )


def solve_all_jobs_decision(
    instance: Instance, *, node_budget: int = DEFAULT_NODE_BUDGET
) -> DecisionResult:
    """Decide whether every job can be scheduled, and exhibit a schedule.

    Depth-first search over jobs in deadline order with no rejection
    branch: each job must be placed on an eligible machine whose
    frontier admits it.  Machines are tried in ascending index order, so
    the returned schedule is deterministic.  Frontier states that failed
    at a given depth are memoized and never re-explored.  Jobs with a
    zero-duration eligible machine are placed there up front.  A job
    with no eligible machine at all makes the instance immediately
    infeasible.

    Returns a DecisionResult whose schedule is None when no complete
    feasible schedule exists.  Exceeding ``node_budget`` raises
    BudgetExceededError instead (unknown, not infeasible).
    """
    order = _deadline_order(instance)
    greedy, _, remaining = _split_zero_duration(instance, order)

    for k in remaining:
        if not any(p is not None for p in instance.table.rows[k]):
            return DecisionResult(
                schedule=None, stats=SolveStats(states_explored=0, nodes_expanded=0)
            )

    jobs = instance.jobs
    moves_per_depth = []
    for k in remaining:
        d = jobs[k].deadline
        moves_per_depth.append(
            [
                (i, d - p, d)
                for i, p in enumerate(instance.table.rows[k])
                if p is not None
            ]
        )

    failed: list[set] = [set() for _ in range(len(remaining))]
    chosen: list[int] = [0] * len(remaining)
    counters = {"nodes": 0}

    def descend(depth: int, state: tuple[int, ...]) -> bool:
        if depth == len(remaining):
            return True
        if state in failed[depth]:
            return False
        counters["nodes"] += 1
        if counters["nodes"] > node_budget:
            raise BudgetExceededError(
                f"all-jobs search exceeded node budget {node_budget}",
                budget=node_budget,
                required=counters["nodes"],
            )
        for i, start, d in moves_per_depth[depth]:
            if start < state[i]:
                continue
            if descend(depth + 1, state[:i] + (d,) + state[i + 1 :]):
                chosen[depth] = i
                return True
        failed[depth].add(state)
        return False

    found = descend(0, (_frontier_floor(instance, remaining),) * instance.machine_count)
    stats = SolveStats(
        states_explored=sum(len(s) for s in failed),
        nodes_expanded=counters["nodes"],
    )
    if not found:
        return DecisionResult(schedule=None, stats=stats)

    assignment: dict[str, Optional[int]] = dict(greedy)
    for depth, k in enumerate(remaining):
        assignment[jobs[k].id] = chosen[depth]
    return DecisionResult(schedule=Schedule(assignment), stats=stats)


def solve_single_machine(instance: Instance) -> OptResult:
    """Classical weighted interval scheduling for the one-machine case.

    Requires machine_count == 1 (usage error otherwise).  Sorts eligible
    jobs by deadline and runs the textbook predecessor DP: keep the job
    and everything compatible before it, or skip it.  Skipping wins ties
    so the result matches the other solvers' rejection preference.
    Zero-duration jobs are free weight and are taken up front; the chain
    recurrence would otherwise treat them as blocking points.
    """
    if instance.machine_count != 1:
        raise UsageError(
            f"single-machine solver got {instance.machine_count} machines"
        )
    greedy, gained, order = _split_zero_duration(instance, _deadline_order(instance))
    items = []  # (deadline, start, weight, job index)
    for k in order:
        p = instance.table.rows[k][0]
        if p is None:
            continue
        d = instance.jobs[k].deadline
        items.append((d, d - p, instance.jobs[k].weight, k))

    deadlines = [it[0] for it in items]
    n = len(items)
    best = [0] * (n + 1)
    took = [False] * n
    for t in range(n):
        d, start, w, _ = items[t]
        pred = bisect_right(deadlines, start, 0, t)
        take = checked_add(w, best[pred], "schedule weight")
        if take > best[t]:
            best[t + 1] = take
            took[t] = True
        else:
            best[t + 1] = best[t]

    assignment: dict[str, Optional[int]] = {
        job.id: REJECTED for job in instance.jobs
    }
    assignment.update(greedy)
    t = n
    while t > 0:
        if took[t - 1]:
            d, start, w, k = items[t - 1]
            assignment[instance.jobs[k].id] = 0
            t = bisect_right(deadlines, start, 0, t - 1)
        else:
            t -= 1

    return OptResult(
        optimum=checked_add(best[n], gained, "schedule weight"),
        schedule=Schedule(assignment),
        stats=SolveStats(states_explored=n, nodes_expanded=n),
    )
