"""Empirical verification harnesses.

Each suite runs seeded trials against an independent oracle and returns
a SuiteReport; trial t derives its seed as base seed + t, so any trial
can be replayed alone.  Failing trials carry a bundle of named document
texts (source object, built instance, schedule, human-readable report)
that ``write_bundles`` lays out on disk for offline replay.

The clique-equivalence suite exists precisely to probe whether meeting
the weight target and containing a multicolored clique coincide; when
they do not, the disagreement is reported as a counterexample rather
than hidden.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Optional

from .core import Instance, Schedule, validate_schedule
from .generators import (
    gen_3cnf,
    gen_kpartite,
    gen_random_instance,
    gen_random_unrelated,
    planted_clique_of,
)
from .io import write_dimacs, write_graph, write_instance, write_schedule
from .reductions import (
    PATCHED,
    ExtractionFailure,
    KPartiteGraph,
    assignment_from_schedule,
    brute_force_clique,
    brute_force_sat,
    clique_from_schedule,
    mcc_to_isem,
    sat_to_uisum,
    schedule_from_assignment,
    schedule_from_clique,
)
from .solvers import (
    solve_all_jobs_decision,
    solve_brute_force,
    solve_frontier_dp,
    solve_single_machine,
)


@dataclass(frozen=True)
class TrialRecord:
    """One seeded trial: outcome, diagnostics, optional replay bundle."""

    index: int
    seed: int
    ok: bool
    detail: str
    elapsed: float
    bundle: Optional[Mapping[str, str]] = None


@dataclass(frozen=True)
class SuiteReport:
    name: str
    params: Mapping[str, object]
    records: tuple[TrialRecord, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    @property
    def failures(self) -> tuple[TrialRecord, ...]:
        return tuple(r for r in self.records if not r.ok)

    def summary(self) -> str:
        good = sum(1 for r in self.records if r.ok)
        lines = [f"{self.name}: {good}/{len(self.records)} trials ok"]
        for r in self.failures:
            lines.append(f"  trial {r.index} (seed {r.seed}): {r.detail}")
        return "\n".join(lines)


def write_bundles(report: SuiteReport, directory) -> list[Path]:
    """Write every failing trial's bundle under directory; return the dirs."""
    base = Path(directory)
    written = []
    for record in report.failures:
        if not record.bundle:
            continue
        trial_dir = base / f"{report.name}-trial{record.index:03d}"
        trial_dir.mkdir(parents=True, exist_ok=True)
        for name, text in record.bundle.items():
            (trial_dir / name).write_text(text)
        written.append(trial_dir)
    return written


# --- clique-side suites -----------------------------------------------------

def run_lemma1(
    *, k: int, per_color: int, trials: int, seed: int, edge_prob: float = 0.5
) -> SuiteReport:
    """Planted-clique witness check.

    Every trial plants a multicolored clique, converts it with
    schedule_from_clique, and requires the schedule to validate feasibly
    at exactly the instance target.
    """
    records = []
    sizes = (per_color,) * k
    for t in range(trials):
        trial_seed = seed + t
        begun = time.perf_counter()
        graph = gen_kpartite(k, sizes, edge_prob, plant_clique=True, seed=trial_seed)
        planted = planted_clique_of(k, sizes, seed=trial_seed)
        artifact = mcc_to_isem(graph)
        schedule = schedule_from_clique(artifact, planted)
        report = validate_schedule(artifact.instance, schedule)
        ok = report.feasible and report.total_weight == artifact.target
        detail = (
            f"witness weight {report.total_weight}, target {artifact.target},"
            f" feasible={report.feasible}"
        )
        bundle = None
        if not ok:
            bundle = {
                "graph.json": write_graph(graph),
                "instance.json": write_instance(artifact),
                "schedule.json": write_schedule(schedule),
                "report.txt": report.describe() + "\n" + detail + "\n",
            }
        records.append(
            TrialRecord(t, trial_seed, ok, detail, time.perf_counter() - begun, bundle)
        )
    return SuiteReport(
        name="lemma1",
        params={"k": k, "per_color": per_color, "trials": trials, "seed": seed,
                "edge_prob": edge_prob},
        records=tuple(records),
    )


def _clique_is_valid(graph: KPartiteGraph, vertices: tuple[str, ...]) -> bool:
    if len(vertices) != graph.k:
        return False
    colors = sorted(graph.color_of[v] for v in vertices if v in graph.color_of)
    if colors != list(range(1, graph.k + 1)):
        return False
    return all(
        graph.has_edge(u, w)
        for x, u in enumerate(vertices)
        for w in vertices[x + 1 :]
    )


def run_equiv_mcc(
    *,
    k: int,
    per_color: int,
    trials: int,
    seed: int,
    probs: tuple[float, ...] = (0.3, 0.6, 1.0),
    mode: str = PATCHED,
    prune: bool = False,
) -> SuiteReport:
    """Threshold-vs-clique equivalence probe.

    Per trial: build the gadget instance from a random graph (edge
    probability cycling through ``probs``), solve it exactly, and check
    that optimum >= target exactly when a brute-force multicolored
    clique exists.  On threshold-meeting schedules, additionally check
    the edge-job census (one edge job per edge-selection machine, k
    choose 2 in total), that clique extraction succeeds, and that the
    per-layer state count respects the (n+1)^m bound.
    """
    records = []
    sizes = (per_color,) * k
    pairs = k * (k - 1) // 2
    for t in range(trials):
        trial_seed = seed + t
        begun = time.perf_counter()
        graph = gen_kpartite(
            k, sizes, probs[t % len(probs)], plant_clique=False, seed=trial_seed
        )
        artifact = mcc_to_isem(graph, mode=mode)
        instance = artifact.instance
        result = solve_frontier_dp(instance, prune_dominated=prune)
        reaches = result.optimum >= artifact.target
        witness = brute_force_clique(graph)

        problems = []
        if reaches and witness is None:
            problems.append(
                f"optimum {result.optimum} meets target {artifact.target}"
                f" but the graph has no multicolored clique"
            )
        if not reaches and witness is not None:
            problems.append(
                f"graph has clique {witness.vertices} but optimum"
                f" {result.optimum} misses target {artifact.target}"
            )
        bound = (instance.job_count + 1) ** instance.machine_count
        peak = max(result.stats.layer_states, default=0)
        if peak > bound:
            problems.append(f"layer states {peak} exceed ({instance.job_count}+1)^{instance.machine_count}")

        if reaches:
            edge_machines = artifact.machines_with_role("edge-selection")
            per_machine = {i: 0 for i in edge_machines}
            total_edges = 0
            for job_id in result.schedule.scheduled_ids():
                if artifact.job_roles[job_id].kind == "edge":
                    total_edges += 1
                    machine = result.schedule.assignment[job_id]
                    if machine in per_machine:
                        per_machine[machine] += 1
            if total_edges != pairs or any(c != 1 for c in per_machine.values()):
                problems.append(
                    f"edge-job census {sorted(per_machine.items())}"
                    f" (total {total_edges}, expected one per machine, {pairs} total)"
                )
            extracted = clique_from_schedule(artifact, result.schedule)
            if isinstance(extracted, ExtractionFailure):
                problems.append("extraction failed: " + extracted.describe())
            elif not _clique_is_valid(graph, extracted.vertices):
                problems.append(
                    f"extracted vertices {extracted.vertices} are not a"
                    f" multicolored clique"
                )

        ok = not problems
        detail = (
            "; ".join(problems)
            if problems
            else f"optimum {result.optimum}, target {artifact.target},"
                 f" clique={'yes' if witness else 'no'}"
        )
        bundle = None
        if not ok:
            report_text = "\n".join(
                [
                    f"suite equiv-mcc trial {t} seed {trial_seed}",
                    f"edge probability {probs[t % len(probs)]}, mode {mode}",
                    f"optimum {result.optimum}, target {artifact.target}",
                    f"brute-force clique: {witness.vertices if witness else None}",
                    *problems,
                ]
            )
            bundle = {
                "graph.json": write_graph(graph),
                "instance.json": write_instance(artifact),
                "schedule.json": write_schedule(result.schedule),
                "report.txt": report_text + "\n",
            }
        records.append(
            TrialRecord(t, trial_seed, ok, detail, time.perf_counter() - begun, bundle)
        )
    return SuiteReport(
        name="equiv-mcc",
        params={"k": k, "per_color": per_color, "trials": trials, "seed": seed,
                "probs": probs, "mode": mode, "prune": prune},
        records=tuple(records),
    )


# --- SAT-side suites ---------------------------------------------------------

def run_lemma3(*, alpha: int, beta: int, trials: int, seed: int) -> SuiteReport:
    """Satisfying-assignment witness check.

    Trials whose formula is unsatisfiable are vacuously ok; otherwise
    the witness schedule must place all 4*alpha + 5*beta jobs feasibly.
    """
    records = []
    for t in range(trials):
        trial_seed = seed + t
        begun = time.perf_counter()
        formula = gen_3cnf(alpha, beta, seed=trial_seed)
        assignment = brute_force_sat(formula)
        if assignment is None:
            records.append(
                TrialRecord(
                    t, trial_seed, True, "unsatisfiable; witness check vacuous",
                    time.perf_counter() - begun,
                )
            )
            continue
        artifact = sat_to_uisum(formula)
        schedule = schedule_from_assignment(artifact, assignment)
        report = validate_schedule(artifact.instance, schedule)
        placed = len(schedule.scheduled_ids())
        ok = report.feasible and placed == artifact.instance.job_count
        detail = (
            f"{placed}/{artifact.instance.job_count} jobs placed,"
            f" feasible={report.feasible}"
        )
        bundle = None
        if not ok:
            bundle = {
                "formula.cnf": write_dimacs(formula),
                "instance.json": write_instance(artifact),
                "schedule.json": write_schedule(schedule),
                "report.txt": report.describe() + "\n" + detail + "\n",
            }
        records.append(
            TrialRecord(t, trial_seed, ok, detail, time.perf_counter() - begun, bundle)
        )
    return SuiteReport(
        name="lemma3",
        params={"alpha": alpha, "beta": beta, "trials": trials, "seed": seed},
        records=tuple(records),
    )


def run_equiv_sat(*, alpha: int, beta: int, trials: int, seed: int) -> SuiteReport:
    """All-jobs feasibility vs satisfiability equivalence probe."""
    records = []
    for t in range(trials):
        trial_seed = seed + t
        begun = time.perf_counter()
        formula = gen_3cnf(alpha, beta, seed=trial_seed)
        artifact = sat_to_uisum(formula)
        decision = solve_all_jobs_decision(artifact.instance)
        assignment = brute_force_sat(formula)

        problems = []
        if decision.feasible and assignment is None:
            problems.append("all jobs schedulable but formula unsatisfiable")
        if not decision.feasible and assignment is not None:
            problems.append(
                f"formula satisfiable by {assignment} but not all jobs schedulable"
            )
        if decision.feasible:
            report = validate_schedule(artifact.instance, decision.schedule)
            placed = len(decision.schedule.scheduled_ids())
            if not report.feasible or placed != artifact.instance.job_count:
                problems.append(
                    f"decision schedule places {placed}/{artifact.instance.job_count}"
                    f" jobs, feasible={report.feasible}"
                )
            extracted = assignment_from_schedule(artifact, decision.schedule)
            if not formula.satisfied_by(extracted):
                problems.append(f"extracted assignment {extracted} does not satisfy")

        ok = not problems
        detail = (
            "; ".join(problems)
            if problems
            else f"schedulable={decision.feasible},"
                 f" satisfiable={assignment is not None}"
        )
        bundle = None
        if not ok:
            bundle = {
                "formula.cnf": write_dimacs(formula),
                "instance.json": write_instance(artifact),
                "report.txt": detail + "\n",
            }
            if decision.feasible:
                bundle["schedule.json"] = write_schedule(decision.schedule)
        records.append(
            TrialRecord(t, trial_seed, ok, detail, time.perf_counter() - begun, bundle)
        )
    return SuiteReport(
        name="equiv-sat",
        params={"alpha": alpha, "beta": beta, "trials": trials, "seed": seed},
        records=tuple(records),
    )


# --- solver cross-validation --------------------------------------------------

def run_solvers(*, trials: int, seed: int) -> SuiteReport:
    """Random-instance agreement between every exact solver.

    Even trials draw uniform-duration instances with eligibility holes,
    odd trials fully-eligible unrelated ones; sizes stay small enough
    for the brute-force oracle.  Checks frontier DP (pruned and not)
    against brute force, the single-machine solver on m=1, and that the
    DP's schedule validates at its claimed optimum.
    """
    records = []
    for t in range(trials):
        trial_seed = seed + t
        begun = time.perf_counter()
        rng = random.Random(trial_seed)
        n, m = rng.randint(1, 8), rng.randint(1, 3)
        if t % 2 == 0:
            instance = gen_random_instance(
                n, m, 12, 12, 100, rng.choice((0.3, 0.7, 1.0)),
                seed=rng.randrange(2**32),
            )
        else:
            instance = gen_random_unrelated(
                n, m, 12, 12, 100, seed=rng.randrange(2**32)
            )
        dp = solve_frontier_dp(instance)
        pruned = solve_frontier_dp(instance, prune_dominated=True)
        brute = solve_brute_force(instance)
        report = validate_schedule(instance, dp.schedule)

        problems = []
        if dp.optimum != brute.optimum:
            problems.append(f"frontier {dp.optimum} != brute force {brute.optimum}")
        if pruned.optimum != dp.optimum:
            problems.append(f"pruned {pruned.optimum} != unpruned {dp.optimum}")
        if not report.feasible or report.total_weight != dp.optimum:
            problems.append(
                f"DP schedule validates to {report.total_weight},"
                f" feasible={report.feasible}"
            )
        if m == 1:
            single = solve_single_machine(instance)
            if single.optimum != brute.optimum:
                problems.append(
                    f"single-machine {single.optimum} != brute force {brute.optimum}"
                )

        ok = not problems
        detail = "; ".join(problems) if problems else f"n={n} m={m} optimum={dp.optimum}"
        bundle = None
        if not ok:
            bundle = {
                "instance.json": write_instance(instance),
                "schedule.json": write_schedule(dp.schedule),
                "report.txt": detail + "\n",
            }
        records.append(
            TrialRecord(t, trial_seed, ok, detail, time.perf_counter() - begun, bundle)
        )
    return SuiteReport(
        name="solvers",
        params={"trials": trials, "seed": seed},
        records=tuple(records),
    )
