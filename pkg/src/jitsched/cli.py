"""Command-line interface.

Exit codes are a contract shared by every subcommand:

  0  YES: feasible / target met / all trials consistent
  1  NO: infeasible / below target / counterexample found (and written)
  2  usage, parse, or validation error
  3  an explicit work budget was exceeded

Every command is deterministic given its flags and seeds.  The optional
environment variable JITSCHED_BUDGET overrides the default solver work
budgets when --budget is not given.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import Instance, validate_schedule
from .errors import (
    BudgetExceededError,
    ParseError,
    UsageError,
    ValidationError,
    WitnessError,
)
from .generators import gen_3cnf, gen_kpartite, gen_random_instance, gen_random_unrelated, planted_clique_of
from .io import (
    parse_dimacs,
    parse_graph,
    parse_instance,
    parse_schedule,
    write_dimacs,
    write_graph,
    write_instance,
    write_schedule,
)
from .reductions import PATCHED, VERBATIM, ReductionArtifact, mcc_to_isem, sat_to_uisum
from .render import render_svg
from .solvers import (
    DEFAULT_ASSIGNMENT_BUDGET,
    DEFAULT_NODE_BUDGET,
    solve_all_jobs_decision,
    solve_brute_force,
    solve_frontier_dp,
    solve_single_machine,
)
from .verify import run_equiv_mcc, run_equiv_sat, run_lemma1, run_lemma3, run_solvers, write_bundles


def _env_budget() -> Optional[int]:
    env = os.environ.get("JITSCHED_BUDGET")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"JITSCHED_BUDGET={env!r} is not an integer") from None


def _budget(args, fallback: int) -> int:
    if args.budget is not None:
        return args.budget
    env = _env_budget()
    return env if env is not None else fallback


def _instance_of(obj) -> Instance:
    return obj.instance if isinstance(obj, ReductionArtifact) else obj


def _write_out(path: Optional[str], text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --- gen ---------------------------------------------------------------------

def _cmd_gen_mcc(args) -> int:
    graph = gen_kpartite(
        args.k, args.per_color, args.edge_prob, plant_clique=args.plant, seed=args.seed
    )
    _write_out(args.out, write_graph(graph))
    note = ""
    if args.plant:
        planted = planted_clique_of(args.k, args.per_color, seed=args.seed)
        note = f" planted={','.join(planted.vertices)}"
    print(
        f"k={graph.k} vertices={graph.vertex_count} edges={len(graph.edges)}{note}"
    )
    return 0


def _cmd_gen_cnf(args) -> int:
    formula = gen_3cnf(args.vars, args.clauses, seed=args.seed, strict34=args.strict34)
    _write_out(args.out, write_dimacs(formula))
    print(
        f"vars={formula.variable_count} clauses={len(formula.clauses)}"
        f" strict34={'yes' if args.strict34 else 'no'}"
    )
    return 0


def _cmd_gen_rand(args) -> int:
    if args.unit_weights and not args.unrelated:
        raise UsageError("--unit-weights requires --unrelated")
    if args.unrelated:
        instance = gen_random_unrelated(
            args.n, args.m, args.max_deadline, args.max_duration, args.max_weight,
            seed=args.seed, unit_weights=args.unit_weights,
        )
    else:
        instance = gen_random_instance(
            args.n, args.m, args.max_deadline, args.max_duration, args.max_weight,
            args.elig_prob, seed=args.seed,
        )
    _write_out(args.out, write_instance(instance))
    print(f"n={instance.job_count} m={instance.machine_count} variant={instance.variant.value}")
    return 0


# --- reduce ------------------------------------------------------------------

def _cmd_reduce_mcc(args) -> int:
    graph = parse_graph(Path(args.input).read_text())
    artifact = mcc_to_isem(graph, mode=args.mode)
    _write_out(args.out, write_instance(artifact))
    print(
        f"n={artifact.instance.job_count} m={artifact.instance.machine_count}"
        f" target={artifact.target}"
    )
    return 0


def _cmd_reduce_sat(args) -> int:
    formula = parse_dimacs(Path(args.input).read_text())
    artifact = sat_to_uisum(formula, strict34=args.strict34)
    _write_out(args.out, write_instance(artifact))
    print(
        f"n={artifact.instance.job_count} m={artifact.instance.machine_count}"
        f" target={artifact.target}"
    )
    return 0


# --- solve / check -------------------------------------------------------------

def _cmd_solve(args) -> int:
    instance = _instance_of(parse_instance(Path(args.input).read_text()))

    if args.algo == "alljobs":
        if args.target is not None:
            raise UsageError("--target does not apply to --algo alljobs")
        decision = solve_all_jobs_decision(
            instance, node_budget=_budget(args, DEFAULT_NODE_BUDGET)
        )
        stats = decision.stats
        verdict = "ALLJOBS" if decision.feasible else "INFEASIBLE"
        print(
            f"{verdict} states={stats.states_explored} nodes={stats.nodes_expanded}"
        )
        if decision.feasible and args.out is not None:
            _write_out(args.out, write_schedule(decision.schedule))
        return 0 if decision.feasible else 1

    if args.algo == "frontier":
        state_budget = args.budget if args.budget is not None else _env_budget()
        result = solve_frontier_dp(
            instance, prune_dominated=args.prune, state_budget=state_budget
        )
    elif args.algo == "brute":
        result = solve_brute_force(
            instance, budget=_budget(args, DEFAULT_ASSIGNMENT_BUDGET)
        )
    else:
        if args.budget is not None:
            raise UsageError("--budget does not apply to --algo single")
        result = solve_single_machine(instance)

    stats = result.stats
    extra = ""
    if stats.layer_states:
        extra = f" max-layer={max(stats.layer_states)}"
    print(
        f"optimum={result.optimum} states={stats.states_explored}"
        f" nodes={stats.nodes_expanded}{extra}"
    )
    if args.out is not None:
        _write_out(args.out, write_schedule(result.schedule))
    if args.target is not None:
        met = result.optimum >= args.target
        print(f"target={args.target} met={'yes' if met else 'no'}")
        return 0 if met else 1
    return 0


def _cmd_check(args) -> int:
    instance = _instance_of(parse_instance(Path(args.instance).read_text()))
    schedule = parse_schedule(Path(args.schedule).read_text())
    report = validate_schedule(instance, schedule)
    print(report.describe())
    return 0 if report.feasible else 1


# --- verify ---------------------------------------------------------------------

def _cmd_verify(args) -> int:
    if args.suite == "lemma1":
        report = run_lemma1(
            k=args.k, per_color=args.per_color, trials=args.trials, seed=args.seed,
            edge_prob=args.edge_prob,
        )
    elif args.suite == "equiv-mcc":
        report = run_equiv_mcc(
            k=args.k, per_color=args.per_color, trials=args.trials, seed=args.seed,
            mode=args.mode, prune=args.prune,
        )
    elif args.suite == "lemma3":
        report = run_lemma3(
            alpha=args.vars, beta=args.clauses, trials=args.trials, seed=args.seed
        )
    elif args.suite == "equiv-sat":
        report = run_equiv_sat(
            alpha=args.vars, beta=args.clauses, trials=args.trials, seed=args.seed
        )
    else:
        report = run_solvers(trials=args.trials, seed=args.seed)

    for record in report.records:
        mark = "ok  " if record.ok else "FAIL"
        print(f"trial {record.index:3d} seed {record.seed}: {mark} {record.detail}")
    print(report.summary())
    if report.ok:
        return 0
    written = write_bundles(report, args.bundle_dir)
    print(f"wrote {len(written)} counterexample bundle(s) under {args.bundle_dir}")
    return 1


# --- render ----------------------------------------------------------------------

def _cmd_render(args) -> int:
    instance = _instance_of(parse_instance(Path(args.instance).read_text()))
    schedule = None
    if args.schedule is not None:
        schedule = parse_schedule(Path(args.schedule).read_text())
    svg = render_svg(instance, schedule, machine_filter=args.machine)
    _write_out(args.out, svg)
    print(f"rendered {instance.machine_count if args.machine is None else 1} band(s)")
    return 0


# --- parser ------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jitsched",
        description="Just-in-time interval scheduling laboratory: generators,"
        " hardness gadgets, exact solvers, verification harnesses.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate graphs, formulas, or instances")
    gen_sub = gen.add_subparsers(dest="family", required=True)

    g_mcc = gen_sub.add_parser("mcc", help="random k-partite graph")
    g_mcc.add_argument("--k", type=int, required=True, help="number of colors")
    g_mcc.add_argument("--per-color", type=int, required=True, help="vertices per color")
    g_mcc.add_argument("--edge-prob", type=float, default=0.5)
    g_mcc.add_argument("--plant", action="store_true", help="plant a multicolored clique")
    g_mcc.add_argument("--seed", type=int, default=0)
    g_mcc.add_argument("--out", help="output path (default stdout)")
    g_mcc.set_defaults(func=_cmd_gen_mcc)

    g_cnf = gen_sub.add_parser("cnf", help="random 3-CNF formula (DIMACS)")
    g_cnf.add_argument("--vars", type=int, required=True)
    g_cnf.add_argument("--clauses", type=int, required=True)
    g_cnf.add_argument("--strict34", action="store_true",
                       help="exactly 4 occurrences per variable (needs 3*clauses == 4*vars)")
    g_cnf.add_argument("--seed", type=int, default=0)
    g_cnf.add_argument("--out", help="output path (default stdout)")
    g_cnf.set_defaults(func=_cmd_gen_cnf)

    g_rand = gen_sub.add_parser("rand", help="random scheduling instance")
    g_rand.add_argument("--n", type=int, required=True, help="job count")
    g_rand.add_argument("--m", type=int, required=True, help="machine count")
    g_rand.add_argument("--max-deadline", type=int, default=12)
    g_rand.add_argument("--max-duration", type=int, default=12)
    g_rand.add_argument("--max-weight", type=int, default=100)
    g_rand.add_argument("--elig-prob", type=float, default=1.0,
                        help="per-machine eligibility probability (uniform-duration family)")
    g_rand.add_argument("--unrelated", action="store_true",
                        help="fully eligible per-machine durations instead")
    g_rand.add_argument("--unit-weights", action="store_true",
                        help="weight 1 everywhere (with --unrelated)")
    g_rand.add_argument("--seed", type=int, default=0)
    g_rand.add_argument("--out", help="output path (default stdout)")
    g_rand.set_defaults(func=_cmd_gen_rand)

    reduce_ = sub.add_parser("reduce", help="build gadget instances")
    red_sub = reduce_.add_subparsers(dest="gadget", required=True)

    r_mcc = red_sub.add_parser("mcc", help="k-partite graph to weighted eligible-machines instance")
    r_mcc.add_argument("input", help="graph document path")
    r_mcc.add_argument("--mode", choices=(PATCHED, VERBATIM), default=PATCHED)
    r_mcc.add_argument("--out", help="output path (default stdout)")
    r_mcc.set_defaults(func=_cmd_reduce_mcc)

    r_sat = red_sub.add_parser("sat", help="3-CNF to unit-weight unrelated-machines instance")
    r_sat.add_argument("input", help="DIMACS CNF path")
    r_sat.add_argument("--strict34", action="store_true",
                       help="require exactly 3 literals per clause and 4 occurrences per variable")
    r_sat.add_argument("--out", help="output path (default stdout)")
    r_sat.set_defaults(func=_cmd_reduce_sat)

    solve = sub.add_parser("solve", help="run an exact solver")
    solve.add_argument("input", help="instance document path")
    solve.add_argument("--algo", choices=("frontier", "brute", "alljobs", "single"),
                       default="frontier")
    solve.add_argument("--target", type=int, help="exit 0 iff optimum >= target")
    solve.add_argument("--budget", type=int,
                       help="work budget (default per algorithm; JITSCHED_BUDGET overrides)")
    solve.add_argument("--prune", action="store_true",
                       help="frontier DP dominance pruning (never changes the optimum)")
    solve.add_argument("--out", help="schedule output path")
    solve.set_defaults(func=_cmd_solve)

    check = sub.add_parser("check", help="validate a schedule against an instance")
    check.add_argument("instance")
    check.add_argument("schedule")
    check.set_defaults(func=_cmd_check)

    verify = sub.add_parser("verify", help="run a seeded verification suite")
    verify.add_argument("suite", choices=("lemma1", "equiv-mcc", "lemma3", "equiv-sat", "solvers"))
    verify.add_argument("--k", type=int, default=3)
    verify.add_argument("--per-color", type=int, default=2)
    verify.add_argument("--vars", type=int, default=2, help="variable count (SAT suites)")
    verify.add_argument("--clauses", type=int, default=2, help="clause count (SAT suites)")
    verify.add_argument("--trials", type=int, default=30)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--edge-prob", type=float, default=0.5, help="lemma1 edge probability")
    verify.add_argument("--mode", choices=(PATCHED, VERBATIM), default=PATCHED,
                        help="equiv-mcc gadget mode")
    verify.add_argument("--prune", action="store_true", help="equiv-mcc frontier DP pruning")
    verify.add_argument("--bundle-dir", default="counterexamples",
                        help="where failing trials write their replay bundles")
    verify.set_defaults(func=_cmd_verify)

    render = sub.add_parser("render", help="render an SVG timeline")
    render.add_argument("instance")
    render.add_argument("schedule", nargs="?", help="optional schedule document")
    render.add_argument("--machine", type=int, help="render a single machine band")
    render.add_argument("--out", help="output path (default stdout)")
    render.set_defaults(func=_cmd_render)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ParseError, ValidationError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    raise SystemExit(main())
