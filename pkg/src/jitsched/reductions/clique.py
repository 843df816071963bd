"""Multicolored-clique gadget: graphs in, scheduling instances out.

``mcc_to_isem`` turns a k-partite graph into an eligible-machines
scheduling instance with one edge-selection machine per color pair plus
a validation machine, such that (by design) a schedule of weight at
least ``mcc_target(graph)`` exists exactly when the graph has a clique
with one vertex per color.  Witness converters translate cliques to
schedules and back; ``brute_force_clique`` is the independent oracle.

Two gadget modes exist.  VERBATIM uses the printed edge-job duration
formula, under which the intended witness schedule overlaps by one time
unit on every edge-selection machine.  PATCHED (the default) shortens
every edge job by one unit, restoring the adjacent chain the gadget
narrative describes.  Both modes are kept so the verification harness
can probe either.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Mapping, Optional, Union

from ..core import Instance, Job, ProcessingTable, Schedule, Variant, validate_schedule
from ..errors import (
    BudgetExceededError,
    UsageError,
    WitnessError,
    checked_add,
    checked_mul,
)
from .artifacts import (
    PATCHED,
    VERBATIM,
    CliqueValidationMachine,
    ComboJobRole,
    EdgeJobRole,
    EdgeSelectionMachine,
    JobRole,
    ReductionArtifact,
    VertexJobRole,
)

DEFAULT_CLIQUE_BUDGET = 10_000_000


@dataclass(frozen=True)
class KPartiteGraph:
    """Vertex-colored graph whose edges never join same-colored vertices.

    ``parts[c]`` lists the vertices of color c+1 (colors are 1-based in
    every formula and role).  Edges are normalized on construction: each
    pair is ordered by vertex position and the edge list is sorted, so
    two graphs with the same content compare equal.
    """

    parts: tuple[tuple[str, ...], ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(tuple(p) for p in self.parts))
        if len(self.parts) < 2:
            raise UsageError("a k-partite graph needs k >= 2 color classes")
        position: dict[str, int] = {}
        color: dict[str, int] = {}
        for c, part in enumerate(self.parts, start=1):
            for v in part:
                if not isinstance(v, str) or not v:
                    raise UsageError("vertex ids must be non-empty strings")
                if v in position:
                    raise UsageError(f"duplicate vertex id {v!r}")
                position[v] = len(position) + 1
                color[v] = c
        seen = set()
        normalized = []
        for edge in self.edges:
            if len(edge) != 2:
                raise UsageError(f"edge {edge!r} must have two endpoints")
            u, w = edge
            for x in (u, w):
                if x not in position:
                    raise UsageError(f"edge endpoint {x!r} is not a vertex")
            if color[u] == color[w]:
                raise UsageError(f"edge {edge!r} joins two color-{color[u]} vertices")
            if position[u] > position[w]:
                u, w = w, u
            if (u, w) in seen:
                raise UsageError(f"duplicate edge {(u, w)!r}")
            seen.add((u, w))
            normalized.append((u, w))
        normalized.sort(key=lambda e: (position[e[0]], position[e[1]]))
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def vertex_count(self) -> int:
        return sum(len(p) for p in self.parts)

    @cached_property
    def color_of(self) -> Mapping[str, int]:
        return {v: c for c, part in enumerate(self.parts, start=1) for v in part}

    @cached_property
    def edge_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)

    def has_edge(self, u: str, w: str) -> bool:
        return frozenset((u, w)) in self.edge_set


@dataclass(frozen=True)
class VertexOrdering:
    """Color-monotone bijection vertices -> 1..n (concatenated parts)."""

    order: tuple[str, ...]
    position: Mapping[str, int]


@dataclass(frozen=True)
class WeightConstants:
    """The three-rung weight ladder of the clique gadget.

    ``filler_weight``  weight of each non-selection vertex job; exceeds
                       the count of selection jobs.
    ``combo_scale``    per-position scale of color-combination jobs;
                       exceeds the total weight of all vertex jobs.
    ``edge_anchor``    edge-job base weight; exceeds the total weight of
                       everything that is not an edge job.
    Each rung beats the previous tier by exactly one.
    """

    filler_weight: int
    combo_scale: int
    edge_anchor: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.filler_weight, self.combo_scale, self.edge_anchor)


@dataclass(frozen=True)
class CliqueWitness:
    """One vertex per color, pairwise adjacent; ordered by color."""

    vertices: tuple[str, ...]


@dataclass(frozen=True)
class ExtractionFailure:
    """Why a threshold-weight schedule did not decode to a clique."""

    message: str
    selected: tuple[str, ...] = field(default=())
    missing_colors: tuple[int, ...] = field(default=())
    non_adjacent: tuple[tuple[str, str], ...] = field(default=())

    def describe(self) -> str:
        parts = [self.message]
        if self.selected:
            parts.append(f"selected: {', '.join(self.selected)}")
        if self.missing_colors:
            parts.append(f"colors without a selection: {list(self.missing_colors)}")
        if self.non_adjacent:
            pairs = ", ".join(f"{a}-{b}" for a, b in self.non_adjacent)
            parts.append(f"non-adjacent pairs: {pairs}")
        return "; ".join(parts)


def vertex_ordering(graph: KPartiteGraph) -> VertexOrdering:
    """Positions 1..n, ascending within each color, colors in order."""
    order = tuple(v for part in graph.parts for v in part)
    return VertexOrdering(
        order=order, position={v: i for i, v in enumerate(order, start=1)}
    )


def weight_constants(k: int, vertex_count: int) -> WeightConstants:
    """Compute the weight ladder for k colors and n vertices (checked)."""
    if k < 2:
        raise UsageError("weight constants need k >= 2")
    if vertex_count < 0:
        raise UsageError("vertex count must be >= 0")
    n = vertex_count
    filler = checked_add(n, 1, "filler weight")
    combo = checked_add(
        checked_mul(checked_mul(k - 1, n, "combo scale"), filler, "combo scale"),
        n + 1,
        "combo scale",
    )
    anchor = checked_add(
        checked_mul(
            checked_mul(checked_add(checked_mul(k, n, "edge anchor"),
                                    checked_mul(k * k, n, "edge anchor"),
                                    "edge anchor"),
                        n, "edge anchor"),
            combo,
            "edge anchor",
        ),
        1,
        "edge anchor",
    )
    return WeightConstants(filler, combo, anchor)


def color_pairs(k: int) -> list[tuple[int, int]]:
    """All color pairs (low, high), lexicographic; one machine each."""
    return [(lo, hi) for lo in range(1, k + 1) for hi in range(lo + 1, k + 1)]


def mcc_target(graph: KPartiteGraph) -> int:
    """Weight threshold certifying a multicolored clique (checked)."""
    k = graph.k
    n = graph.vertex_count
    consts = weight_constants(k, n)
    pairs = k * (k - 1) // 2
    total = checked_mul(pairs, consts.edge_anchor, "target")
    total = checked_add(
        total,
        checked_mul(pairs, checked_mul(n, consts.combo_scale, "target"), "target"),
        "target",
    )
    total = checked_add(
        total,
        checked_mul(k - 1, checked_mul(n, consts.filler_weight, "target"), "target"),
        "target",
    )
    return checked_add(total, k, "target")


def mcc_to_isem(graph: KPartiteGraph, mode: str = PATCHED) -> ReductionArtifact:
    """Build the eligible-machines instance for a k-partite graph.

    Machines: one edge-selection machine per color pair in lexicographic
    order, then one validation machine.  Jobs, in document order:

    * per vertex v (position order), k vertex jobs, color superscripts
      1..k.  The selection job (superscript = own color) runs only on
      the validation machine; each other job is a unit job eligible on
      the validation machine and on its color pair's machine.
    * one job per edge, eligible only on that pair's machine.
    * per color pair, one combination job per vertex of either color,
      eligible only on that pair's machine.

    In PATCHED mode edge jobs are one unit shorter than in VERBATIM
    mode; see the module docstring.
    """
    if mode not in (PATCHED, VERBATIM):
        raise UsageError(f"unknown mode {mode!r}")
    k = graph.k
    n = graph.vertex_count
    ordering = vertex_ordering(graph)
    pos = ordering.position
    consts = weight_constants(k, n)
    span = k + 2  # width of one vertex's window on the time axis

    pairs = color_pairs(k)
    pair_machine = {pair: i for i, pair in enumerate(pairs)}
    validation = len(pairs)
    machine_count = len(pairs) + 1

    jobs: list[Job] = []
    rows: list[tuple[Optional[int], ...]] = []
    roles: dict[str, JobRole] = {}

    def add(job_id, deadline, weight, duration, machines, role):
        jobs.append(Job(job_id, deadline, weight))
        row = [None] * machine_count
        for i in machines:
            row[i] = duration
        rows.append(tuple(row))
        roles[job_id] = role

    for v in ordering.order:
        own = graph.color_of[v]
        for c in range(1, k + 1):
            job_id = f"vertex:{v}:{c}"
            role = VertexJobRole(vertex=v, vertex_color=own, color=c, position=pos[v])
            if c == own:
                add(job_id, span * pos[v] + 1, 1, span, (validation,), role)
            else:
                pair = (min(own, c), max(own, c))
                add(
                    job_id,
                    span * pos[v] - c,
                    consts.filler_weight,
                    1,
                    (pair_machine[pair], validation),
                    role,
                )

    for u, w in graph.edges:
        lo, hi = graph.color_of[u], graph.color_of[w]
        # normalization guarantees pos[u] < pos[w], hence lo < hi
        duration = span * (pos[w] - pos[u]) - lo + hi
        if mode == PATCHED:
            duration -= 1
        add(
            f"edge:{u}:{w}",
            span * pos[w] - lo - 1,
            checked_add(
                checked_mul(consts.combo_scale, pos[w] - pos[u], "edge weight"),
                consts.edge_anchor,
                "edge weight",
            ),
            duration,
            (pair_machine[(lo, hi)],),
            EdgeJobRole(endpoints=(u, w), colors=(lo, hi)),
        )

    for lo, hi in pairs:
        machine = (pair_machine[(lo, hi)],)
        for v in graph.parts[lo - 1]:
            add(
                f"combo:{v}:{lo}.{hi}",
                span * pos[v] - hi - 1,
                checked_mul(consts.combo_scale, pos[v], "combo weight"),
                span * pos[v] - hi - 2,
                machine,
                ComboJobRole(vertex=v, vertex_color=lo, pair=(lo, hi), position=pos[v]),
            )
        for w in graph.parts[hi - 1]:
            add(
                f"combo:{w}:{lo}.{hi}",
                span * n + 2,
                checked_mul(consts.combo_scale, n - pos[w], "combo weight"),
                span * (n - pos[w]) + lo + 2,
                machine,
                ComboJobRole(vertex=w, vertex_color=hi, pair=(lo, hi), position=pos[w]),
            )

    instance = Instance(
        jobs=tuple(jobs),
        table=ProcessingTable(machine_count=machine_count, rows=tuple(rows)),
        variant=Variant.ELIGIBLE,
    )
    machine_roles = tuple(EdgeSelectionMachine(pair=p) for p in pairs) + (
        CliqueValidationMachine(),
    )
    return ReductionArtifact(
        instance=instance,
        job_roles=roles,
        machine_roles=machine_roles,
        target=mcc_target(graph),
        mode=mode,
    )


def _clique_structure(artifact: ReductionArtifact):
    """Recover graph structure and machine indices from artifact roles."""
    pair_machine: dict[tuple[int, int], int] = {}
    validation = None
    for i, role in enumerate(artifact.machine_roles):
        if isinstance(role, EdgeSelectionMachine):
            pair_machine[role.pair] = i
        elif isinstance(role, CliqueValidationMachine):
            validation = i
    if validation is None or not pair_machine:
        raise UsageError("artifact does not carry clique-gadget machine roles")

    color_of: dict[str, int] = {}
    vertex_job: dict[tuple[str, int], str] = {}
    combo_job: dict[tuple[str, tuple[int, int]], str] = {}
    edge_job: dict[frozenset, str] = {}
    for job_id, role in artifact.job_roles.items():
        if isinstance(role, VertexJobRole):
            color_of[role.vertex] = role.vertex_color
            vertex_job[(role.vertex, role.color)] = job_id
        elif isinstance(role, ComboJobRole):
            combo_job[(role.vertex, role.pair)] = job_id
        elif isinstance(role, EdgeJobRole):
            edge_job[frozenset(role.endpoints)] = job_id
        else:
            raise UsageError("artifact mixes clique-gadget and other job roles")
    return pair_machine, validation, color_of, vertex_job, combo_job, edge_job


def schedule_from_clique(
    artifact: ReductionArtifact, clique: Union[CliqueWitness, tuple, list]
) -> Schedule:
    """Witness schedule for a multicolored clique.

    Per color pair's machine: the clique edge's job, both endpoints'
    combination jobs, and the two endpoints' unit vertex jobs for the
    opposite color.  On the validation machine: each clique vertex's
    selection job, plus every non-selection job of every vertex outside
    the clique.  In PATCHED mode this schedule is feasible and meets
    the target weight exactly; in VERBATIM mode it is returned as-is so
    a validator can inspect the overlap.
    """
    (pair_machine, validation, color_of, vertex_job, combo_job, edge_job
     ) = _clique_structure(artifact)
    vertices = clique.vertices if isinstance(clique, CliqueWitness) else tuple(clique)
    k = max(color_of.values())

    by_color: dict[int, str] = {}
    for v in vertices:
        if v not in color_of:
            raise WitnessError(f"witness vertex {v!r} is not in the artifact")
        c = color_of[v]
        if c in by_color:
            raise WitnessError(f"witness has two color-{c} vertices")
        by_color[c] = v
    if sorted(by_color) != list(range(1, k + 1)):
        missing = sorted(set(range(1, k + 1)) - set(by_color))
        raise WitnessError(f"witness misses colors {missing}")

    assignment: dict[str, Optional[int]] = {
        job.id: None for job in artifact.instance.jobs
    }
    for (lo, hi), machine in pair_machine.items():
        v, w = by_color[lo], by_color[hi]
        key = frozenset((v, w))
        if key not in edge_job:
            raise WitnessError(f"witness pair {v!r}-{w!r} has no edge")
        assignment[edge_job[key]] = machine
        assignment[combo_job[(v, (lo, hi))]] = machine
        assignment[combo_job[(w, (lo, hi))]] = machine
        assignment[vertex_job[(v, hi)]] = machine
        assignment[vertex_job[(w, lo)]] = machine

    chosen = set(by_color.values())
    for (vertex, color), job_id in vertex_job.items():
        if vertex in chosen:
            if color == color_of[vertex]:
                assignment[job_id] = validation
        elif color != color_of[vertex]:
            assignment[job_id] = validation

    return Schedule(assignment)


def clique_from_schedule(
    artifact: ReductionArtifact, schedule: Schedule
) -> Union[CliqueWitness, ExtractionFailure]:
    """Decode a threshold-weight schedule back into a clique.

    Requires a feasible schedule of weight at least the target (usage
    error otherwise).  The decoded set is every vertex whose selection
    job is scheduled; if it covers all colors and is pairwise adjacent
    it is the witness, otherwise an ExtractionFailure explains what is
    wrong rather than fabricating an answer.
    """
    report = validate_schedule(artifact.instance, schedule)
    if not report.feasible:
        raise UsageError("schedule is infeasible; extraction needs a feasible one")
    if report.total_weight < artifact.target:
        raise UsageError(
            f"schedule weight {report.total_weight} is below target {artifact.target}"
        )
    (_, _, color_of, vertex_job, _, edge_job) = _clique_structure(artifact)
    k = max(color_of.values())

    selected = []
    for (vertex, color), job_id in vertex_job.items():
        if color == color_of[vertex] and schedule.assignment[job_id] is not None:
            selected.append(vertex)
    selected.sort(key=lambda v: (color_of[v], v))

    missing = tuple(
        c for c in range(1, k + 1) if all(color_of[v] != c for v in selected)
    )
    non_adjacent = tuple(
        (a, b)
        for a, b in combinations(selected, 2)
        if frozenset((a, b)) not in edge_job
    )
    if missing or non_adjacent or len(selected) != k:
        return ExtractionFailure(
            message=(
                f"scheduled selection jobs mark {len(selected)} vertices,"
                f" which do not form a {k}-colored clique"
            ),
            selected=tuple(selected),
            missing_colors=missing,
            non_adjacent=non_adjacent,
        )
    return CliqueWitness(vertices=tuple(selected))


def brute_force_clique(
    graph: KPartiteGraph, *, budget: int = DEFAULT_CLIQUE_BUDGET
) -> Optional[CliqueWitness]:
    """First multicolored clique in lexicographic part order, or None.

    Enumerates the cartesian product of the color classes (in input
    order) and returns the first selection whose pairs are all edges.
    Refuses when the product size exceeds ``budget``.
    """
    size = 1
    for part in graph.parts:
        size *= len(part)
    if size > budget:
        raise BudgetExceededError(
            f"clique search needs {size} combinations, budget is {budget}",
            budget=budget,
            required=size,
        )
    for combo in product(*graph.parts):
        if all(graph.has_edge(u, w) for u, w in combinations(combo, 2)):
            return CliqueWitness(vertices=tuple(combo))
    return None
