"""Seeded input generators.

All generators draw from Python's Mersenne Twister (``random.Random``)
seeded with a caller-supplied integer; a 64-bit seed is the documented
convention.  Identical arguments produce identical outputs, and the
order of draws is part of each generator's contract so companions like
``planted_clique_of`` can replay a prefix of the stream.  Serialized
corpora, not generator streams, are the cross-tool exchange format.
"""
from __future__ import annotations

import random
from typing import Optional, Sequence, Union

from .core import Instance, Job, ProcessingTable, Variant
from .errors import UsageError
from .reductions.clique import CliqueWitness, KPartiteGraph
from .reductions.sat import CnfFormula, Literal


def _sizes_tuple(k: int, sizes: Union[int, Sequence[int]]) -> tuple[int, ...]:
    if isinstance(sizes, int):
        sizes = [sizes] * k
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) != k:
        raise UsageError(f"{len(sizes)} part sizes for k={k}")
    if any(s < 1 for s in sizes):
        raise UsageError("every color class needs at least one vertex")
    return sizes


def _pick_planted(rng: random.Random, sizes: tuple[int, ...]) -> tuple[int, ...]:
    # Always the first draws of the stream, one per color.
    return tuple(rng.randrange(s) for s in sizes)


def gen_kpartite(
    k: int,
    sizes: Union[int, Sequence[int]],
    edge_prob: float,
    plant_clique: bool,
    seed: int,
) -> KPartiteGraph:
    """Random k-partite graph; optionally with a planted clique.

    Vertices are named ``v{color}_{index}``.  Draw order: the planted
    selection (one index per color, drawn even when planting is off so
    the edge layout does not depend on the flag), then one uniform draw
    per cross-color vertex pair in lexicographic order.  Planting adds
    the clique's edges afterwards.
    """
    if k < 2:
        raise UsageError("k-partite generation needs k >= 2")
    if not (0.0 <= edge_prob <= 1.0):
        raise UsageError("edge probability must lie in [0, 1]")
    sizes = _sizes_tuple(k, sizes)
    rng = random.Random(seed)
    planted = _pick_planted(rng, sizes)

    parts = tuple(
        tuple(f"v{c}_{i}" for i in range(sizes[c - 1])) for c in range(1, k + 1)
    )
    edges = []
    for lo in range(k):
        for hi in range(lo + 1, k):
            for u in parts[lo]:
                for w in parts[hi]:
                    if rng.random() < edge_prob:
                        edges.append((u, w))
    if plant_clique:
        chosen = [parts[c][planted[c]] for c in range(k)]
        present = set(map(frozenset, edges))
        for a in range(k):
            for b in range(a + 1, k):
                pair = (chosen[a], chosen[b])
                if frozenset(pair) not in present:
                    edges.append(pair)
    return KPartiteGraph(parts=parts, edges=tuple(edges))


def planted_clique_of(
    k: int, sizes: Union[int, Sequence[int]], seed: int
) -> CliqueWitness:
    """The clique ``gen_kpartite(..., plant_clique=True, seed)`` plants."""
    sizes = _sizes_tuple(k, sizes)
    rng = random.Random(seed)
    planted = _pick_planted(rng, sizes)
    return CliqueWitness(
        vertices=tuple(f"v{c + 1}_{planted[c]}" for c in range(k))
    )


def gen_3cnf(
    alpha: int, beta: int, seed: int, strict34: bool = False
) -> CnfFormula:
    """Random 3-CNF with ``alpha`` variables and ``beta`` clauses.

    Plain mode draws every literal slot independently (uniform variable,
    fair coin for negation).  With ``strict34`` the formula is exact
    (3,4): requires 3*beta == 4*alpha, lays out four occurrence slots
    per variable, shuffles them into the 3*beta literal slots, then
    draws polarities.
    """
    if alpha < 1:
        raise UsageError("need at least one variable")
    if beta < 0:
        raise UsageError("clause count must be >= 0")
    rng = random.Random(seed)
    if strict34:
        if 3 * beta != 4 * alpha:
            raise UsageError(
                f"exact (3,4) needs 3*clauses == 4*variables,"
                f" got 3*{beta} != 4*{alpha}"
            )
        slots = [x for x in range(alpha) for _ in range(4)]
        rng.shuffle(slots)
    else:
        slots = [rng.randrange(alpha) for _ in range(3 * beta)]
    literals = [
        Literal(variable=x, negated=bool(rng.getrandbits(1))) for x in slots
    ]
    clauses = tuple(
        (literals[3 * c], literals[3 * c + 1], literals[3 * c + 2])
        for c in range(beta)
    )
    return CnfFormula(variable_count=alpha, clauses=clauses)


def gen_random_instance(
    n: int,
    m: int,
    max_d: int,
    max_p: int,
    max_w: int,
    eligibility_prob: float,
    seed: int,
) -> Instance:
    """Random eligible-machines instance: one duration per job.

    Per job, in order: deadline in [1, max_d], duration in [0, max_p],
    weight in [0, max_w], then one eligibility coin per machine.  Jobs
    may end up eligible nowhere; solvers must reject those.
    """
    if n < 0 or m < 1:
        raise UsageError("need n >= 0 jobs and m >= 1 machines")
    if max_d < 1 or max_p < 0 or max_w < 0:
        raise UsageError("bounds must satisfy max_d >= 1, max_p >= 0, max_w >= 0")
    if not (0.0 <= eligibility_prob <= 1.0):
        raise UsageError("eligibility probability must lie in [0, 1]")
    rng = random.Random(seed)
    jobs = []
    rows = []
    for j in range(n):
        d = rng.randint(1, max_d)
        p = rng.randint(0, max_p)
        w = rng.randint(0, max_w)
        eligible = [rng.random() < eligibility_prob for _ in range(m)]
        jobs.append(Job(f"job{j}", deadline=d, weight=w))
        rows.append(tuple(p if ok else None for ok in eligible))
    return Instance(
        jobs=tuple(jobs),
        table=ProcessingTable(machine_count=m, rows=tuple(rows)),
        variant=Variant.ELIGIBLE,
    )


def gen_random_unrelated(
    n: int,
    m: int,
    max_d: int,
    max_p: int,
    max_w: int,
    seed: int,
    *,
    unit_weights: bool = False,
) -> Instance:
    """Random unrelated-machines instance: per-machine durations, no holes.

    Per job, in order: deadline, weight (skipped when ``unit_weights``),
    then one duration per machine.
    """
    if n < 0 or m < 1:
        raise UsageError("need n >= 0 jobs and m >= 1 machines")
    if max_d < 1 or max_p < 0 or max_w < 0:
        raise UsageError("bounds must satisfy max_d >= 1, max_p >= 0, max_w >= 0")
    rng = random.Random(seed)
    jobs = []
    rows = []
    for j in range(n):
        d = rng.randint(1, max_d)
        w = 1 if unit_weights else rng.randint(0, max_w)
        row = tuple(rng.randint(0, max_p) for _ in range(m))
        jobs.append(Job(f"job{j}", deadline=d, weight=w))
        rows.append(row)
    return Instance(
        jobs=tuple(jobs),
        table=ProcessingTable(machine_count=m, rows=tuple(rows)),
        variant=(
            Variant.UNRELATED_UNWEIGHTED if unit_weights else Variant.UNRELATED
        ),
    )
