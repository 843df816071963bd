"""Core model for just-in-time interval scheduling.

A job j has a deadline d and, per machine i, either a duration p or no
entry at all (the job is then ineligible on i).  Scheduling j on i means
occupying the half-open interval (d - p, d] on that machine; there is no
choice of start time.  A schedule assigns each job to one machine or
rejects it, and is feasible when every assignment is eligible and no two
intervals on the same machine intersect.  The value of a schedule is the
total weight of its scheduled jobs, feasible or not; feasibility is
reported separately.

Three problem variants share this one model:

* ``ELIGIBLE``             uniform duration per job, arbitrary eligible sets
* ``UNRELATED``            per-machine durations, every machine eligible
* ``UNRELATED_UNWEIGHTED`` as above with every weight equal to one

All numbers are signed 64-bit integers and arithmetic is checked; there
is no floating point anywhere in the model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Mapping, Optional, Union

from .errors import UsageError, checked_int64, checked_sum

#: Assignment value for a job left out of the schedule.
REJECTED = None


class Variant(str, Enum):
    ELIGIBLE = "eligible"
    UNRELATED = "unrelated"
    UNRELATED_UNWEIGHTED = "unrelated-unweighted"


@dataclass(frozen=True)
class Job:
    """One job: identifier, deadline (>= 1) and nonnegative weight."""

    id: str
    deadline: int
    weight: int

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise UsageError("job id must be a non-empty string")
        if self.deadline < 1:
            raise UsageError(f"job {self.id!r}: deadline must be >= 1")
        checked_int64(self.deadline, f"job {self.id!r} deadline")
        if self.weight < 0:
            raise UsageError(f"job {self.id!r}: weight must be >= 0")
        checked_int64(self.weight, f"job {self.id!r} weight")


@dataclass(frozen=True)
class Interval:
    """Half-open interval (start, end]; start == end is the empty interval."""

    start: int
    end: int

    def __post_init__(self):
        if self.start > self.end:
            raise UsageError(f"interval start {self.start} exceeds end {self.end}")

    @property
    def is_empty(self) -> bool:
        return self.start == self.end


def intervals_conflict(a: Interval, b: Interval) -> bool:
    """True when the two half-open intervals intersect.

    Symmetric; an empty interval never conflicts with anything, itself
    included.
    """
    return max(a.start, b.start) < min(a.end, b.end)


@dataclass(frozen=True)
class ProcessingTable:
    """Durations per (job, machine); ``None`` marks an ineligible pair.

    ``rows[j][i]`` is job j's duration on machine i.  Durations are
    nonnegative; zero is legal and yields an empty interval that never
    conflicts with anything.
    """

    machine_count: int
    rows: tuple[tuple[Optional[int], ...], ...]

    def __post_init__(self):
        if self.machine_count < 1:
            raise UsageError("machine count must be >= 1")
        for j, row in enumerate(self.rows):
            if len(row) != self.machine_count:
                raise UsageError(
                    f"row {j} has {len(row)} entries, expected {self.machine_count}"
                )
            for i, p in enumerate(row):
                if p is None:
                    continue
                if p < 0:
                    raise UsageError(f"duration for job row {j}, machine {i} is negative")
                checked_int64(p, f"duration for job row {j}, machine {i}")

    def duration(self, job_index: int, machine: int) -> Optional[int]:
        return self.rows[job_index][machine]

    def eligible_machines(self, job_index: int) -> tuple[int, ...]:
        return tuple(i for i, p in enumerate(self.rows[job_index]) if p is not None)

    def is_eligible_uniform(self) -> bool:
        """Each job's non-missing durations are all equal."""
        for row in self.rows:
            present = {p for p in row if p is not None}
            if len(present) > 1:
                return False
        return True

    def is_fully_eligible(self) -> bool:
        return all(p is not None for row in self.rows for p in row)


@dataclass(frozen=True)
class Instance:
    """An immutable problem instance: jobs, processing table, variant tag.

    Invariants enforced here: job ids unique, one table row per job, and
    the declared variant's predicate holds (uniform durations for
    ELIGIBLE, full eligibility for the UNRELATED variants, unit weights
    for UNRELATED_UNWEIGHTED).
    """

    jobs: tuple[Job, ...]
    table: ProcessingTable
    variant: Variant

    def __post_init__(self):
        if len(self.table.rows) != len(self.jobs):
            raise UsageError(
                f"table has {len(self.table.rows)} rows for {len(self.jobs)} jobs"
            )
        seen = set()
        for job in self.jobs:
            if job.id in seen:
                raise UsageError(f"duplicate job id {job.id!r}")
            seen.add(job.id)
        if self.variant is Variant.ELIGIBLE:
            if not self.table.is_eligible_uniform():
                raise UsageError("ELIGIBLE variant requires a uniform duration per job")
        else:
            if not self.table.is_fully_eligible():
                raise UsageError(f"{self.variant.value} variant forbids ineligible pairs")
            if self.variant is Variant.UNRELATED_UNWEIGHTED:
                for job in self.jobs:
                    if job.weight != 1:
                        raise UsageError(
                            f"{self.variant.value} variant requires unit weights"
                            f" (job {job.id!r} has {job.weight})"
                        )

    @property
    def job_count(self) -> int:
        return len(self.jobs)

    @property
    def machine_count(self) -> int:
        return self.table.machine_count

    @cached_property
    def job_index(self) -> Mapping[str, int]:
        return {job.id: k for k, job in enumerate(self.jobs)}

    def job_by_id(self, job_id: str) -> Job:
        try:
            return self.jobs[self.job_index[job_id]]
        except KeyError:
            raise UsageError(f"unknown job id {job_id!r}") from None


def interval_of(instance: Instance, job_id: str, machine: int) -> Optional[Interval]:
    """The interval job_id would occupy on machine, or None if ineligible."""
    k = instance.job_index.get(job_id)
    if k is None:
        raise UsageError(f"unknown job id {job_id!r}")
    if not (0 <= machine < instance.machine_count):
        raise UsageError(
            f"machine {machine} out of range 0..{instance.machine_count - 1}"
        )
    p = instance.table.duration(k, machine)
    if p is None:
        return None
    d = instance.jobs[k].deadline
    return Interval(d - p, d)


@dataclass(frozen=True)
class Schedule:
    """Total assignment job id -> machine index, or REJECTED (None)."""

    assignment: Mapping[str, Optional[int]]

    def machine_of(self, job_id: str) -> Optional[int]:
        return self.assignment[job_id]

    def scheduled_ids(self) -> tuple[str, ...]:
        return tuple(j for j, m in self.assignment.items() if m is not None)

    def jobs_on(self, machine: int) -> tuple[str, ...]:
        return tuple(j for j, m in self.assignment.items() if m == machine)


@dataclass(frozen=True)
class ConflictViolation:
    machine: int
    job_a: str
    job_b: str

    def describe(self) -> str:
        return f"CONFLICT on machine {self.machine}: {self.job_a!r} overlaps {self.job_b!r}"


@dataclass(frozen=True)
class IneligibleViolation:
    machine: int
    job: str

    def describe(self) -> str:
        return f"INELIGIBLE on machine {self.machine}: {self.job!r} has no entry there"


Violation = Union[ConflictViolation, IneligibleViolation]


@dataclass(frozen=True)
class ValidationReport:
    feasible: bool
    total_weight: int
    violations: tuple[Violation, ...] = field(default=())

    def describe(self) -> str:
        lines = [
            f"feasible={'yes' if self.feasible else 'no'} total_weight={self.total_weight}"
        ]
        lines.extend(v.describe() for v in self.violations)
        return "\n".join(lines)


def validate_schedule(instance: Instance, schedule: Schedule) -> ValidationReport:
    """Check a schedule exhaustively and total its weight.

    The assignment domain must equal the instance's job ids exactly;
    anything else is a usage error, not a violation.  Violations are
    reported for every offending pair, ordered by machine index, then by
    job position in the instance: first each ineligible assignment, then
    every conflicting pair (positions ascending, earlier job first).
    Empty intervals never conflict.  The weight totals every assigned
    job, whether or not the schedule is feasible.
    """
    ids = set(instance.job_index)
    given = set(schedule.assignment)
    if given != ids:
        missing = sorted(ids - given)
        extra = sorted(given - ids)
        parts = []
        if missing:
            parts.append(f"missing {missing}")
        if extra:
            parts.append(f"unknown {extra}")
        raise UsageError("schedule domain mismatch: " + ", ".join(parts))

    by_machine: dict[int, list[int]] = {}
    total = 0
    for k, job in enumerate(instance.jobs):
        m = schedule.assignment[job.id]
        if m is REJECTED:
            continue
        if not (0 <= m < instance.machine_count):
            raise UsageError(
                f"job {job.id!r} assigned to machine {m}, valid range"
                f" 0..{instance.machine_count - 1}"
            )
        by_machine.setdefault(m, []).append(k)
        total = checked_sum((total, job.weight), "schedule weight")

    violations: list[Violation] = []
    for m in sorted(by_machine):
        members = by_machine[m]
        placed: list[tuple[int, Interval]] = []
        for k in members:
            p = instance.table.duration(k, m)
            if p is None:
                violations.append(IneligibleViolation(m, instance.jobs[k].id))
                continue
            d = instance.jobs[k].deadline
            placed.append((k, Interval(d - p, d)))
        for a in range(len(placed)):
            for b in range(a + 1, len(placed)):
                ka, ia = placed[a]
                kb, ib = placed[b]
                if intervals_conflict(ia, ib):
                    violations.append(
                        ConflictViolation(m, instance.jobs[ka].id, instance.jobs[kb].id)
                    )

    return ValidationReport(
        feasible=not violations,
        total_weight=total,
        violations=tuple(violations),
    )


def empty_schedule(instance: Instance) -> Schedule:
    """The all-REJECTED schedule; always feasible with weight zero."""
    return Schedule({job.id: REJECTED for job in instance.jobs})
