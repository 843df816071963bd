"""Role annotations for reduction-built instances.

A reduction emits an ordinary Instance plus a role for every job and
machine, a weight target, and (for the clique construction) the gadget
mode.  Roles let witness converters and verification harnesses navigate
the gadget structure without re-deriving it from raw numbers, and they
round-trip through the instance document format.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from ..core import Instance
from ..errors import UsageError, checked_int64

PATCHED = "patched"
VERBATIM = "verbatim"


# --- job roles -----------------------------------------------------------

@dataclass(frozen=True)
class VertexJobRole:
    """Vertex job of ``vertex`` carrying color superscript ``color``.

    The job with color equal to the vertex's own color is the selection
    job (scheduling it declares the vertex picked); the others are unit
    filler jobs tied to one edge-selection machine each.
    """

    vertex: str
    vertex_color: int
    color: int
    position: int

    kind = "vertex"

    @property
    def is_selection(self) -> bool:
        return self.color == self.vertex_color


@dataclass(frozen=True)
class EdgeJobRole:
    """Edge job for the edge between ``endpoints`` (low color first)."""

    endpoints: tuple[str, str]
    colors: tuple[int, int]

    kind = "edge"


@dataclass(frozen=True)
class ComboJobRole:
    """Color-combination job of ``vertex`` for the color pair ``pair``."""

    vertex: str
    vertex_color: int
    pair: tuple[int, int]
    position: int

    kind = "color-combo"


@dataclass(frozen=True)
class VariableJobRole:
    """Truth-side job of a variable; polarity True is the 'true' job."""

    variable: int
    polarity: bool
    position: int

    kind = "variable"


@dataclass(frozen=True)
class ClauseJobRole:
    """Job for literal slot ``literal`` (0-based) of clause ``clause``."""

    clause: int
    literal: int
    variable: int
    negated: bool
    position: int

    kind = "clause"


@dataclass(frozen=True)
class DummyJobRole:
    """Blocking job; exactly one ends up on every machine."""

    index: int
    position: int

    kind = "dummy"


JobRole = Union[
    VertexJobRole, EdgeJobRole, ComboJobRole,
    VariableJobRole, ClauseJobRole, DummyJobRole,
]


# --- machine roles -------------------------------------------------------

@dataclass(frozen=True)
class EdgeSelectionMachine:
    pair: tuple[int, int]

    kind = "edge-selection"


@dataclass(frozen=True)
class CliqueValidationMachine:
    kind = "clique-validation"


@dataclass(frozen=True)
class VariableSelectionMachine:
    variable: int

    kind = "variable-selection"


@dataclass(frozen=True)
class ClauseSelectionMachine:
    clause: int
    copy: int

    kind = "clause-selection"


@dataclass(frozen=True)
class SatValidationMachine:
    variable: int

    kind = "sat-validation"


MachineRole = Union[
    EdgeSelectionMachine, CliqueValidationMachine,
    VariableSelectionMachine, ClauseSelectionMachine, SatValidationMachine,
]


@dataclass(frozen=True)
class ReductionArtifact:
    """Instance plus gadget annotations: roles, target weight, mode."""

    instance: Instance
    job_roles: Mapping[str, JobRole]
    machine_roles: tuple[MachineRole, ...]
    target: int
    mode: Optional[str] = None

    def __post_init__(self):
        ids = {job.id for job in self.instance.jobs}
        if set(self.job_roles) != ids:
            raise UsageError("job_roles must cover exactly the instance's job ids")
        if len(self.machine_roles) != self.instance.machine_count:
            raise UsageError(
                f"{len(self.machine_roles)} machine roles for"
                f" {self.instance.machine_count} machines"
            )
        checked_int64(self.target, "target")
        if self.mode not in (None, PATCHED, VERBATIM):
            raise UsageError(f"unknown mode {self.mode!r}")

    def role_of(self, job_id: str) -> JobRole:
        return self.job_roles[job_id]

    def machines_with_role(self, kind: str) -> tuple[int, ...]:
        return tuple(
            i for i, r in enumerate(self.machine_roles) if r.kind == kind
        )
