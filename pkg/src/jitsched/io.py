"""Serialization for every domain object, plus DIMACS CNF.

All writers emit canonical text: fixed key order, two-space indentation,
decimal integers, a single trailing newline.  Equal objects therefore
serialize to identical bytes, and parse(write(x)) == x.

Parsers are strict.  Syntactically broken input raises ParseError with
line/column context; well-formed documents with bad content raise
ValidationError naming the offending field.  Integers must be JSON
integers (no floats, no booleans) inside the signed 64-bit range.
"""
from __future__ import annotations

import json
from typing import Optional, Union

from .core import Instance, Job, ProcessingTable, Schedule, Variant
from .errors import INT64_MAX, INT64_MIN, ParseError, UsageError, ValidationError
from .reductions.artifacts import (
    ClauseJobRole,
    ClauseSelectionMachine,
    CliqueValidationMachine,
    ComboJobRole,
    DummyJobRole,
    EdgeJobRole,
    EdgeSelectionMachine,
    JobRole,
    MachineRole,
    ReductionArtifact,
    SatValidationMachine,
    VariableJobRole,
    VariableSelectionMachine,
    VertexJobRole,
)
from .reductions.clique import KPartiteGraph
from .reductions.sat import CnfFormula, Literal

DOCUMENT_VERSION = "1"


# --- low-level readers ----------------------------------------------------

def _load(text: str, what: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"{what}: invalid JSON at line {exc.lineno} column {exc.colno}:"
            f" {exc.msg}"
        ) from None


def _dump(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _obj(value, path: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(value, dict):
        raise ValidationError(f"{path}: expected an object")
    for key in required:
        if key not in value:
            raise ValidationError(f"{path}: missing required field {key!r}")
    for key in value:
        if key not in required and key not in optional:
            raise ValidationError(f"{path}: unknown field {key!r}")
    return value


def _list(value, path: str) -> list:
    if not isinstance(value, list):
        raise ValidationError(f"{path}: expected an array")
    return value


def _str(value, path: str) -> str:
    if not isinstance(value, str):
        raise ValidationError(f"{path}: expected a string")
    return value


def _int(value, path: str) -> int:
    # bool is an int subclass; floats like 1.0 are equal to 1; reject both.
    if type(value) is not int:
        raise ValidationError(f"{path}: expected an integer, got {value!r}")
    if not (INT64_MIN <= value <= INT64_MAX):
        raise ValidationError(f"{path}: {value} is outside the signed 64-bit range")
    return value


def _bool(value, path: str) -> bool:
    if type(value) is not bool:
        raise ValidationError(f"{path}: expected a boolean, got {value!r}")
    return value


def _int_pair(value, path: str) -> tuple[int, int]:
    items = _list(value, path)
    if len(items) != 2:
        raise ValidationError(f"{path}: expected a pair, got {len(items)} entries")
    return (_int(items[0], f"{path}[0]"), _int(items[1], f"{path}[1]"))


def _str_pair(value, path: str) -> tuple[str, str]:
    items = _list(value, path)
    if len(items) != 2:
        raise ValidationError(f"{path}: expected a pair, got {len(items)} entries")
    return (_str(items[0], f"{path}[0]"), _str(items[1], f"{path}[1]"))


# --- job and machine role documents ---------------------------------------

def _encode_job_role(role: JobRole) -> dict:
    if isinstance(role, VertexJobRole):
        return {
            "kind": role.kind,
            "vertex": role.vertex,
            "vertex_color": role.vertex_color,
            "color": role.color,
            "position": role.position,
        }
    if isinstance(role, EdgeJobRole):
        return {
            "kind": role.kind,
            "endpoints": list(role.endpoints),
            "colors": list(role.colors),
        }
    if isinstance(role, ComboJobRole):
        return {
            "kind": role.kind,
            "vertex": role.vertex,
            "vertex_color": role.vertex_color,
            "pair": list(role.pair),
            "position": role.position,
        }
    if isinstance(role, VariableJobRole):
        return {
            "kind": role.kind,
            "variable": role.variable,
            "polarity": role.polarity,
            "position": role.position,
        }
    if isinstance(role, ClauseJobRole):
        return {
            "kind": role.kind,
            "clause": role.clause,
            "literal": role.literal,
            "variable": role.variable,
            "negated": role.negated,
            "position": role.position,
        }
    if isinstance(role, DummyJobRole):
        return {"kind": role.kind, "index": role.index, "position": role.position}
    raise UsageError(f"cannot serialize job role {role!r}")


def _decode_job_role(doc, path: str) -> JobRole:
    head = _obj(doc, path, ("kind",), optional=_ROLE_FIELDS_ANY)
    kind = _str(head["kind"], f"{path}.kind")
    decoder = _JOB_ROLE_DECODERS.get(kind)
    if decoder is None:
        raise ValidationError(f"{path}.kind: unknown job role kind {kind!r}")
    return decoder(doc, path)


def _decode_vertex_role(doc, path: str) -> VertexJobRole:
    body = _obj(doc, path, ("kind", "vertex", "vertex_color", "color", "position"))
    return VertexJobRole(
        vertex=_str(body["vertex"], f"{path}.vertex"),
        vertex_color=_int(body["vertex_color"], f"{path}.vertex_color"),
        color=_int(body["color"], f"{path}.color"),
        position=_int(body["position"], f"{path}.position"),
    )


def _decode_edge_role(doc, path: str) -> EdgeJobRole:
    body = _obj(doc, path, ("kind", "endpoints", "colors"))
    return EdgeJobRole(
        endpoints=_str_pair(body["endpoints"], f"{path}.endpoints"),
        colors=_int_pair(body["colors"], f"{path}.colors"),
    )


def _decode_combo_role(doc, path: str) -> ComboJobRole:
    body = _obj(doc, path, ("kind", "vertex", "vertex_color", "pair", "position"))
    return ComboJobRole(
        vertex=_str(body["vertex"], f"{path}.vertex"),
        vertex_color=_int(body["vertex_color"], f"{path}.vertex_color"),
        pair=_int_pair(body["pair"], f"{path}.pair"),
        position=_int(body["position"], f"{path}.position"),
    )


def _decode_variable_role(doc, path: str) -> VariableJobRole:
    body = _obj(doc, path, ("kind", "variable", "polarity", "position"))
    return VariableJobRole(
        variable=_int(body["variable"], f"{path}.variable"),
        polarity=_bool(body["polarity"], f"{path}.polarity"),
        position=_int(body["position"], f"{path}.position"),
    )


def _decode_clause_role(doc, path: str) -> ClauseJobRole:
    body = _obj(doc, path, ("kind", "clause", "literal", "variable", "negated", "position"))
    return ClauseJobRole(
        clause=_int(body["clause"], f"{path}.clause"),
        literal=_int(body["literal"], f"{path}.literal"),
        variable=_int(body["variable"], f"{path}.variable"),
        negated=_bool(body["negated"], f"{path}.negated"),
        position=_int(body["position"], f"{path}.position"),
    )


def _decode_dummy_role(doc, path: str) -> DummyJobRole:
    body = _obj(doc, path, ("kind", "index", "position"))
    return DummyJobRole(
        index=_int(body["index"], f"{path}.index"),
        position=_int(body["position"], f"{path}.position"),
    )


_JOB_ROLE_DECODERS = {
    "vertex": _decode_vertex_role,
    "edge": _decode_edge_role,
    "color-combo": _decode_combo_role,
    "variable": _decode_variable_role,
    "clause": _decode_clause_role,
    "dummy": _decode_dummy_role,
}

#: Union of all fields any role kind may carry, for the first-pass check.
_ROLE_FIELDS_ANY = (
    "vertex", "vertex_color", "color", "position", "endpoints", "colors",
    "pair", "variable", "polarity", "clause", "literal", "negated", "index",
    "copy",
)


def _encode_machine_role(role: MachineRole) -> dict:
    if isinstance(role, EdgeSelectionMachine):
        return {"kind": role.kind, "pair": list(role.pair)}
    if isinstance(role, CliqueValidationMachine):
        return {"kind": role.kind}
    if isinstance(role, VariableSelectionMachine):
        return {"kind": role.kind, "variable": role.variable}
    if isinstance(role, ClauseSelectionMachine):
        return {"kind": role.kind, "clause": role.clause, "copy": role.copy}
    if isinstance(role, SatValidationMachine):
        return {"kind": role.kind, "variable": role.variable}
    raise UsageError(f"cannot serialize machine role {role!r}")


def _decode_machine_role(doc, path: str) -> MachineRole:
    head = _obj(doc, path, ("kind",), optional=_ROLE_FIELDS_ANY)
    kind = _str(head["kind"], f"{path}.kind")
    if kind == "edge-selection":
        body = _obj(doc, path, ("kind", "pair"))
        return EdgeSelectionMachine(pair=_int_pair(body["pair"], f"{path}.pair"))
    if kind == "clique-validation":
        _obj(doc, path, ("kind",))
        return CliqueValidationMachine()
    if kind == "variable-selection":
        body = _obj(doc, path, ("kind", "variable"))
        return VariableSelectionMachine(variable=_int(body["variable"], f"{path}.variable"))
    if kind == "clause-selection":
        body = _obj(doc, path, ("kind", "clause", "copy"))
        return ClauseSelectionMachine(
            clause=_int(body["clause"], f"{path}.clause"),
            copy=_int(body["copy"], f"{path}.copy"),
        )
    if kind == "sat-validation":
        body = _obj(doc, path, ("kind", "variable"))
        return SatValidationMachine(variable=_int(body["variable"], f"{path}.variable"))
    raise ValidationError(f"{path}.kind: unknown machine role kind {kind!r}")


# --- instance and artifact documents --------------------------------------

def write_instance(obj: Union[Instance, ReductionArtifact]) -> str:
    """Serialize an Instance, or a ReductionArtifact with annotations."""
    if isinstance(obj, ReductionArtifact):
        instance, artifact = obj.instance, obj
    elif isinstance(obj, Instance):
        instance, artifact = obj, None
    else:
        raise UsageError(f"write_instance expects Instance or ReductionArtifact, got {type(obj).__name__}")

    doc: dict = {
        "version": DOCUMENT_VERSION,
        "machines": instance.machine_count,
        "variant": instance.variant.value,
        "jobs": [
            {
                "id": job.id,
                "deadline": job.deadline,
                "weight": job.weight,
                "processing_times": list(instance.table.rows[k]),
            }
            for k, job in enumerate(instance.jobs)
        ],
    }
    if artifact is not None:
        annotations: dict = {"target": artifact.target}
        if artifact.mode is not None:
            annotations["mode"] = artifact.mode
        annotations["job_roles"] = {
            job.id: _encode_job_role(artifact.job_roles[job.id])
            for job in instance.jobs
        }
        annotations["machine_roles"] = [
            _encode_machine_role(role) for role in artifact.machine_roles
        ]
        doc["annotations"] = annotations
    return _dump(doc)


def parse_instance(text: str) -> Union[Instance, ReductionArtifact]:
    """Parse an instance document; annotations yield a ReductionArtifact."""
    doc = _obj(
        _load(text, "instance document"),
        "instance document",
        ("version", "machines", "variant", "jobs"),
        optional=("annotations",),
    )
    version = _str(doc["version"], "version")
    if version != DOCUMENT_VERSION:
        raise ValidationError(f"version: unsupported document version {version!r}")
    machines = _int(doc["machines"], "machines")
    if machines < 0:
        raise ValidationError(f"machines: must be nonnegative, got {machines}")
    variant_name = _str(doc["variant"], "variant")
    try:
        variant = Variant(variant_name)
    except ValueError:
        raise ValidationError(f"variant: unknown variant {variant_name!r}") from None

    jobs: list[Job] = []
    rows: list[tuple[Optional[int], ...]] = []
    for k, entry in enumerate(_list(doc["jobs"], "jobs")):
        path = f"jobs[{k}]"
        body = _obj(entry, path, ("id", "deadline", "weight", "processing_times"))
        job_id = _str(body["id"], f"{path}.id")
        deadline = _int(body["deadline"], f"{path}.deadline")
        weight = _int(body["weight"], f"{path}.weight")
        times = _list(body["processing_times"], f"{path}.processing_times")
        if len(times) != machines:
            raise ValidationError(
                f"{path}.processing_times: {len(times)} entries for"
                f" {machines} machines"
            )
        row = tuple(
            None if value is None else _int(value, f"{path}.processing_times[{i}]")
            for i, value in enumerate(times)
        )
        try:
            jobs.append(Job(id=job_id, deadline=deadline, weight=weight))
        except UsageError as exc:
            raise ValidationError(f"{path}: {exc}") from None
        rows.append(row)

    try:
        instance = Instance(
            jobs=tuple(jobs),
            table=ProcessingTable(machine_count=machines, rows=tuple(rows)),
            variant=variant,
        )
    except UsageError as exc:
        raise ValidationError(f"instance document: {exc}") from None

    if "annotations" not in doc:
        return instance

    ann = _obj(
        doc["annotations"],
        "annotations",
        ("target", "job_roles", "machine_roles"),
        optional=("mode",),
    )
    target = _int(ann["target"], "annotations.target")
    mode = None
    if "mode" in ann:
        mode = _str(ann["mode"], "annotations.mode")
    roles_doc = ann["job_roles"]
    if not isinstance(roles_doc, dict):
        raise ValidationError("annotations.job_roles: expected an object")
    job_roles = {
        job_id: _decode_job_role(role_doc, f"annotations.job_roles[{job_id!r}]")
        for job_id, role_doc in roles_doc.items()
    }
    machine_roles = tuple(
        _decode_machine_role(role_doc, f"annotations.machine_roles[{i}]")
        for i, role_doc in enumerate(_list(ann["machine_roles"], "annotations.machine_roles"))
    )
    try:
        return ReductionArtifact(
            instance=instance,
            job_roles=job_roles,
            machine_roles=machine_roles,
            target=target,
            mode=mode,
        )
    except UsageError as exc:
        raise ValidationError(f"annotations: {exc}") from None


# --- graph documents -------------------------------------------------------

def write_graph(graph: KPartiteGraph) -> str:
    doc = {
        "k": graph.k,
        "colors": [list(part) for part in graph.parts],
        "edges": [list(edge) for edge in graph.edges],
    }
    return _dump(doc)


def parse_graph(text: str) -> KPartiteGraph:
    doc = _obj(_load(text, "graph document"), "graph document", ("k", "colors", "edges"))
    k = _int(doc["k"], "k")
    colors = _list(doc["colors"], "colors")
    if k != len(colors):
        raise ValidationError(f"k: declared {k} colors but found {len(colors)} classes")
    parts = tuple(
        tuple(_str(v, f"colors[{c}][{i}]") for i, v in enumerate(_list(part, f"colors[{c}]")))
        for c, part in enumerate(colors)
    )
    edges = tuple(
        _str_pair(edge, f"edges[{e}]")
        for e, edge in enumerate(_list(doc["edges"], "edges"))
    )
    try:
        return KPartiteGraph(parts=parts, edges=edges)
    except UsageError as exc:
        raise ValidationError(f"graph document: {exc}") from None


# --- schedule documents -----------------------------------------------------

def write_schedule(schedule: Schedule) -> str:
    # Sorted keys make equal schedules byte-identical regardless of the
    # insertion order of their assignment maps.
    doc = {
        "assignment": {
            job_id: schedule.assignment[job_id]
            for job_id in sorted(schedule.assignment)
        }
    }
    return _dump(doc)


def parse_schedule(text: str) -> Schedule:
    doc = _obj(_load(text, "schedule document"), "schedule document", ("assignment",))
    body = doc["assignment"]
    if not isinstance(body, dict):
        raise ValidationError("assignment: expected an object")
    assignment: dict[str, Optional[int]] = {}
    for job_id, value in body.items():
        if value is None:
            assignment[job_id] = None
            continue
        machine = _int(value, f"assignment[{job_id!r}]")
        if machine < 0:
            raise ValidationError(
                f"assignment[{job_id!r}]: machine index must be nonnegative,"
                f" got {machine}"
            )
        assignment[job_id] = machine
    return Schedule(assignment)


# --- DIMACS CNF -------------------------------------------------------------

def parse_dimacs(text: str) -> CnfFormula:
    """Parse DIMACS CNF with exactly three literals per clause.

    Comment lines (leading ``c``) and blank lines are ignored.  Clauses
    are runs of nonzero integers terminated by 0 and may span lines.
    """
    header: Optional[tuple[int, int]] = None
    tokens: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError(f"line {lineno}: duplicate header")
            fields = line.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise ParseError(f"line {lineno}: malformed header {line!r}")
            try:
                declared_vars, declared_clauses = int(fields[2]), int(fields[3])
            except ValueError:
                raise ParseError(f"line {lineno}: malformed header {line!r}") from None
            if declared_vars < 0 or declared_clauses < 0:
                raise ParseError(f"line {lineno}: negative counts in header")
            header = (declared_vars, declared_clauses)
            continue
        if header is None:
            raise ParseError(f"line {lineno}: clause data before 'p cnf' header")
        for token in line.split():
            try:
                tokens.append(int(token))
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer token {token!r}") from None
    if header is None:
        raise ParseError("missing 'p cnf' header")
    declared_vars, declared_clauses = header

    raw_clauses: list[tuple[int, ...]] = []
    current: list[int] = []
    for value in tokens:
        if value == 0:
            raw_clauses.append(tuple(current))
            current = []
        else:
            current.append(value)
    if current:
        raise ParseError("last clause is not terminated by 0")
    if len(raw_clauses) != declared_clauses:
        raise ValidationError(
            f"header declares {declared_clauses} clauses, found {len(raw_clauses)}"
        )

    clauses = []
    for c, raw_clause in enumerate(raw_clauses):
        if len(raw_clause) != 3:
            raise ValidationError(
                f"clause {c} has {len(raw_clause)} literals, expected exactly 3"
            )
        literals = []
        for value in raw_clause:
            index = abs(value)
            if not (1 <= index <= declared_vars):
                raise ValidationError(
                    f"clause {c}: variable {index} out of range 1..{declared_vars}"
                )
            literals.append(Literal(variable=index - 1, negated=value < 0))
        clauses.append(tuple(literals))
    return CnfFormula(variable_count=declared_vars, clauses=tuple(clauses))


def write_dimacs(formula: CnfFormula) -> str:
    """Write DIMACS CNF, preserving clause and literal order."""
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for clause in formula.clauses:
        encoded = [
            str(-(lit.variable + 1)) if lit.negated else str(lit.variable + 1)
            for lit in clause
        ]
        lines.append(" ".join(encoded) + " 0")
    return "\n".join(lines) + "\n"
