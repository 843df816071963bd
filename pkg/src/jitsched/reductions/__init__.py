"""Hardness-reduction gadgets and their witness converters."""
from .artifacts import (
    PATCHED,
    VERBATIM,
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
from .clique import (
    CliqueWitness,
    ExtractionFailure,
    KPartiteGraph,
    VertexOrdering,
    WeightConstants,
    brute_force_clique,
    clique_from_schedule,
    color_pairs,
    mcc_target,
    mcc_to_isem,
    schedule_from_clique,
    vertex_ordering,
    weight_constants,
)
from .sat import (
    CnfFormula,
    Literal,
    assignment_from_schedule,
    brute_force_sat,
    sat_job_order,
    sat_to_uisum,
    schedule_from_assignment,
)

__all__ = [
    "PATCHED",
    "VERBATIM",
    "ClauseJobRole",
    "ClauseSelectionMachine",
    "CliqueValidationMachine",
    "CliqueWitness",
    "CnfFormula",
    "ComboJobRole",
    "DummyJobRole",
    "EdgeJobRole",
    "EdgeSelectionMachine",
    "ExtractionFailure",
    "JobRole",
    "KPartiteGraph",
    "Literal",
    "MachineRole",
    "ReductionArtifact",
    "SatValidationMachine",
    "VariableJobRole",
    "VariableSelectionMachine",
    "VertexJobRole",
    "VertexOrdering",
    "WeightConstants",
    "assignment_from_schedule",
    "brute_force_clique",
    "brute_force_sat",
    "clique_from_schedule",
    "color_pairs",
    "mcc_target",
    "mcc_to_isem",
    "sat_job_order",
    "sat_to_uisum",
    "schedule_from_assignment",
    "schedule_from_clique",
    "vertex_ordering",
    "weight_constants",
]
