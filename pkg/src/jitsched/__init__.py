"""jitsched: a verification lab for just-in-time interval scheduling.

Jobs must finish exactly at their deadline, so scheduling a job on a
machine occupies a fixed half-open interval there.  This package
bundles the data model, exact solvers, two hardness-reduction gadget
builders with witness converters, seeded generators, serialization and
rendering, and empirical verification harnesses around that problem.
"""
from .core import (
    REJECTED,
    ConflictViolation,
    IneligibleViolation,
    Instance,
    Interval,
    Job,
    ProcessingTable,
    Schedule,
    ValidationReport,
    Variant,
    empty_schedule,
    interval_of,
    intervals_conflict,
    validate_schedule,
)
from .errors import (
    BudgetExceededError,
    ParseError,
    SchedulingError,
    UsageError,
    ValidationError,
    WeightOverflowError,
    WitnessError,
)
from .solvers import (
    DecisionResult,
    OptResult,
    SolveStats,
    solve_all_jobs_decision,
    solve_brute_force,
    solve_frontier_dp,
    solve_single_machine,
)

__version__ = "0.1.0"
