"""
Modeling deadline-anchored jobs and validating a schedule
=========================================================

Every job must finish exactly at its deadline, so placing it on a
machine fixes its processing interval to (deadline - duration,
deadline].  A schedule is feasible when no machine carries two
overlapping intervals and every job sits on an eligible machine.
"""

from jitsched.core import (
    Instance,
    Job,
    ProcessingTable,
    Schedule,
    Variant,
    interval_of,
    validate_schedule,
)

# Three jobs, two machines.  The third job is eligible only on the
# second machine (None marks an ineligible pair), and durations are
# uniform per job, so this is the eligible-machines variant.
instance = Instance(
    jobs=(Job("press", 4, 10), Job("cut", 5, 7), Job("pack", 6, 3)),
    table=ProcessingTable(2, ((3, 3), (2, 2), (None, 4))),
    variant=Variant.ELIGIBLE,
)

for job in instance.jobs:
    spans = [interval_of(instance, job.id, m) for m in range(2)]
    print(f"{job.id}: weight {job.weight}, intervals {spans}")

# "press" occupies (1,4] and "cut" (3,5]; together on machine 0 they
# overlap.  Splitting them across machines fixes that.
clash = validate_schedule(instance, Schedule({"press": 0, "cut": 0, "pack": 1}))
print("\nboth on machine 0:")
print(clash.describe())

split = validate_schedule(instance, Schedule({"press": 0, "cut": 1, "pack": None}))
print("\nsplit, pack rejected:")
print(split.describe())

# Placing all three is impossible here: "pack" only fits on machine 1,
# where it overlaps "cut".  Rejection is what buys feasibility; the
# validator still totals every assigned weight so the trade is visible.
crowded = validate_schedule(instance, Schedule({"press": 0, "cut": 1, "pack": 1}))
print("\nall three placed:")
print(crowded.describe())
