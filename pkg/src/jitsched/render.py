"""Deterministic SVG timeline rendering.

One horizontal band per machine, stacked top to bottom in machine order.
Within a band every job eligible on that machine appears as a labeled
segment over a shared integer time axis; overlapping segments are packed
onto separate rows greedily in job input order.  Zero-duration intervals
render as vertical tick marks.  With a schedule, segments scheduled on
their band's machine are drawn bold and the rest stay thin and gray;
without one, everything is thin and gray.

The output is pure SVG 1.1 text with no timestamps and no randomness,
so renders of equal inputs are byte-identical.
"""
from __future__ import annotations

from typing import Iterable, Optional, Sequence, Union
from xml.sax.saxutils import escape

from .core import Instance, Schedule
from .errors import UsageError

_LABEL_W = 110     # left gutter for machine labels
_RIGHT_PAD = 30
_TOP_PAD = 10
_ROW_H = 16
_BAND_PAD = 8
_AXIS_H = 40
_MIN_PX = 8        # horizontal pixels per time unit, clamped
_MAX_PX = 60
_TARGET_W = 840

_STYLE = """\
  <style>
    text { font-family: monospace; font-size: 10px; fill: #333333; }
    .band-label { font-size: 11px; }
    .axis { stroke: #333333; stroke-width: 1; }
    .sched { fill: #2b6cb0; stroke: #1a4971; stroke-width: 1; }
    .idle { fill: #eeeeee; stroke: #999999; stroke-width: 1; }
    .sched-tick { stroke: #2b6cb0; stroke-width: 3; }
    .idle-tick { stroke: #999999; stroke-width: 3; }
  </style>"""


def _tick_step(span: int) -> int:
    """Smallest step from {1,2,5} * 10^e giving at most 20 axis ticks."""
    for exponent in range(19):
        for mult in (1, 2, 5):
            step = mult * 10**exponent
            if span // step <= 20:
                return step
    return span  # unreachable for int64 spans


def _selected_machines(
    instance: Instance, machine_filter: Union[int, Iterable[int], None]
) -> tuple[int, ...]:
    if machine_filter is None:
        return tuple(range(instance.machine_count))
    if isinstance(machine_filter, int):
        machine_filter = (machine_filter,)
    selected = []
    for machine in machine_filter:
        if type(machine) is not int or not 0 <= machine < instance.machine_count:
            raise UsageError(
                f"machine filter {machine!r} is not a machine index in"
                f" 0..{instance.machine_count - 1}"
            )
        selected.append(machine)
    return tuple(sorted(set(selected)))


def render_svg(
    instance: Instance,
    schedule: Optional[Schedule] = None,
    machine_filter: Union[int, Sequence[int], None] = None,
) -> str:
    machines = _selected_machines(instance, machine_filter)
    if schedule is not None:
        unknown = sorted(set(schedule.assignment) - set(instance.job_index))
        if unknown:
            raise UsageError(f"schedule names unknown job {unknown[0]!r}")

    # Shared time range across all bands; always at least one unit wide.
    t_min, t_max = 0, 1
    for k, job in enumerate(instance.jobs):
        for p in instance.table.rows[k]:
            if p is not None:
                t_min = min(t_min, job.deadline - p)
                t_max = max(t_max, job.deadline)
    span = t_max - t_min
    px = max(_MIN_PX, min(_MAX_PX, _TARGET_W // span))

    def x_of(t: int) -> int:
        return _LABEL_W + (t - t_min) * px

    width = x_of(t_max) + _RIGHT_PAD
    body: list[str] = []
    y = _TOP_PAD

    for machine in machines:
        # (job index, start, end, scheduled-here) for jobs eligible here.
        items = []
        for k, job in enumerate(instance.jobs):
            p = instance.table.rows[k][machine]
            if p is None:
                continue
            here = schedule is not None and schedule.assignment.get(job.id) == machine
            items.append((k, job.deadline - p, job.deadline, here))

        # Greedy row packing in input order: first row that is free.
        row_end: list[int] = []
        row_of: list[int] = []
        for _, start, end, _ in items:
            for r, last in enumerate(row_end):
                if last <= start:
                    row_of.append(r)
                    row_end[r] = end
                    break
            else:
                row_of.append(len(row_end))
                row_end.append(end)
        rows = max(1, len(row_end))

        band_h = _BAND_PAD + rows * _ROW_H + _BAND_PAD
        body.append(
            f'  <text class="band-label" x="6" y="{y + _BAND_PAD + 11}">'
            f"machine {machine}</text>"
        )
        for (k, start, end, here), r in zip(items, row_of):
            label = escape(instance.jobs[k].id)
            top = y + _BAND_PAD + r * _ROW_H
            if start == end:
                cls = "sched-tick" if here else "idle-tick"
                body.append(
                    f'  <line class="{cls}" x1="{x_of(end)}" y1="{top + 1}"'
                    f' x2="{x_of(end)}" y2="{top + _ROW_H - 3}" />'
                )
                body.append(f'  <text x="{x_of(end) + 4}" y="{top + 11}">{label}</text>')
            else:
                cls = "sched" if here else "idle"
                body.append(
                    f'  <rect class="{cls}" x="{x_of(start)}" y="{top + 1}"'
                    f' width="{(end - start) * px}" height="{_ROW_H - 4}" />'
                )
                body.append(
                    f'  <text x="{x_of(start) + 3}" y="{top + 11}">{label}</text>'
                )
        y += band_h

    # Time axis along the bottom.
    axis_y = y + 8
    body.append(
        f'  <line class="axis" x1="{x_of(t_min)}" y1="{axis_y}"'
        f' x2="{x_of(t_max)}" y2="{axis_y}" />'
    )
    step = _tick_step(span)
    first = t_min if t_min % step == 0 else t_min + (step - t_min % step) % step
    t = first
    while t <= t_max:
        body.append(
            f'  <line class="axis" x1="{x_of(t)}" y1="{axis_y}"'
            f' x2="{x_of(t)}" y2="{axis_y + 5}" />'
        )
        body.append(f'  <text x="{x_of(t) - 3}" y="{axis_y + 18}">{t}</text>')
        t += step
    height = axis_y + _AXIS_H - 8

    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1"'
        f' width="{width}" height="{height}"'
        f' viewBox="0 0 {width} {height}">'
    )
    return "\n".join([head, _STYLE, *body, "</svg>"]) + "\n"
