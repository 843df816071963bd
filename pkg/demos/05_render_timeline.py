"""
Rendering machine timelines as SVG
==================================

Each machine gets a band showing the interval of every job eligible
there; a schedule highlights the placed jobs.  Zero-duration jobs show
as tick marks.  Output is deterministic, so diffs are meaningful.
"""

from pathlib import Path

from jitsched.reductions.clique import (
    KPartiteGraph,
    mcc_to_isem,
    schedule_from_clique,
)
from jitsched.render import render_svg

graph = KPartiteGraph(parts=(("a",), ("b",)), edges=(("a", "b"),))
artifact = mcc_to_isem(graph)
witness = schedule_from_clique(artifact, ("a", "b"))

# All bands stacked, witness highlighted.
svg = render_svg(artifact.instance, witness)
out = Path("gadget-timeline.svg")
out.write_text(svg)
print(f"wrote {out} ({len(svg)} bytes, {artifact.instance.machine_count} bands)")

# A single band, e.g. just the edge-selection machine.
band = render_svg(artifact.instance, witness, machine_filter=0)
Path("gadget-machine0.svg").write_text(band)
print(f"wrote gadget-machine0.svg ({len(band)} bytes)")
