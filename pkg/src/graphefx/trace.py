"""Per-iteration solver trace events, used for step-by-step invariant auditing.

Traces serialize to JSON-lines, one event per line; bundles are written as
sorted edge-id lists so files are byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import InputError


@dataclass(frozen=True)
class ColoringUsed:
    """First event of a phase-based run: the vertex coloring driving the phases."""

    colors: dict[int, int]
    t: int


@dataclass(frozen=True)
class StructureResolved:
    """One root's star of right-neighbour edge loops was fully assigned.

    ``snapshot`` is the complete partial allocation after the iteration;
    ``transfers`` lists goods that moved from an existing bundle, as
    (good, from_agent, to_agent).  ``favourite`` is None for a root with no
    unallocated right-neighbour edges.
    """

    phase: int
    root: int
    favourite: Optional[int]
    branch: Optional[str]  # same_bundle_keep | same_bundle_leftovers | different_bundles
    snapshot: dict[int, frozenset[int]]
    transfers: tuple[tuple[int, int, int], ...]


@dataclass(frozen=True)
class LeafAttached:
    """Tree solver: a leaf took its piece of the leaf-parent edge loop."""

    leaf: int
    parent: int
    pieces: tuple[frozenset[int], frozenset[int]]  # (leaf's piece, complement)
    leftover_to: int
    snapshot: dict[int, frozenset[int]]


@dataclass(frozen=True)
class CycleResolved:
    """Bundles were shifted one step along a directed envy cycle."""

    cycle: tuple[int, ...]
    snapshot: dict[int, frozenset[int]]


TraceEvent = Union[ColoringUsed, StructureResolved, LeafAttached, CycleResolved]

BRANCH_SAME_KEEP = "same_bundle_keep"
BRANCH_SAME_LEFTOVERS = "same_bundle_leftovers"
BRANCH_DIFFERENT = "different_bundles"


def _snapshot_to_json(snapshot: dict[int, frozenset[int]]) -> dict[str, list[int]]:
    return {str(u): sorted(b) for u, b in sorted(snapshot.items()) if b}


def _snapshot_from_json(obj: dict) -> dict[int, frozenset[int]]:
    return {int(u): frozenset(b) for u, b in obj.items()}


def event_to_json(ev: TraceEvent) -> dict:
    if isinstance(ev, ColoringUsed):
        return {
            "type": "coloring_used",
            "colors": {str(v): c for v, c in sorted(ev.colors.items())},
            "t": ev.t,
        }
    if isinstance(ev, StructureResolved):
        return {
            "type": "structure_resolved",
            "phase": ev.phase,
            "root": ev.root,
            "favourite": ev.favourite,
            "branch": ev.branch,
            "snapshot": _snapshot_to_json(ev.snapshot),
            "transfers": [list(t) for t in ev.transfers],
        }
    if isinstance(ev, LeafAttached):
        return {
            "type": "leaf_attached",
            "leaf": ev.leaf,
            "parent": ev.parent,
            "pieces": [sorted(ev.pieces[0]), sorted(ev.pieces[1])],
            "leftover_to": ev.leftover_to,
            "snapshot": _snapshot_to_json(ev.snapshot),
        }
    if isinstance(ev, CycleResolved):
        return {
            "type": "cycle_resolved",
            "cycle": list(ev.cycle),
            "snapshot": _snapshot_to_json(ev.snapshot),
        }
    raise InputError(f"unknown trace event {ev!r}")


def event_from_json(obj: dict) -> TraceEvent:
    kind = obj.get("type")
    if kind == "coloring_used":
        return ColoringUsed(colors={int(v): c for v, c in obj["colors"].items()}, t=obj["t"])
    if kind == "structure_resolved":
        return StructureResolved(
            phase=obj["phase"],
            root=obj["root"],
            favourite=obj["favourite"],
            branch=obj["branch"],
            snapshot=_snapshot_from_json(obj["snapshot"]),
            transfers=tuple((g, a, b) for g, a, b in obj["transfers"]),
        )
    if kind == "leaf_attached":
        return LeafAttached(
            leaf=obj["leaf"],
            parent=obj["parent"],
            pieces=(frozenset(obj["pieces"][0]), frozenset(obj["pieces"][1])),
            leftover_to=obj["leftover_to"],
            snapshot=_snapshot_from_json(obj["snapshot"]),
        )
    if kind == "cycle_resolved":
        return CycleResolved(cycle=tuple(obj["cycle"]), snapshot=_snapshot_from_json(obj["snapshot"]))
    raise InputError(f"unknown trace event type {kind!r}")
