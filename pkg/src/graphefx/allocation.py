"""Allocations, the envy graph, the EFX verifier and envy-cycle machinery."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .errors import InputError, PreconditionError

if TYPE_CHECKING:
    from .solvers import Instance


@dataclass(frozen=True)
class Allocation:
    """A (possibly partial) partition of edges among agents.

    Agents absent from ``bundles`` hold the empty bundle.
    """

    bundles: dict[int, frozenset[int]]

    def __post_init__(self):
        clean = {u: frozenset(b) for u, b in self.bundles.items() if b}
        seen: set[int] = set()
        for u, b in clean.items():
            if seen & b:
                raise InputError(f"bundles are not disjoint at agent {u}")
            seen |= b
        object.__setattr__(self, "bundles", clean)

    def bundle(self, u: int) -> frozenset[int]:
        return self.bundles.get(u, frozenset())

    @property
    def assigned_edges(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for b in self.bundles.values():
            out |= b
        return out

    def is_complete(self, inst: "Instance") -> bool:
        return self.assigned_edges == frozenset(range(inst.graph.edge_count))

    @staticmethod
    def empty() -> "Allocation":
        return Allocation(bundles={})


@dataclass(frozen=True)
class EnvyGraph:
    """Directed envy relation: (u, w) present iff u strictly prefers w's bundle."""

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def out_neighbours(self, u: int) -> list[int]:
        return [w for (a, w) in self.edges if a == u]

    def in_neighbours(self, w: int) -> list[int]:
        return [a for (a, b) in self.edges if b == w]

    def sources(self) -> list[int]:
        envied = {b for (_, b) in self.edges}
        return [v for v in range(self.vertex_count) if v not in envied]


@dataclass(frozen=True)
class EfxVerdict:
    ok: bool
    witness: Optional[tuple[int, int, int]]  # (envier, envied, good whose removal fails)


def validate_allocation(inst: "Instance", alloc: Allocation) -> None:
    m = inst.graph.edge_count
    n = inst.graph.vertex_count
    for u, b in alloc.bundles.items():
        if not (0 <= u < n):
            raise InputError(f"allocation references unknown agent {u}")
        for g in b:
            if not (0 <= g < m):
                raise InputError(f"allocation references unknown edge {g}")


def envy_graph(inst: "Instance", alloc: Allocation) -> EnvyGraph:
    """Exact envy relation, edges in lexicographic order."""
    validate_allocation(inst, alloc)
    n = inst.graph.vertex_count
    edges = []
    for u in range(n):
        own = inst.valuations[u].value(alloc.bundle(u))
        for w in range(n):
            if w != u and own < inst.valuations[u].value(alloc.bundle(w)):
                edges.append((u, w))
    return EnvyGraph(vertex_count=n, edges=tuple(edges))


def is_efx(inst: "Instance", alloc: Allocation) -> EfxVerdict:
    """Exhaustive EFX check; first witness in (envier, envied, good) order."""
    validate_allocation(inst, alloc)
    n = inst.graph.vertex_count
    for u in range(n):
        val = inst.valuations[u]
        own = val.value(alloc.bundle(u))
        for w in range(n):
            if w == u:
                continue
            other = alloc.bundle(w)
            if own >= val.value(other):
                continue
            for x in sorted(other):
                if own < val.value(other - {x}):
                    return EfxVerdict(ok=False, witness=(u, w, x))
    return EfxVerdict(ok=True, witness=None)


def resolve_cycle(alloc: Allocation, cycle: list[int]) -> Allocation:
    """Shift bundles one step along ``cycle``: each agent takes its successor's."""
    if len(cycle) < 2:
        raise InputError("cycle must contain at least 2 agents")
    if len(set(cycle)) != len(cycle):
        raise InputError("cycle must not repeat agents")
    bundles = dict(alloc.bundles)
    shifted = {}
    for i, u in enumerate(cycle):
        succ = cycle[(i + 1) % len(cycle)]
        shifted[u] = alloc.bundle(succ)
    for u, b in shifted.items():
        if b:
            bundles[u] = b
        else:
            bundles.pop(u, None)
    return Allocation(bundles=bundles)


def find_envy_cycle(eg: EnvyGraph) -> Optional[list[int]]:
    """One directed cycle in the envy graph, or None.  Deterministic DFS."""
    color = {}  # 0 visiting, 1 done
    stack_path: list[int] = []

    def dfs(v: int) -> Optional[list[int]]:
        color[v] = 0
        stack_path.append(v)
        for w in sorted(eg.out_neighbours(v)):
            if w not in color:
                found = dfs(w)
                if found is not None:
                    return found
            elif color[w] == 0:
                return stack_path[stack_path.index(w):]
        stack_path.pop()
        color[v] = 1
        return None

    for v in range(eg.vertex_count):
        if v not in color:
            found = dfs(v)
            if found is not None:
                return list(found)
    return None


def find_source_with_path(eg: EnvyGraph, target: int) -> Optional[tuple[int, list[int]]]:
    """A source of the envy graph with a directed path to ``target``.

    Returns None when the target is itself a source.  Deterministic: BFS
    backward from the target, expanding lowest-index predecessors first.
    Raises if the target's ancestry contains a cycle and no source reaches it.
    """
    preds = {v: sorted(eg.in_neighbours(v)) for v in range(eg.vertex_count)}
    if not preds[target]:
        return None
    succ_on_path = {target: None}
    queue = deque([target])
    while queue:
        v = queue.popleft()
        if not preds[v] and v != target:
            path = [v]
            while succ_on_path[path[-1]] is not None:
                path.append(succ_on_path[path[-1]])
            return v, path
        for p in preds[v]:
            if p not in succ_on_path:
                succ_on_path[p] = v
                queue.append(p)
    raise PreconditionError(
        f"no source reaches agent {target}: the envy graph ancestry contains a cycle"
    )
