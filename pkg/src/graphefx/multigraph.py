"""Multi-graph with the structural queries the solvers' preconditions need.

Agents are vertices 0..n-1, goods are edges 0..m-1.  Parallel edges are
first-class; girth, bipartiteness, tree tests and colorings all operate on the
simple skeleton (parallel multiplicity never matters for them).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError

INFINITE_GIRTH = math.inf


@dataclass(frozen=True)
class Coloring:
    """Vertex -> color map using colors 0..t-1.  Properness is not implied."""

    colors: dict[int, int]
    t: int


class MultiGraph:
    """Immutable multi-graph.  Edge ids are dense: edge i is ``edges[i]``.

    Self-loops are rejected: every good must have two distinct endpoint agents.
    """

    def __init__(self, vertex_count: int, edges: list[tuple[int, int]]):
        if vertex_count < 0:
            raise InputError("vertex_count must be nonnegative")
        self.vertex_count = vertex_count
        pairs = []
        for eid, (u, w) in enumerate(edges):
            if not (0 <= u < vertex_count) or not (0 <= w < vertex_count):
                raise InputError(f"edge {eid} has endpoint outside 0..{vertex_count - 1}")
            if u == w:
                raise InputError(f"edge {eid} is a self-loop at vertex {u}")
            pairs.append((min(u, w), max(u, w)))
        self.edges: tuple[tuple[int, int], ...] = tuple(pairs)
        self._by_pair: dict[tuple[int, int], frozenset[int]] = {}
        by_pair: dict[tuple[int, int], set[int]] = {}
        incident: list[set[int]] = [set() for _ in range(vertex_count)]
        adj: list[set[int]] = [set() for _ in range(vertex_count)]
        for eid, (u, w) in enumerate(self.edges):
            by_pair.setdefault((u, w), set()).add(eid)
            incident[u].add(eid)
            incident[w].add(eid)
            adj[u].add(w)
            adj[w].add(u)
        self._by_pair = {p: frozenset(s) for p, s in by_pair.items()}
        self._incident = tuple(frozenset(s) for s in incident)
        self._adj = tuple(frozenset(s) for s in adj)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def _check_vertex(self, u: int) -> None:
        if not (0 <= u < self.vertex_count):
            raise InputError(f"invalid vertex index {u}")

    def endpoints(self, eid: int) -> tuple[int, int]:
        if not (0 <= eid < len(self.edges)):
            raise InputError(f"unknown edge id {eid}")
        return self.edges[eid]

    def parallel_edges(self, u: int, w: int) -> frozenset[int]:
        """All edge ids with endpoint pair {u, w}; symmetric in (u, w)."""
        self._check_vertex(u)
        self._check_vertex(w)
        return self._by_pair.get((min(u, w), max(u, w)), frozenset())

    def neighbours(self, u: int) -> frozenset[int]:
        self._check_vertex(u)
        return self._adj[u]

    def incident_edges(self, u: int) -> frozenset[int]:
        self._check_vertex(u)
        return self._incident[u]

    def bipartition(self) -> Optional[tuple[frozenset[int], frozenset[int]]]:
        """Proper 2-coloring of the skeleton, or None.

        The lowest-indexed vertex of each connected component goes to L.
        """
        side = [-1] * self.vertex_count
        for start in range(self.vertex_count):
            if side[start] != -1:
                continue
            side[start] = 0
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in sorted(self._adj[x]):
                    if side[y] == -1:
                        side[y] = 1 - side[x]
                        queue.append(y)
                    elif side[y] == side[x]:
                        return None
        left = frozenset(v for v in range(self.vertex_count) if side[v] == 0)
        right = frozenset(v for v in range(self.vertex_count) if side[v] == 1)
        return left, right

    def is_multitree(self) -> bool:
        """True iff the simple skeleton is a forest."""
        return self.girth() == INFINITE_GIRTH

    def girth(self) -> float:
        """Length of the shortest skeleton cycle; math.inf on a forest."""
        length, _ = self.shortest_cycle()
        return length

    def shortest_cycle(self) -> tuple[float, Optional[list[int]]]:
        """(girth, one shortest cycle as a vertex list), (inf, None) on forests.

        BFS from every vertex on the skeleton; non-tree edges close candidate
        cycles and the overall minimum is exact.
        """
        best = INFINITE_GIRTH
        best_cycle: Optional[list[int]] = None
        for start in range(self.vertex_count):
            dist = {start: 0}
            parent = {start: -1}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in sorted(self._adj[x]):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        parent[y] = x
                        queue.append(y)
                    elif parent[x] != y:
                        cand = dist[x] + dist[y] + 1
                        if cand < best:
                            path_x = self._path_to_root(x, parent)
                            path_y = self._path_to_root(y, parent)
                            cycle = self._merge_cycle(path_x, path_y)
                            if cycle is not None and len(cycle) < best:
                                best = len(cycle)
                                best_cycle = cycle
        return best, best_cycle

    @staticmethod
    def _path_to_root(x: int, parent: dict[int, int]) -> list[int]:
        path = [x]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        return path

    @staticmethod
    def _merge_cycle(path_x: list[int], path_y: list[int]) -> Optional[list[int]]:
        # Drop the shared tail (towards the BFS root); the closed walk is a
        # simple cycle only when the paths meet nowhere but that tail.
        while len(path_x) > 1 and len(path_y) > 1 and path_x[-2] == path_y[-2]:
            path_x = path_x[:-1]
            path_y = path_y[:-1]
        cycle = path_x[:-1] + list(reversed(path_y))
        if len(set(cycle)) != len(cycle):
            return None
        return cycle

    def validate_coloring(self, col: Coloring) -> tuple[bool, Optional[int]]:
        """(True, None) if proper, else (False, lowest violating edge id)."""
        for v in range(self.vertex_count):
            if v not in col.colors:
                raise InputError(f"coloring is missing vertex {v}")
            if not (0 <= col.colors[v] < col.t):
                raise InputError(f"vertex {v} has color outside 0..{col.t - 1}")
        for eid, (u, w) in enumerate(self.edges):
            if col.colors[u] == col.colors[w]:
                return False, eid
        return True, None

    def find_coloring(self, t_max: int) -> Optional[Coloring]:
        """Smallest proper coloring with at most t_max colors, by exact search.

        Deterministic: vertices in index order, colors in ascending order.
        Intended for desk-scale graphs (n <= 20 or so).
        """
        if t_max < 1:
            raise InputError("t_max must be at least 1")
        for t in range(1, t_max + 1):
            colors = self._try_color(t)
            if colors is not None:
                return Coloring(colors=colors, t=t)
        return None

    def _try_color(self, t: int) -> Optional[dict[int, int]]:
        colors: dict[int, int] = {}

        def backtrack(v: int) -> bool:
            if v == self.vertex_count:
                return True
            used = max(colors.values(), default=-1)
            for c in range(min(t, used + 2)):  # new colors in ascending order
                if all(colors.get(w) != c for w in self._adj[v]):
                    colors[v] = c
                    if backtrack(v + 1):
                        return True
                    del colors[v]
            return False

        if backtrack(0):
            return dict(colors)
        return None

    def connected_components(self) -> list[list[int]]:
        """Skeleton components as sorted vertex lists, ordered by minimum vertex."""
        seen = [False] * self.vertex_count
        comps = []
        for start in range(self.vertex_count):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self._adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.append(y)
                        queue.append(y)
            comps.append(sorted(comp))
        return comps

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.vertex_count}, m={len(self.edges)})"
