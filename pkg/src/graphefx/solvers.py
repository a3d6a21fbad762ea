"""The three EFX solvers and the class-detecting dispatcher.

All three algorithms are cut-and-choose based.  The bipartite and chromatic
solvers share one structure-resolution core: the chromatic solver is the
bipartite one run phase by phase over the color classes, with the root's prior
bundle travelling to its favourite neighbour in the keep branch.  The tree
solver attaches leaves recursively and repairs envy with cycle resolution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .allocation import (
    Allocation,
    envy_graph,
    find_envy_cycle,
    find_source_with_path,
    resolve_cycle,
)
from .errors import InputError, PreconditionError, UnsupportedClassError, UnsupportedValuationError
from .multigraph import Coloring, MultiGraph
from .oracle import BRUTE_FORCE_MAX, brute_force_efx
from .partition import cac, cut_preferences
from .trace import (
    BRANCH_DIFFERENT,
    BRANCH_SAME_KEEP,
    BRANCH_SAME_LEFTOVERS,
    ColoringUsed,
    CycleResolved,
    LeafAttached,
    StructureResolved,
    TraceEvent,
)
from .valuation import Table, Valuation

DISPATCH_T_MAX = 4
BRUTE_FORCE_AGENT_MAX = 4
BRUTE_FORCE_GOOD_MAX = 8


@dataclass(frozen=True)
class Instance:
    """A fair-division problem: a multi-graph plus one valuation per vertex."""

    graph: MultiGraph
    valuations: dict[int, Valuation]

    def __post_init__(self):
        for u in range(self.graph.vertex_count):
            if u not in self.valuations:
                raise InputError(f"missing valuation for agent {u}")
            extra = self.valuations[u].support - self.graph.incident_edges(u)
            if extra:
                raise InputError(
                    f"valuation of agent {u} supports non-incident edges {sorted(extra)}"
                )


def _require_cancellable_family(inst: Instance, solver: str) -> None:
    for u, val in inst.valuations.items():
        if isinstance(val, Table):
            raise UnsupportedValuationError(
                f"{solver} requires cancellable-family valuations; agent {u} has a table valuation"
            )


def _snapshot(bundles: dict[int, set[int]]) -> dict[int, frozenset[int]]:
    return {u: frozenset(b) for u, b in bundles.items() if b}


def _resolve_structure(
    inst: Instance,
    bundles: dict[int, set[int]],
    u: int,
    right: list[int],
    phase: int,
    trace: list[TraceEvent],
) -> None:
    """Resolve the structure rooted at ``u`` over its right neighbours.

    Mutates ``bundles`` and appends one StructureResolved event.
    """
    v_u = inst.valuations[u]
    right = [w for w in right if inst.graph.parallel_edges(u, w)]
    if not right:
        trace.append(
            StructureResolved(
                phase=phase, root=u, favourite=None, branch=None,
                snapshot=_snapshot(bundles), transfers=(),
            )
        )
        return

    pieces = {}  # w -> (loop, S piece, T piece, same_pref)
    for w in sorted(right):
        loop = inst.graph.parallel_edges(u, w)
        cut, s, t = cut_preferences(inst.valuations[w], v_u, loop)
        pieces[w] = (loop, cut.piece(s), cut.piece(t), s == t)

    fav = max(sorted(pieces), key=lambda w: (v_u.value(pieces[w][1]), -w))
    leftover: set[int] = set()
    for w in sorted(pieces):
        if w == fav:
            continue
        loop, _, t_piece, _ = pieces[w]
        bundles.setdefault(w, set()).update(t_piece)
        leftover |= loop - t_piece

    loop, s_piece, t_piece, same_pref = pieces[fav]
    prior = set(bundles.get(u, set()))
    transfers: tuple[tuple[int, int, int], ...] = ()
    if same_pref:
        rest = prior | (loop - s_piece) | leftover
        if v_u.value(s_piece) > v_u.value(rest):
            branch = BRANCH_SAME_KEEP
            bundles.setdefault(fav, set()).update(rest)
            bundles[u] = set(s_piece)
            transfers = tuple((g, u, fav) for g in sorted(prior))
        else:
            branch = BRANCH_SAME_LEFTOVERS
            bundles.setdefault(u, set()).update((loop - s_piece) | leftover)
            bundles.setdefault(fav, set()).update(s_piece)
    else:
        branch = BRANCH_DIFFERENT
        bundles.setdefault(u, set()).update(s_piece | leftover)
        bundles.setdefault(fav, set()).update(t_piece)

    trace.append(
        StructureResolved(
            phase=phase, root=u, favourite=fav, branch=branch,
            snapshot=_snapshot(bundles), transfers=transfers,
        )
    )


def bipartite_efx(
    inst: Instance, bipart: tuple[frozenset[int], frozenset[int]]
) -> tuple[Allocation, list[TraceEvent]]:
    """EFX allocation on a bipartite multi-graph: every right vertex cuts.

    Roots in L are processed in ascending index order; each right neighbour
    cuts its edge loop, ordinary neighbours keep their preferred piece and the
    favourite loop is settled by who prefers what.
    """
    left, right = frozenset(bipart[0]), frozenset(bipart[1])
    n = inst.graph.vertex_count
    if left | right != frozenset(range(n)) or left & right:
        raise PreconditionError("bipartition must partition the vertex set")
    for eid, (a, b) in enumerate(inst.graph.edges):
        if (a in left) == (b in left):
            raise PreconditionError(f"edge {eid} does not cross the bipartition")
    _require_cancellable_family(inst, "bipartite_efx")

    trace: list[TraceEvent] = [
        ColoringUsed(colors={v: (0 if v in left else 1) for v in range(n)}, t=2)
    ]
    bundles: dict[int, set[int]] = {}
    for u in sorted(left):
        _resolve_structure(inst, bundles, u, sorted(inst.graph.neighbours(u)), 1, trace)
    return Allocation(bundles=_snapshot(bundles)), trace


def chromatic_efx(inst: Instance, col: Coloring) -> tuple[Allocation, list[TraceEvent]]:
    """EFX allocation on a t-chromatic multi-graph with girth >= 2t-1.

    Phase i roots the color-i vertices and pairs them against all strictly
    higher colors; a root that keeps its favourite piece passes its prior
    bundle to the favourite neighbour.
    """
    ok, bad_edge = inst.graph.validate_coloring(col)
    if not ok:
        u, w = inst.graph.endpoints(bad_edge)
        raise PreconditionError(f"coloring is not proper: edge {bad_edge} joins {u} and {w}")
    girth, cycle = inst.graph.shortest_cycle()
    if girth < 2 * col.t - 1:
        raise PreconditionError(
            f"girth {girth:.0f} < 2*{col.t}-1; offending cycle {cycle}"
        )
    _require_cancellable_family(inst, "chromatic_efx")

    trace: list[TraceEvent] = [ColoringUsed(colors=dict(col.colors), t=col.t)]
    bundles: dict[int, set[int]] = {}
    for phase in range(1, col.t):
        roots = sorted(v for v in range(inst.graph.vertex_count) if col.colors[v] == phase - 1)
        for u in roots:
            right = [w for w in inst.graph.neighbours(u) if col.colors[w] > col.colors[u]]
            _resolve_structure(inst, bundles, u, sorted(right), phase, trace)
    return Allocation(bundles=_snapshot(bundles)), trace


def tree_efx(inst: Instance) -> tuple[Allocation, list[TraceEvent]]:
    """EFX allocation on a multi-tree, any monotone valuations.

    Leaves are detached (highest index first), the rest is solved recursively,
    then each leaf is re-attached: its parent cuts the leaf loop, the leaf
    picks, and the complement goes to the parent or to an envy-graph source.
    """
    if not inst.graph.is_multitree():
        raise PreconditionError("tree_efx requires a multi-tree (acyclic skeleton)")

    # Elimination order, computed iteratively to avoid deep recursion.
    degree = {v: set(inst.graph.neighbours(v)) for v in range(inst.graph.vertex_count)}
    order: list[tuple[int, int]] = []  # (leaf, parent)
    active = {v for v in degree if degree[v]}
    while active:
        leaf = max(v for v in active if len(degree[v]) == 1)
        (parent,) = degree[leaf]
        order.append((leaf, parent))
        degree[parent].discard(leaf)
        degree[leaf] = set()
        active = {v for v in active if degree[v]}

    trace: list[TraceEvent] = []
    bundles: dict[int, set[int]] = {}

    def current() -> Allocation:
        return Allocation(bundles=_snapshot(bundles))

    def apply(alloc: Allocation) -> None:
        bundles.clear()
        for v, b in alloc.bundles.items():
            bundles[v] = set(b)

    for leaf, parent in reversed(order):
        eg = envy_graph(inst, current())
        cycle = find_envy_cycle(eg)
        while cycle is not None:
            apply(resolve_cycle(current(), cycle))
            trace.append(CycleResolved(cycle=tuple(cycle), snapshot=_snapshot(bundles)))
            eg = envy_graph(inst, current())
            cycle = find_envy_cycle(eg)

        loop = inst.graph.parallel_edges(leaf, parent)
        cut, s, _ = cut_preferences(inst.valuations[parent], inst.valuations[leaf], loop)
        leaf_piece, rest = cut.piece(s), cut.piece(3 - s)
        bundles.setdefault(leaf, set()).update(leaf_piece)

        source = find_source_with_path(eg, parent)
        if source is None:
            recipient = parent
            bundles.setdefault(parent, set()).update(rest)
            trace.append(
                LeafAttached(leaf=leaf, parent=parent, pieces=(leaf_piece, rest),
                             leftover_to=recipient, snapshot=_snapshot(bundles))
            )
        else:
            s_vertex, path = source
            recipient = s_vertex
            bundles.setdefault(s_vertex, set()).update(rest)
            trace.append(
                LeafAttached(leaf=leaf, parent=parent, pieces=(leaf_piece, rest),
                             leftover_to=recipient, snapshot=_snapshot(bundles))
            )
            v_p = inst.valuations[parent]
            if v_p.value(bundles.get(parent, set())) < v_p.value(bundles.get(s_vertex, set())):
                cyc = [parent] + path[:-1]  # parent envies the source; close the loop
                apply(resolve_cycle(current(), cyc))
                trace.append(CycleResolved(cycle=tuple(cyc), snapshot=_snapshot(bundles)))

    return current(), trace


def _sub_instance(inst: Instance, comp: list[int]) -> tuple[Instance, dict[int, int], dict[int, int]]:
    """Restrict ``inst`` to a component.  Returns (sub, vertex_back, edge_back)."""
    v_fwd = {v: i for i, v in enumerate(comp)}
    v_back = {i: v for v, i in v_fwd.items()}
    edge_ids = [eid for eid, (a, b) in enumerate(inst.graph.edges) if a in v_fwd]
    e_fwd = {eid: i for i, eid in enumerate(edge_ids)}
    e_back = {i: eid for eid, i in e_fwd.items()}
    pairs = [(v_fwd[inst.graph.edges[eid][0]], v_fwd[inst.graph.edges[eid][1]]) for eid in edge_ids]
    graph = MultiGraph(len(comp), pairs)
    vals = {v_fwd[v]: _remap_valuation(inst.valuations[v], e_fwd) for v in comp}
    return Instance(graph=graph, valuations=vals), v_back, e_back


def _remap_valuation(val: Valuation, e_fwd: dict[int, int]) -> Valuation:
    from .valuation import Additive, BudgetAdditive, Table, UnitDemand

    if isinstance(val, Additive):
        return Additive(values={e_fwd[g]: v for g, v in val.values.items()})
    if isinstance(val, UnitDemand):
        return UnitDemand(values={e_fwd[g]: v for g, v in val.values.items()})
    if isinstance(val, BudgetAdditive):
        return BudgetAdditive(values={e_fwd[g]: v for g, v in val.values.items()}, cap=val.cap)
    if isinstance(val, Table):
        return Table(entries={frozenset(e_fwd[g] for g in s): v for s, v in val.entries.items()})
    raise InputError(f"cannot remap valuation {val!r}")


def _remap_event(ev: TraceEvent, v_back: dict[int, int], e_back: dict[int, int]) -> TraceEvent:
    def snap(s):
        return {v_back[u]: frozenset(e_back[g] for g in b) for u, b in s.items()}

    if isinstance(ev, ColoringUsed):
        return ColoringUsed(colors={v_back[v]: c for v, c in ev.colors.items()}, t=ev.t)
    if isinstance(ev, StructureResolved):
        return StructureResolved(
            phase=ev.phase, root=v_back[ev.root],
            favourite=None if ev.favourite is None else v_back[ev.favourite],
            branch=ev.branch, snapshot=snap(ev.snapshot),
            transfers=tuple((e_back[g], v_back[a], v_back[b]) for g, a, b in ev.transfers),
        )
    if isinstance(ev, LeafAttached):
        return LeafAttached(
            leaf=v_back[ev.leaf], parent=v_back[ev.parent],
            pieces=(frozenset(e_back[g] for g in ev.pieces[0]),
                    frozenset(e_back[g] for g in ev.pieces[1])),
            leftover_to=v_back[ev.leftover_to], snapshot=snap(ev.snapshot),
        )
    if isinstance(ev, CycleResolved):
        return CycleResolved(cycle=tuple(v_back[v] for v in ev.cycle), snapshot=snap(ev.snapshot))
    raise InputError(f"unknown trace event {ev!r}")


def _compact_coloring(col: Coloring, comp: list[int], v_fwd: dict[int, int]) -> Coloring:
    used = sorted({col.colors[v] for v in comp})
    relabel = {c: i for i, c in enumerate(used)}
    return Coloring(colors={v_fwd[v]: relabel[col.colors[v]] for v in comp}, t=len(used))


def _dispatch_connected(
    inst: Instance, hint: Coloring | None
) -> tuple[Allocation, str, list[TraceEvent]]:
    g = inst.graph
    failures = []

    if g.is_multitree():
        alloc, trace = tree_efx(inst)
        return alloc, "tree", trace
    failures.append("not a multi-tree")

    bipart = g.bipartition()
    if bipart is not None and not any(isinstance(v, Table) for v in inst.valuations.values()):
        alloc, trace = bipartite_efx(inst, bipart)
        return alloc, "bipartite", trace
    failures.append("not bipartite (or table valuations present)")

    col = hint if hint is not None else g.find_coloring(DISPATCH_T_MAX)
    if col is not None and not any(isinstance(v, Table) for v in inst.valuations.values()):
        ok, _ = g.validate_coloring(col)
        if ok and g.girth() >= 2 * col.t - 1:
            alloc, trace = chromatic_efx(inst, col)
            return alloc, "chromatic", trace
    failures.append(f"no proper coloring with t <= {DISPATCH_T_MAX} and girth >= 2t-1")

    n, m = g.vertex_count, g.edge_count
    if n <= BRUTE_FORCE_AGENT_MAX and m <= BRUTE_FORCE_GOOD_MAX and n ** m <= BRUTE_FORCE_MAX:
        report = brute_force_efx(inst)
        if report.sample is not None:
            return report.sample, "brute_force", []
        failures.append("exhaustive search found no EFX allocation")
    else:
        failures.append(
            f"too large for brute force (needs <= {BRUTE_FORCE_AGENT_MAX} agents,"
            f" <= {BRUTE_FORCE_GOOD_MAX} goods)"
        )
    raise UnsupportedClassError("no solver applies: " + "; ".join(failures))


def solve(
    inst: Instance, hint: Coloring | None = None
) -> tuple[Allocation, str, list[TraceEvent]]:
    """Dispatch to the best applicable solver; disconnected inputs go component-wise.

    Order: multi-tree, bipartite, girth-qualified coloring (hint or exact
    search up to t=4), then exhaustive search for tiny instances.
    """
    comps = inst.graph.connected_components()
    if len(comps) <= 1:
        return _dispatch_connected(inst, hint)

    bundles: dict[int, frozenset[int]] = {}
    trace: list[TraceEvent] = []
    methods: list[str] = []
    for comp in comps:
        sub, v_back, e_back = _sub_instance(inst, comp)
        v_fwd = {v: i for i, v in v_back.items()}
        sub_hint = None
        if hint is not None:
            sub_hint = _compact_coloring(hint, comp, v_fwd)
        alloc, method, sub_trace = _dispatch_connected(sub, sub_hint)
        for u, b in alloc.bundles.items():
            bundles[v_back[u]] = frozenset(e_back[g] for g in b)
        trace.extend(_remap_event(ev, v_back, e_back) for ev in sub_trace)
        methods.append(method)
    method = methods[0] if len(set(methods)) == 1 else "componentwise(" + ",".join(methods) + ")"
    return Allocation(bundles=bundles), method, trace
