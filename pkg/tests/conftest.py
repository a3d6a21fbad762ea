import random

import pytest

from graphefx import Additive, BudgetAdditive, Instance, MultiGraph, Table, UnitDemand


@pytest.fixture
def b1_instance():
    """Bipartite fixture B1: root a with two right neighbours b, c."""
    g = MultiGraph(3, [(0, 1), (0, 1), (0, 2), (0, 2)])
    return Instance(
        graph=g,
        valuations={
            0: Additive(values={0: 8, 1: 1, 2: 5, 3: 4}),
            1: Additive(values={0: 3, 1: 3}),
            2: Additive(values={2: 6, 3: 1}),
        },
    )


@pytest.fixture
def noncancellable_table():
    return Table(
        entries={
            frozenset(): 0,
            frozenset({0}): 3,
            frozenset({1}): 2,
            frozenset({0, 1}): 3,
            frozenset({2}): 1,
            frozenset({0, 2}): 3,
            frozenset({1, 2}): 5,
            frozenset({0, 1, 2}): 5,
        }
    )


def random_family_valuation(rng: random.Random, kind: str, goods, value_max=20):
    values = {g: rng.randint(0, value_max) for g in goods}
    if kind == "additive":
        return Additive(values=values)
    if kind == "unit_demand":
        return UnitDemand(values=values)
    if kind == "budget_additive":
        return BudgetAdditive(values=values, cap=rng.randint(1, max(1, sum(values.values()))))
    raise ValueError(kind)


def random_instance(rng: random.Random, n_max=4, m_max=6, value_max=10):
    """Small random instance with additive valuations, for oracle-style tests."""
    n = rng.randint(2, n_max)
    m = rng.randint(0, m_max)
    pairs = []
    for _ in range(m):
        u = rng.randrange(n)
        w = rng.randrange(n)
        while w == u:
            w = rng.randrange(n)
        pairs.append((u, w))
    g = MultiGraph(n, pairs)
    vals = {
        u: Additive(
            values={e: rng.randint(0, value_max) for e in g.incident_edges(u)}
        )
        for u in range(n)
    }
    return Instance(graph=g, valuations=vals)


def tamper_trace(inst, trace, family):
    """A copy of ``trace`` with one event edited so ``family`` must fail.

    Returns None when no edit of this trace can demonstrably break the family
    (callers then try another instance).
    """
    import dataclasses

    from graphefx.audit import audit_trace
    from graphefx.trace import StructureResolved

    def fails(candidate):
        applicable, msgs = audit_trace(inst, candidate).results[family]
        return applicable and msgs

    indices = [i for i, ev in enumerate(trace) if isinstance(ev, StructureResolved)]
    for i in indices:
        ev = trace[i]
        if family == "good_movement":
            bad = dataclasses.replace(ev, transfers=((0, ev.root, ev.root),))
            candidate = trace[:i] + [bad] + trace[i + 1:]
            if fails(candidate):
                return candidate
            continue
        holders = sorted(ev.snapshot)
        for holder in holders:
            for g in sorted(ev.snapshot[holder]):
                for target in range(inst.graph.vertex_count):
                    if target == holder:
                        continue
                    snap = {u: set(b) for u, b in ev.snapshot.items()}
                    snap[holder].discard(g)
                    snap.setdefault(target, set()).add(g)
                    bad = dataclasses.replace(
                        ev, snapshot={u: frozenset(b) for u, b in snap.items() if b}
                    )
                    candidate = trace[:i] + [bad] + trace[i + 1:]
                    if fails(candidate):
                        return candidate
    return None


def naive_is_efx(inst, alloc):
    """Independent EFX predicate: plain double loop, no early exits, no sharing."""
    n = inst.graph.vertex_count
    violations = []
    for u in range(n):
        for w in range(n):
            if u == w:
                continue
            own = inst.valuations[u].value(alloc.bundle(u))
            other = alloc.bundle(w)
            if not other:
                continue
            for x in other:
                if own < inst.valuations[u].value(other - {x}):
                    violations.append((u, w, x))
    return len(violations) == 0
