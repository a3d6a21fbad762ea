import itertools
import random

import pytest

from graphefx import (
    Additive,
    BudgetAdditive,
    CapacityError,
    InputError,
    Table,
    UnitDemand,
    is_cancellable_bruteforce,
    is_monotone_bruteforce,
)

from .conftest import random_family_valuation


def test_value_ignores_non_incident():
    val = Additive(values={0: 3, 1: 4})
    assert val.value({0, 1, 9}) == 7


def test_budget_additive_cap_binds():
    val = BudgetAdditive(values={0: 6, 1: 7}, cap=10)
    assert val.value({0, 1}) == 10
    assert val.value({0}) == 6


def test_unit_demand_max():
    val = UnitDemand(values={0: 2, 1: 5})
    assert val.value({0, 1}) == 5
    assert val.value(set()) == 0


def test_negative_values_rejected():
    with pytest.raises(InputError):
        Additive(values={0: -1})
    with pytest.raises(InputError):
        BudgetAdditive(values={0: 1}, cap=-2)


def test_table_validation():
    with pytest.raises(InputError):
        Table(entries={frozenset(): 0, frozenset({0}): 1, frozenset({1}): 1})
    with pytest.raises(InputError):
        Table(entries={frozenset(): 1, frozenset({0}): 2})
    with pytest.raises(InputError):
        Table(entries={frozenset(): 0, frozenset({0}): 2, frozenset({1}): 0,
                       frozenset({0, 1}): 1})


def test_monotone_bruteforce_additive_and_table(noncancellable_table):
    ok, witness = is_monotone_bruteforce(Additive(values={0: 1, 1: 2}), {0, 1})
    assert ok and witness is None
    ok, witness = is_monotone_bruteforce(noncancellable_table, {0, 1, 2})
    assert ok and witness is None


def test_monotone_bruteforce_capacity():
    with pytest.raises(CapacityError):
        is_monotone_bruteforce(Additive(values={}), range(21))


def test_cancellable_additive_and_unit_demand():
    ok, _ = is_cancellable_bruteforce(Additive(values={0: 1, 1: 9, 2: 4}), {0, 1, 2})
    assert ok
    ok, _ = is_cancellable_bruteforce(UnitDemand(values={0: 2, 1: 5, 2: 9}), {0, 1, 2})
    assert ok


def test_cancellable_table_witness(noncancellable_table):
    # 3 = v({0}) >= v({1}) = 2 but v({0,2}) = 3 < 5 = v({1,2})
    ok, witness = is_cancellable_bruteforce(noncancellable_table, {0, 1, 2})
    assert not ok
    assert witness == (frozenset({0}), frozenset({1}), 2)


def test_cancellable_capacity():
    with pytest.raises(CapacityError):
        is_cancellable_bruteforce(Additive(values={}), range(13))


def _naive_cancellable(val, goods):
    # independent triple loop over explicit subsets
    for r1 in range(len(goods) + 1):
        for s in itertools.combinations(goods, r1):
            S = frozenset(s)
            for r2 in range(len(goods) + 1):
                for t in itertools.combinations(goods, r2):
                    T = frozenset(t)
                    if val.value(S) < val.value(T):
                        continue
                    for g in goods:
                        if g in S or g in T:
                            continue
                        if val.value(S | {g}) < val.value(T | {g}):
                            return False
    return True


def test_cancellable_agrees_with_naive_reimplementation():
    rng = random.Random(7)
    goods = list(range(5))
    for _ in range(40):
        kind = rng.choice(["additive", "unit_demand", "budget_additive"])
        val = random_family_valuation(rng, kind, goods, value_max=6)
        ok, _ = is_cancellable_bruteforce(val, goods)
        assert ok == _naive_cancellable(val, goods)


def test_cancellable_fast_screen_matches_slow_path(noncancellable_table):
    # k >= 6 triggers the vectorized screen; cancellable families must pass it
    rng = random.Random(9)
    goods = list(range(6))
    for kind in ("additive", "unit_demand", "budget_additive"):
        for _ in range(10):
            val = random_family_valuation(rng, kind, goods, value_max=9)
            ok, witness = is_cancellable_bruteforce(val, goods)
            assert ok and witness is None


def test_union_property_for_cancellable_families():
    # v(S1)>=v(T1) and v(S2)>=v(T2) on disjoint pairs imply the union inequality
    rng = random.Random(31)
    goods = list(range(5))
    for kind in ("additive", "unit_demand", "budget_additive"):
        val = random_family_valuation(rng, kind, goods, value_max=8)
        masks = range(1 << len(goods))
        values = [val.value(g for i, g in enumerate(goods) if m >> i & 1) for m in masks]
        union = [
            val.value(g for i, g in enumerate(goods) if (a | b) >> i & 1)
            for a in masks for b in masks
        ]
        k = 1 << len(goods)
        for m1 in masks:
            for m2 in masks:
                if m1 & m2:
                    continue
                for t1 in masks:
                    if values[m1] < values[t1]:
                        continue
                    for t2 in masks:
                        if t1 & t2 or values[m2] < values[t2]:
                            continue
                        assert union[m1 * k + m2] >= union[t1 * k + t2]


def test_value_restricted_to_support():
    rng = random.Random(13)
    for kind in ("additive", "unit_demand", "budget_additive"):
        val = random_family_valuation(rng, kind, [2, 5, 7])
        for extra in ({}, {0}, {0, 1, 3}):
            bundle = {2, 7} | set(extra)
            assert val.value(bundle) == val.value(bundle & val.support)
