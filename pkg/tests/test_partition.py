import random

import pytest

from graphefx import Additive, CapacityError, Table, cac, cut_and_choose
from graphefx.partition import _is_efx_pair

from .conftest import random_family_valuation


def test_cac_greedy_example():
    val = Additive(values={0: 5, 1: 4, 2: 3, 3: 2, 4: 1})
    cut = cac(val, {0, 1, 2, 3, 4})
    assert cut.piece1 == {0, 3, 4}
    assert cut.piece2 == {1, 2}
    assert val.value(cut.piece1) == 8 and val.value(cut.piece2) == 7
    assert cut.cutter_pref == 1 and not cut.cutter_indifferent


def test_cac_singleton_and_empty():
    val = Additive(values={0: 3})
    cut = cac(val, {0})
    assert (cut.piece1, cut.piece2) == (frozenset({0}), frozenset())
    cut = cac(val, set())
    assert (cut.piece1, cut.piece2) == (frozenset(), frozenset())
    assert cut.cutter_indifferent


def test_cac_table_exhaustive(noncancellable_table):
    cut = cac(noncancellable_table, {0, 1, 2})
    assert cut.piece1 | cut.piece2 == {0, 1, 2}
    assert not (cut.piece1 & cut.piece2)
    assert _is_efx_pair(noncancellable_table, cut.piece1, cut.piece2)


def test_cac_table_capacity():
    big = Table(entries={frozenset(): 0, frozenset({0}): 1})
    with pytest.raises(CapacityError):
        cac(big, range(17))


def test_cut_and_choose_indifferent_cutter():
    cutter = Additive(values={0: 3, 1: 3})
    chooser = Additive(values={0: 8, 1: 1})
    chooser_piece, cutter_piece, same = cut_and_choose(cutter, chooser, {0, 1})
    assert chooser_piece == {0} and cutter_piece == {1}
    assert not same


def test_cut_and_choose_aligned_preferences():
    val = Additive(values={0: 6, 1: 1})
    chooser_piece, cutter_piece, same = cut_and_choose(val, val, {0, 1})
    assert chooser_piece == {0} and cutter_piece == {1}
    assert same


def test_cut_and_choose_empty():
    val = Additive(values={})
    chooser_piece, cutter_piece, same = cut_and_choose(val, val, set())
    assert chooser_piece == frozenset() and cutter_piece == frozenset()
    assert not same  # double indifference splits the (index-distinct) pieces


def test_cac_pieces_efx_feasible_vs_exhaustive():
    # greedy output must sit inside the nonempty exhaustive EFX-bipartition set
    rng = random.Random(101)
    for _ in range(200):
        kind = rng.choice(["additive", "unit_demand", "budget_additive"])
        goods = rng.sample(range(20), rng.randint(0, 8))
        val = random_family_valuation(rng, kind, goods)
        cut = cac(val, goods)
        assert cut.piece1 | cut.piece2 == frozenset(goods)
        assert not (cut.piece1 & cut.piece2)
        efx_pairs = []
        for mask in range(1 << len(goods)):
            p1 = frozenset(g for i, g in enumerate(goods) if mask >> i & 1)
            p2 = frozenset(goods) - p1
            if _is_efx_pair(val, p1, p2):
                efx_pairs.append((p1, p2))
        assert efx_pairs
        assert (cut.piece1, cut.piece2) in efx_pairs or (cut.piece2, cut.piece1) in efx_pairs


def test_cut_and_choose_chooser_ef_cutter_efx():
    rng = random.Random(41)
    for _ in range(300):
        goods = rng.sample(range(16), rng.randint(0, 6))
        cutter = random_family_valuation(rng, rng.choice(["additive", "unit_demand", "budget_additive"]), goods)
        chooser = random_family_valuation(rng, rng.choice(["additive", "unit_demand", "budget_additive"]), goods)
        cp, kp, _ = cut_and_choose(cutter, chooser, goods)
        assert chooser.value(cp) >= chooser.value(kp)
        for x in cp:
            assert cutter.value(kp) >= cutter.value(cp - {x})


def test_determinism():
    rng = random.Random(77)
    for _ in range(50):
        goods = rng.sample(range(12), rng.randint(1, 8))
        val = random_family_valuation(rng, "additive", goods)
        first = cac(val, goods)
        assert cac(val, set(goods)) == first
