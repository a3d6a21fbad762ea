"""Monotone valuation oracles over incident edges, plus brute-force property checks.

All values are nonnegative integers; arithmetic is exact throughout.  Goods the
valuation knows nothing about contribute zero marginal value and are silently
ignored, which is what lets solvers pass whole bundles around without filtering.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import CapacityError, InputError

MONOTONE_CHECK_MAX = 20
CANCELLABLE_CHECK_MAX = 12


def _check_values(values: dict[int, int]) -> dict[int, int]:
    for eid, v in values.items():
        if not isinstance(v, int) or isinstance(v, bool) or v < 0:
            raise InputError(f"value for edge {eid} must be a nonnegative integer")
    return dict(values)


class Valuation(ABC):
    """A monotone set function over goods (edge ids)."""

    @abstractmethod
    def value(self, bundle: Iterable[int]) -> int:
        """Value of a bundle; non-incident goods contribute nothing."""

    @property
    @abstractmethod
    def support(self) -> frozenset[int]:
        """Edge ids that can carry nonzero marginal value."""


@dataclass(frozen=True)
class Additive(Valuation):
    values: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))

    def value(self, bundle: Iterable[int]) -> int:
        return sum(self.values.get(g, 0) for g in bundle)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)


@dataclass(frozen=True)
class BudgetAdditive(Valuation):
    values: dict[int, int]
    cap: int

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))
        if not isinstance(self.cap, int) or self.cap < 0:
            raise InputError("cap must be a nonnegative integer")

    def value(self, bundle: Iterable[int]) -> int:
        return min(self.cap, sum(self.values.get(g, 0) for g in bundle))

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)


@dataclass(frozen=True)
class UnitDemand(Valuation):
    values: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))

    def value(self, bundle: Iterable[int]) -> int:
        return max((self.values.get(g, 0) for g in bundle), default=0)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.values)


@dataclass(frozen=True)
class Table(Valuation):
    """Explicit monotone set function, given as one entry per subset.

    Entries must cover every subset of the support, include the empty set with
    value 0, and be monotone nondecreasing; all three are validated here so
    downstream code may assume them.
    """

    entries: dict[frozenset[int], int]

    def __post_init__(self):
        entries = {frozenset(k): v for k, v in self.entries.items()}
        support = frozenset().union(*entries) if entries else frozenset()
        goods = sorted(support)
        if len(entries) != 2 ** len(goods):
            raise InputError("table must have one entry per subset of its support")
        for v in entries.values():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError("table values must be nonnegative integers")
        if entries.get(frozenset(), None) != 0:
            raise InputError("table must map the empty set to 0")
        for s, v in entries.items():
            for g in goods:
                if g not in s and entries[s | {g}] < v:
                    raise InputError(
                        f"table is not monotone: adding {g} to {sorted(s)} decreases value"
                    )
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "_support", support)

    def value(self, bundle: Iterable[int]) -> int:
        return self.entries[frozenset(bundle) & self._support]

    @property
    def support(self) -> frozenset[int]:
        return self._support


def _value_table(val: Valuation, goods: list[int]) -> list[int]:
    """Values of every subset of ``goods``, indexed by bitmask."""
    vs = [0] * (1 << len(goods))
    for mask in range(1, 1 << len(goods)):
        vs[mask] = val.value(g for i, g in enumerate(goods) if mask >> i & 1)
    return vs


def _mask_to_set(mask: int, goods: list[int]) -> frozenset[int]:
    return frozenset(g for i, g in enumerate(goods) if mask >> i & 1)


def is_monotone_bruteforce(
    val: Valuation, incident: Iterable[int]
) -> tuple[bool, Optional[tuple[frozenset[int], int]]]:
    """Exhaustive monotonicity check over all (S, g) pairs.

    Returns (True, None) or (False, (S, g)) with the first violation in
    deterministic order: S by ascending bitmask over sorted goods, then g
    ascending.
    """
    goods = sorted(incident)
    if len(goods) > MONOTONE_CHECK_MAX:
        raise CapacityError(f"monotonicity check limited to {MONOTONE_CHECK_MAX} goods")
    vs = _value_table(val, goods)
    for mask in range(1 << len(goods)):
        for i, g in enumerate(goods):
            if mask >> i & 1:
                continue
            if vs[mask | (1 << i)] < vs[mask]:
                return False, (_mask_to_set(mask, goods), g)
    return True, None


def is_cancellable_bruteforce(
    val: Valuation, incident: Iterable[int]
) -> tuple[bool, Optional[tuple[frozenset[int], frozenset[int], int]]]:
    """Exhaustive cancellability check: v(S) >= v(T) implies v(S+g) >= v(T+g).

    Returns (True, None) or (False, (S, T, g)) with the first violation in
    deterministic order: S by ascending bitmask, then T, then g.
    """
    goods = sorted(incident)
    k = len(goods)
    if k > CANCELLABLE_CHECK_MAX:
        raise CapacityError(f"cancellability check limited to {CANCELLABLE_CHECK_MAX} goods")
    vs = _value_table(val, goods)
    if k >= 6 and _cancellable_fast_ok(vs, k):
        return True, None
    for s_mask in range(1 << k):
        vS = vs[s_mask]
        for t_mask in range(1 << k):
            if vS < vs[t_mask]:
                continue
            for i in range(k):
                bit = 1 << i
                if (s_mask | t_mask) & bit:
                    continue
                if vs[s_mask | bit] < vs[t_mask | bit]:
                    return False, (
                        _mask_to_set(s_mask, goods),
                        _mask_to_set(t_mask, goods),
                        goods[i],
                    )
    return True, None


def _cancellable_fast_ok(vs: list[int], k: int) -> bool:
    # Vectorized all-pairs screen; integer dtype keeps arithmetic exact.
    v = np.asarray(vs, dtype=np.int64)
    masks = np.arange(1 << k)
    for i in range(k):
        bit = 1 << i
        free = masks[(masks & bit) == 0]
        base = v[free]
        bumped = v[free | bit]
        holds = (base[:, None] < base[None, :]) | (bumped[:, None] >= bumped[None, :])
        if not bool(holds.all()):
            return False
    return True
