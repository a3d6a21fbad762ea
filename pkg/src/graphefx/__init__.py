"""EFX allocation toolkit for fair division on multi-graphs."""

from .allocation import Allocation, EfxVerdict, EnvyGraph, envy_graph, is_efx, resolve_cycle
from .errors import (
    CapacityError,
    GraphEfxError,
    InputError,
    PreconditionError,
    UnsupportedClassError,
    UnsupportedValuationError,
)
from .multigraph import Coloring, MultiGraph
from .oracle import OracleReport, brute_force_efx, contains
from .partition import CutResult, cac, cut_and_choose
from .solvers import Instance, bipartite_efx, chromatic_efx, solve, tree_efx
from .valuation import (
    Additive,
    BudgetAdditive,
    Table,
    UnitDemand,
    Valuation,
    is_cancellable_bruteforce,
    is_monotone_bruteforce,
)

__all__ = [
    "Additive",
    "Allocation",
    "BudgetAdditive",
    "CapacityError",
    "Coloring",
    "CutResult",
    "EfxVerdict",
    "EnvyGraph",
    "GraphEfxError",
    "InputError",
    "Instance",
    "MultiGraph",
    "OracleReport",
    "PreconditionError",
    "Table",
    "UnitDemand",
    "UnsupportedClassError",
    "UnsupportedValuationError",
    "Valuation",
    "bipartite_efx",
    "brute_force_efx",
    "cac",
    "chromatic_efx",
    "contains",
    "cut_and_choose",
    "envy_graph",
    "is_cancellable_bruteforce",
    "is_efx",
    "is_monotone_bruteforce",
    "resolve_cycle",
    "solve",
    "tree_efx",
]

__version__ = "0.1.0"
