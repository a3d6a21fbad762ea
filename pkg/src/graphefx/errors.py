"""Exception hierarchy shared across the library and the CLI."""


class GraphEfxError(Exception):
    """Base class for all library errors."""


class InputError(GraphEfxError):
    """Malformed or inconsistent input (bad indices, bad files, bad allocations)."""


class CapacityError(GraphEfxError):
    """An exhaustive procedure was asked to run beyond its size bound."""


class PreconditionError(GraphEfxError):
    """A solver precondition (bipartiteness, girth, coloring, ...) does not hold."""


class UnsupportedValuationError(PreconditionError):
    """A solver restricted to cancellable families was given a table valuation."""


class UnsupportedClassError(GraphEfxError):
    """No solver's preconditions hold for the given instance."""
