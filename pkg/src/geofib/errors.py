"""Shared exception types."""


class GeofibError(Exception):
    """Base class for library-specific failures."""


class DegenerateParameterError(GeofibError, ValueError):
    """A catalog family parameter collapses the group onto a smaller one."""


class NotAFiberError(GeofibError, ValueError):
    """A curve handed to a fibration operation is not one of its fibers."""


class FiberSolveError(GeofibError, RuntimeError):
    """The fiber-through-point solver missed its residual tolerance."""
