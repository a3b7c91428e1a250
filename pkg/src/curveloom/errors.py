"""Exception types raised by curveloom operations."""


class CurveloomError(Exception):
    """Base class for all curveloom errors."""


class ConfigError(CurveloomError):
    """Malformed configuration, scene file, or map file."""


class ComplexityTooLow(CurveloomError):
    """The surface has complexity xi = 3g - 3 + p < 2."""


class GeneralPositionViolation(CurveloomError):
    """Scene geometry is degenerate: tangency, triple point, puncture on a
    curve, or a non-simple polyline."""


class NotSensible(CurveloomError):
    """A curve in the system is inessential (bounds a disc or a once
    punctured disc) or two curves are isotopic."""


class NotInMinimalPosition(CurveloomError):
    """An operation that requires a bigon-free configuration was handed one
    that still has a bigon."""


class NotFilling(CurveloomError):
    """The pair of curves does not fill the surface."""


class NotALoop(CurveloomError):
    """The curve fails the loop condition relative to the reference pair."""


class WrongKind(CurveloomError):
    """Subsurface kind does not match the requested projection."""


class VertexMissesSubsurface(CurveloomError):
    """A curve has empty projection to the subsurface."""


class WindowTooSmall(CurveloomError):
    """Annular cover window too small to certify the count; enlarge W."""


class UncertifiedDistance(CurveloomError):
    """A distance query left the certified range [0, 3] and no upper-bound
    witness was requested."""


class NonConvergence(CurveloomError):
    """An iterative repair or retry loop exhausted its cap."""


class InternalTopologyError(CurveloomError):
    """An internal consistency check failed (Euler count, face bookkeeping,
    traversal closure).  Indicates a bug, not bad input."""
