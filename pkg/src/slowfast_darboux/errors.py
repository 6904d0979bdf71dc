"""Exception hierarchy shared by all modules."""


class DarbouxError(Exception):
    """Base class for every numerical failure raised by the package."""


class BranchCut(DarbouxError, ValueError):
    """Argument lies on the branch cut of a principal power."""


class NonFinite(DarbouxError, ArithmeticError):
    """An evaluation overflowed or produced NaN."""


class InvalidEps(DarbouxError, ValueError):
    """The value of eps is outside the range supported by an operation."""


class Pole(DarbouxError, ZeroDivisionError):
    """Polar isocline formula evaluated at a vanishing denominator."""


class TraceStall(DarbouxError):
    """A curve tracer could not make progress."""


class SeedInvalid(TraceStall):
    """Corrector failed on the very first (seed) point."""


class NoConvergence(DarbouxError):
    """An iterative solver did not reach its tolerance."""


class MonotonicityViolation(DarbouxError):
    """|h| is not monotone along an isocline component."""


class ContinuationBreakdown(DarbouxError):
    """Leaf transport failed (step size underflow or singular approach)."""

    def __init__(self, message, step=None):
        super().__init__(message)
        self.step = step


class AtRamification(DarbouxError, ValueError):
    """Signed square root requested exactly over a ramification point."""


class LiftAmbiguity(DarbouxError):
    """Path hit a ramification point in its interior."""


class SingularApproach(DarbouxError):
    """Orbit integration came too close to a singular point."""


class TimeLimit(DarbouxError):
    """Orbit integration exceeded its time budget without an event."""


class EscapeFromAnnulus(DarbouxError):
    """Orbit left the region bounded by the parabola and the line y = 1."""


class QuadratureFailure(DarbouxError):
    """Melnikov quadrature requested at a degenerate level."""


class ZeroOnBoundary(DarbouxError):
    """The function vanishes (numerically) on the contour."""


class RefinementLimit(DarbouxError):
    """Adaptive phase unwrapping exceeded its refinement budget."""


class DegenerateCoincidence(DarbouxError):
    """Two curves coincide, so their intersection set is not discrete."""


class ConfigError(DarbouxError, ValueError):
    """Experiment configuration failed validation."""
