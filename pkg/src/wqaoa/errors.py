"""Exception types shared across the package."""


class CapacityError(ValueError):
    """Problem size exceeds what exact enumeration/simulation supports."""


class DegenerateScaleError(ValueError):
    """Rescaling requested for an all-zero coefficient set."""


class MomentError(ValueError):
    """A required distribution moment does not exist (e.g. Cauchy)."""


class PreconditionError(ValueError):
    """Structural precondition violated (triangles, odd N, degenerate degree)."""


class GenerationError(RuntimeError):
    """Random instance generation failed (infeasible spec or retry cap hit)."""


class NumericalError(RuntimeError):
    """An internal numerical identity or convergence check failed."""
