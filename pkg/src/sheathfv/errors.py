"""Exception and warning types shared across the solver."""


class ParameterDomainError(ValueError):
    """A physical or non-dimensional parameter is outside its valid domain."""


class DegenerateStateError(ValueError):
    """A state field is too degenerate to operate on (e.g. density below floor)."""


class ConfigError(ValueError):
    """Run configuration is unparseable or violates a constraint."""


class InstabilityError(RuntimeError):
    """A scheme produced NaN/Inf fields; carries the failing step index."""

    def __init__(self, step: int, time: float, last_good=None):
        super().__init__(f"non-finite field detected at step {step} (t={time:.6g})")
        self.step = step
        self.time = time
        self.last_good = last_good


class DegenerateBoundaryWarning(UserWarning):
    """The consistent electron boundary condition clamped its exponent."""
