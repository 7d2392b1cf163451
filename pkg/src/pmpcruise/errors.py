"""Exception types shared across the toolkit."""


class InvalidParameter(ValueError):
    """A field value violates its invariant."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"invalid parameter {field!r}: {reason}")


class InfeasibleStart(ValueError):
    """The scenario starts on or inside the safety boundary."""


class NonFiniteObjective(ArithmeticError):
    """An objective returned NaN or infinity at a probe point."""


class OutOfBounds(ValueError):
    """A control lies outside the tolerance-inflated admissible interval."""


class NoConvergence(RuntimeError):
    """An iterative solver exhausted its iteration budget."""

    def __init__(self, iterations: int, residual: float):
        self.iterations = iterations
        self.residual = residual
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(residual {residual:.3e})"
        )


class HorizonMismatch(ValueError):
    """Two simulation runs cover different sample grids."""
