"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BurgersPimError(Exception):
    """Base class for all package errors."""


class DimensionError(BurgersPimError, ValueError):
    """Shapes, grids or ranks do not agree."""


class SizeError(BurgersPimError, ValueError):
    """A node count is below the minimum a stencil needs."""


class DomainError(BurgersPimError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class OverflowGuardError(BurgersPimError, ArithmeticError):
    """A computation produced or would produce non-finite values."""


class FactorizationError(BurgersPimError, ArithmeticError):
    """A linear system could not be factorized."""


class SingularTransformError(BurgersPimError, ArithmeticError):
    """The heat potential vanished where the inverse transform divides by it."""


class ConvergenceError(BurgersPimError, RuntimeError):
    """An iterative series or quadrature failed to converge."""


class StageError(BurgersPimError, RuntimeError):
    """Wraps an error raised inside a named pipeline stage."""

    def __init__(self, stage: str, cause: BaseException) -> None:
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
