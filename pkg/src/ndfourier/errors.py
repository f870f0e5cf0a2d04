"""Exception hierarchy shared by all ndfourier modules."""


class NDError(Exception):
    """Base class for errors raised by this package."""


class DomainError(NDError, ValueError):
    """An argument lies outside the domain of the requested map or operation."""


class NotInCantorSet(DomainError):
    """A value has no expansion using only the digits allowed by the Cantor set."""


class ContextMismatch(NDError, TypeError):
    """Two operands belong to different arithmetic contexts."""


class DivisionByZeroPrime(NDError, ZeroDivisionError):
    """Division by the additive neutral element 0'."""


class UnsupportedContext(NDError, ValueError):
    """The operation is not defined for this kind of arithmetic context."""


class NonDifferentiable(NDError, ArithmeticError):
    """Finite-difference extrapolation did not settle on a derivative."""


class NonConvergent(NonDifferentiable):
    """Successive difference quotients failed the Cauchy check."""


class QuadratureNonConvergent(NDError, ArithmeticError):
    """Panel refinement failed to reach the requested tolerance."""
