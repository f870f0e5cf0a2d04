"""Non-Diophantine arithmetic, calculus and Fourier analysis on Cantor sets.

Elements of a set X are handled through a bijection ``f: X -> R``; every
operation is the ordinary one conjugated by ``f``.  Values are stored as
exact rationals in lowercase coordinates ``f(X)``.
"""

__version__ = "0.1.0"

from .arithmetic import (
    ArithmeticContext,
    Benioff,
    Fechner,
    Identity,
    MiddleThirdSelfSimilar,
    NDNumber,
    QuaternaryCantor,
    TernaryLine,
    builtin_contexts,
    nat,
    one_prime,
    parse_context,
    zero_prime,
)
from .calculus import NDFunction, derivative, derivative_by_limit, integral, laplacian
from .errors import (
    ContextMismatch,
    DivisionByZeroPrime,
    DomainError,
    NDError,
    NonConvergent,
    NonDifferentiable,
    NotInCantorSet,
    QuadratureNonConvergent,
    UnsupportedContext,
)
from .exact_digits import Branch, RepeatingDigits, from_digits, to_digits
from .fourier import FourierSeries, analyze, reconstruct, scalar_product, spectrum
from .ndcomplex import NDComplex, i_prime
from .quadrature import QuadratureSpec
from .sawtooth import SawtoothSpec, figure_data, sawtooth_nd, sawtooth_series

__all__ = [
    "ArithmeticContext", "Benioff", "Fechner", "Identity", "MiddleThirdSelfSimilar", "NDNumber",
    "QuaternaryCantor", "TernaryLine", "builtin_contexts", "nat", "one_prime", "parse_context", "zero_prime",
    "NDFunction", "derivative", "derivative_by_limit", "integral", "laplacian",
    "ContextMismatch", "DivisionByZeroPrime", "DomainError", "NDError", "NonConvergent", "NonDifferentiable",
    "NotInCantorSet", "QuadratureNonConvergent", "UnsupportedContext",
    "Branch", "RepeatingDigits", "from_digits", "to_digits",
    "FourierSeries", "analyze", "reconstruct", "scalar_product", "spectrum",
    "NDComplex", "i_prime", "QuadratureSpec",
    "SawtoothSpec", "figure_data", "sawtooth_nd", "sawtooth_series",
]
