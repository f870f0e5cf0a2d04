"""Independent reference implementations used to freeze expected values.

Nothing here imports the package.  The digit-doubling oracle works from
the closed form ``g_-(y) = g_+(y) - 2 B^L (B - 2)/(B - 1)``, where ``L`` is
the position of the last 1 bit of a terminating binary expansion, instead
of building repeating-digit objects.
"""

from fractions import Fraction
import math


def _bits(y: Fraction):
    """Integer bits (most significant first), fractional prefix and cycle of y >= 0."""
    whole = y.numerator // y.denominator
    ints = [int(b) for b in bin(whole)[2:]] if whole else []
    rem = y - whole
    seen, frac = {}, []
    while rem and rem not in seen:
        seen[rem] = len(frac)
        rem *= 2
        frac.append(int(rem >= 1))
        rem -= int(rem >= 1)
    if not rem:
        return ints, frac, []
    start = seen[rem]
    return ints, frac[:start], frac[start:]


def g_plus(y, base: int) -> Fraction:
    """Double every binary digit of ``y >= 0`` (terminating form) and read in ``base``."""
    y = Fraction(y)
    ints, prefix, cycle = _bits(y)
    B = Fraction(base)
    value = sum(2 * b * B ** i for i, b in enumerate(reversed(ints)))
    value += sum(2 * b * B ** -(j + 1) for j, b in enumerate(prefix))
    if cycle:
        block = sum(2 * b * B ** -(j + 1) for j, b in enumerate(cycle))
        value += block * B ** -len(prefix) / (1 - B ** -len(cycle))
    return Fraction(value)


def last_one_position(y) -> int:
    """Exponent of the least significant 1 bit of a dyadic ``y > 0``."""
    y = Fraction(y)
    num, den = y.numerator, y.denominator
    return (num & -num).bit_length() - 1 - (den.bit_length() - 1)


def g(y, base: int, minus: bool) -> Fraction:
    y = Fraction(y)
    value = g_plus(y, base)
    den = y.denominator
    if minus and y > 0 and den & (den - 1) == 0:
        L = last_one_position(y)
        value -= 2 * Fraction(base) ** L * (base - 2) / (base - 1)
    return value


def ternary_line_g(x, minus=True) -> Fraction:
    x = Fraction(x)
    k = math.floor(x)
    return k + g(x - k, 3, minus)


def scaled_g(y, base, minus) -> Fraction:
    y = Fraction(y)
    return -g(-y, base, minus) if y < 0 else g(y, base, minus)


def spectrum_label(n: int, base: int) -> int:
    """Binary digits of ``n`` reread in ``base`` and doubled."""
    return 2 * int(bin(n)[2:], base)


def sawtooth_sine(n: int) -> float:
    """Closed-form <s_n|a> for the unit-period sawtooth, from integrating x sin by parts."""
    return math.sqrt(2) * (-1) ** (n + 1) / (2 * n * math.pi)


def sawtooth_partial(x: float, terms: int) -> float:
    """Classical partial sum of x on [-1/2, 1/2): sum (-1)^(n+1) sin(2 pi n x)/(n pi)."""
    return sum((-1) ** (n + 1) * math.sin(2 * math.pi * n * x) / (n * math.pi) for n in range(1, terms + 1))
