"""Exact digit expansions and the digit-doubling Cantor bijections.

Every rational has an eventually periodic expansion in any base.  The maps
here re-read the binary digits of a number as the digits ``0``/``2`` of a
base-3 or base-4 number (``g``), and back (``f``).  Dyadic rationals have two
binary expansions; a :class:`Branch` picks which one is doubled.

All functions take and return :class:`fractions.Fraction` values and never
round.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Tuple, Union

from .errors import DomainError, NotInCantorSet

Rational = Union[Fraction, int]

_DIGIT_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


class Branch(enum.Enum):
    """Which image of a dyadic rational the digit-doubling map selects."""

    MINUS = "minus"
    PLUS = "plus"

    @classmethod
    def parse(cls, text: str) -> "Branch":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown branch {text!r}; expected 'minus' or 'plus'") from None


@dataclass(frozen=True)
class RepeatingDigits:
    """Digits of ``sign * iii.ppp(ttt)`` in a given base.

    ``integer_part`` is most-significant first and is ``(0,)`` for numbers
    below one.  An empty ``repeating_tail`` means the expansion terminates.
    Only :func:`to_digits` guarantees canonical form; any digit lists within
    range are accepted so that non-canonical forms (such as ``0.0(2)`` in
    base 3) can be evaluated with :func:`from_digits`.
    """

    sign: int
    base: int
    integer_part: Tuple[int, ...]
    fractional_prefix: Tuple[int, ...] = ()
    repeating_tail: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.base < 2:
            raise ValueError("base must be at least 2")
        for name in ("integer_part", "fractional_prefix", "repeating_tail"):
            digits = tuple(getattr(self, name))
            object.__setattr__(self, name, digits)
            if any(not 0 <= d < self.base for d in digits):
                raise ValueError(f"{name} has a digit outside [0, {self.base})")
        if not self.integer_part:
            object.__setattr__(self, "integer_part", (0,))

    @property
    def is_terminating(self) -> bool:
        return not self.repeating_tail

    @property
    def is_canonical(self) -> bool:
        ints = self.integer_part
        if len(ints) > 1 and ints[0] == 0:
            return False
        tail = self.repeating_tail
        if tail:
            if all(d == self.base - 1 for d in tail):
                return False
            if _minimal_period(tail) != len(tail):
                return False
            # a prefix ending in the last tail digit could be absorbed
            if self.fractional_prefix and self.fractional_prefix[-1] == tail[-1]:
                return False
        elif self.fractional_prefix and self.fractional_prefix[-1] == 0:
            return False
        if self.sign < 0 and self.value == 0:
            return False
        return True

    @property
    def value(self) -> Fraction:
        return from_digits(self)

    def __str__(self) -> str:
        chars = _DIGIT_CHARS
        text = "-" if self.sign < 0 else ""
        text += "".join(chars[d] for d in self.integer_part)
        if self.fractional_prefix or self.repeating_tail:
            text += "." + "".join(chars[d] for d in self.fractional_prefix)
            if self.repeating_tail:
                text += "(" + "".join(chars[d] for d in self.repeating_tail) + ")"
        return f"{text}_{self.base}"

    @classmethod
    def parse(cls, text: str) -> "RepeatingDigits":
        """Parse the ``-iii.ppp(ttt)_b`` notation produced by ``str``."""
        m = re.fullmatch(
            r"\s*([+-]?)([0-9a-z]+)(?:\.([0-9a-z]*)(?:\(([0-9a-z]+)\))?)?_(\d+)\s*",
            text.lower(),
        )
        if m is None:
            raise ValueError(f"cannot parse digit expansion {text!r}")
        sign, ints, prefix, tail, base = m.groups()
        base = int(base)

        def conv(s):
            return tuple(_DIGIT_CHARS.index(c) for c in (s or ""))

        return cls(-1 if sign == "-" else 1, base, conv(ints), conv(prefix), conv(tail))


def _minimal_period(tail: Sequence[int]) -> int:
    n = len(tail)
    for p in range(1, n + 1):
        if n % p == 0 and tuple(tail[:p]) * (n // p) == tuple(tail):
            return p
    return n


def _int_digits(n: int, base: int) -> Tuple[int, ...]:
    if n == 0:
        return (0,)
    out = []
    while n:
        n, d = divmod(n, base)
        out.append(d)
    return tuple(reversed(out))


def _read_int(digits: Sequence[int], base: int) -> int:
    value = 0
    for d in digits:
        value = value * base + d
    return value


def _digit_value(ints, prefix, tail, base) -> Fraction:
    # ints/prefix/tail may carry digits >= base; the positional formula still holds
    value = Fraction(_read_int(ints, base))
    k, m = len(prefix), len(tail)
    frac = Fraction(_read_int(prefix, base))
    if m:
        frac += Fraction(_read_int(tail, base), base**m - 1)
    return value + frac / base**k


#: Longest fractional expansion (prefix plus period) that is materialized.
MAX_DIGITS = 1 << 20


def to_digits(q: Rational, base: int, allowed=None) -> RepeatingDigits:
    """Exact canonical expansion of ``q`` in ``base`` by long division.

    Terminating expansions come back with an empty tail, so a dyadic
    rational in base 2 gets its terminating form.  With ``allowed`` given,
    the division stops with :class:`NotInCantorSet` at the first
    fractional digit outside it, so a long period is never expanded just
    to be rejected.

    >>> str(to_digits(Fraction(1, 3), 2))
    '0.(01)_2'

    Raises
    ------
    DomainError
        If the expansion is longer than :data:`MAX_DIGITS`.
    """
    if base < 2:
        raise ValueError("base must be at least 2")
    q = Fraction(q)
    sign = -1 if q < 0 else 1
    num, den = abs(q.numerator), q.denominator
    whole, rem = divmod(num, den)
    frac = []
    seen = {}
    while rem and rem not in seen:
        seen[rem] = len(frac)
        d, rem = divmod(rem * base, den)
        if allowed is not None and d not in allowed:
            raise NotInCantorSet(f"{q} has the digit {d} in base {base}")
        frac.append(d)
        if len(frac) > MAX_DIGITS:
            raise DomainError(f"the base-{base} expansion of {q} is longer than {MAX_DIGITS} digits")
    if rem:
        start = seen[rem]
        prefix, tail = frac[:start], frac[start:]
    else:
        prefix, tail = frac, []
    return RepeatingDigits(sign, base, _int_digits(whole, base), tuple(prefix), tuple(tail))


def from_digits(d: RepeatingDigits) -> Fraction:
    """Exact rational value of a digit expansion (canonical or not)."""
    return d.sign * _digit_value(d.integer_part, d.fractional_prefix, d.repeating_tail, d.base)


def is_dyadic(q: Rational) -> bool:
    """True for ``p / 2**k``, the numbers with two binary expansions (zero excluded)."""
    q = Fraction(q)
    den = q.denominator
    return q != 0 and den & (den - 1) == 0


def binary_forms(y: Rational):
    """Both binary digit forms of ``y >= 0`` as ``(ints, prefix, tail)`` triples.

    Returns a one-element list unless ``y`` is dyadic, in which case the
    terminating form comes first and the repeating-1s form second.
    """
    d = to_digits(y, 2)
    forms = [(d.integer_part, d.fractional_prefix, d.repeating_tail)]
    if d.repeating_tail or not is_dyadic(y):
        return forms
    digits = list(d.integer_part) + list(d.fractional_prefix)
    n_int = len(d.integer_part)
    last = max(i for i, b in enumerate(digits) if b == 1)
    digits[last] = 0
    digits[last + 1:] = [1] * (len(digits) - last - 1)
    forms.append((tuple(digits[:n_int]), tuple(digits[n_int:]), (1,)))
    return forms


def _alternative_form(d: RepeatingDigits):
    # terminating ...d000 also reads ...(d-1)(b-1)(b-1)...
    digits = list(d.integer_part) + list(d.fractional_prefix)
    n_int = len(d.integer_part)
    last = max(i for i, v in enumerate(digits) if v)
    digits[last] -= 1
    digits[last + 1:] = [d.base - 1] * (len(digits) - last - 1)
    return tuple(digits[:n_int]), tuple(digits[n_int:]), (d.base - 1,)


def _double(y: Fraction, target_base: int, branch: Branch) -> Fraction:
    forms = binary_forms(y)
    ints, prefix, tail = forms[1] if branch is Branch.MINUS and len(forms) == 2 else forms[0]

    def dbl(ds):
        return [2 * b for b in ds]

    return _digit_value(dbl(ints), dbl(prefix), dbl(tail), target_base)


def double_digits(y: Rational, target_base: int, branch: Branch) -> Fraction:
    """The map ``g``: double every binary digit of ``y`` and read in ``target_base``.

    For dyadic ``y`` the MINUS branch doubles the repeating-1s binary form
    (the smaller image) and PLUS the terminating form (the larger image).

    Parameters
    ----------
    y : Fraction
        Non-negative; below one when ``target_base`` is 3.
    target_base : {3, 4}
    branch : Branch
    """
    y = Fraction(y)
    if target_base not in (3, 4):
        raise DomainError("target_base must be 3 or 4")
    if y < 0:
        raise DomainError(f"double_digits needs y >= 0, got {y}")
    if target_base == 3 and y >= 1:
        raise DomainError(f"ternary cell map needs y in [0, 1), got {y}")
    return _double(y, target_base, branch)


def halve_digits(x: Rational, source_base: int) -> Fraction:
    """Inverse of :func:`double_digits`: halve each 0/2 digit and read in base 2.

    Both expansions of ``x`` are tried, so ``1/3 = 0.0(2)_3`` is accepted.

    Raises
    ------
    NotInCantorSet
        If neither expansion uses only the digits 0 and 2.
    """
    x = Fraction(x)
    if source_base < 3:
        raise DomainError("source_base must be at least 3")
    if x < 0:
        raise DomainError(f"halve_digits needs x >= 0, got {x}")
    den = x.denominator
    while den > 1 and math.gcd(den, source_base) > 1:
        den //= math.gcd(den, source_base)
    # a non-terminating expansion is unique, so the first bad digit settles it
    d = to_digits(x, source_base, allowed=None if den == 1 else (0, 2))
    candidates = [(d.integer_part, d.fractional_prefix, d.repeating_tail)]
    if d.is_terminating and x != 0:
        candidates.append(_alternative_form(d))
    for ints, prefix, tail in candidates:
        if all(v in (0, 2) for part in (ints, prefix, tail) for v in part):
            return _digit_value(
                [v // 2 for v in ints], [v // 2 for v in prefix], [v // 2 for v in tail], 2
            )
    raise NotInCantorSet(f"{x} has a digit other than 0 or 2 in base {source_base}")


def _checked_halve(x: Fraction, base: int, branch: Branch) -> Fraction:
    y = halve_digits(x, base)
    if _double(y, base, branch) != x:
        raise NotInCantorSet(f"{x} is not in the {branch.value} branch image (base {base})")
    return y


def ternary_line_inverse(x: Rational, branch: Branch = Branch.MINUS) -> Fraction:
    """``g`` on the ternary Cantor line: ``g(x + k) = g(x) + k`` for integer ``k``."""
    x = Fraction(x)
    k = math.floor(x)
    return _double(x - k, 3, branch) + k


def ternary_line_forward(X: Rational, branch: Branch = Branch.MINUS) -> Fraction:
    """``f`` on the ternary Cantor line, the inverse of :func:`ternary_line_inverse`."""
    X = Fraction(X)
    k = math.floor(X)
    return _checked_halve(X - k, 3, branch) + k


def scaled_inverse(y: Rational, base: int, branch: Branch) -> Fraction:
    """Digit doubling over the whole line, including the integer digits.

    Negative arguments use ``g(-y) = -g(y)``.
    """
    y = Fraction(y)
    if y < 0:
        return -_double(-y, base, branch)
    return _double(y, base, branch)


def scaled_forward(X: Rational, base: int, branch: Branch) -> Fraction:
    """Inverse of :func:`scaled_inverse`."""
    X = Fraction(X)
    if X < 0:
        return -_checked_halve(-X, base, branch)
    return _checked_halve(X, base, branch)


def quaternary_inverse(y: Rational, branch: Branch = Branch.PLUS) -> Fraction:
    """``g`` for the quaternary Cantor set: binary digits doubled, read in base 4."""
    return scaled_inverse(y, 4, branch)


def quaternary_forward(X: Rational, branch: Branch = Branch.PLUS) -> Fraction:
    return scaled_forward(X, 4, branch)
