"""Exact rational scalars.

Every probability in this package is a ``fractions.Fraction``: arbitrary
precision, always in canonical form (positive denominator, gcd 1), with
decidable equality.  Nothing downstream ever touches a float except the
quantum generator boundary, which converts through
:func:`approximate_from_float`.

Values are immutable and safe to share between threads.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import DomainError

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def rational_to_string(value: Fraction) -> str:
    """Serialize as ``"n/d"`` in canonical form (``"0/1"`` for zero)."""
    return f"{value.numerator}/{value.denominator}"


_RATIONAL_PATTERN = re.compile(r"-?\d+(/\d+)?\Z")


def rational_from_string(text: str) -> Fraction:
    """Parse ``"n/d"`` or a bare integer ``"n"``, optionally negative.

    Raises ValueError on anything else, including a zero denominator.
    """
    s = text.strip()
    if not _RATIONAL_PATTERN.match(s):
        raise ValueError(f"not a rational: {text!r}")
    num_part, sep, den_part = s.partition("/")
    if not sep:
        return Fraction(int(num_part))
    denominator = int(den_part)
    if denominator == 0:
        raise ValueError(f"denominator must be positive: {text!r}")
    return Fraction(int(num_part), denominator)


def approximate_from_float(x: float, max_denominator: int) -> Fraction:
    """Best rational approximation to ``x`` with denominator <= ``max_denominator``.

    ``x`` must lie in [0, 1].  The result is the continued-fraction
    convergent or semiconvergent closest to ``x``, so no rational with an
    admissible denominator is strictly closer; the result stays in [0, 1].
    """
    if max_denominator < 1:
        raise DomainError(f"max_denominator must be >= 1, got {max_denominator}")
    if not (0.0 <= x <= 1.0):
        raise DomainError(f"value must lie in [0, 1], got {x!r}")
    return Fraction(x).limit_denominator(max_denominator)
