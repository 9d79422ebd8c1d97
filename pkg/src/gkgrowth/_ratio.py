"""Arbitrary-precision rational scalars.

``QQ`` is the single rational type used throughout the package.  It is
``gmpy2.mpq`` when gmpy2 is installed (an order of magnitude faster) and
``fractions.Fraction`` otherwise.  Both keep values canonical: reduced to
lowest terms with a positive denominator, zero stored as 0/1.
"""

from __future__ import annotations

import numbers

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as QQ

ZERO = QQ(0)
ONE = QQ(1)


def as_ratio(value) -> "QQ":
    """Coerce an int or rational number to QQ; reject floats."""
    if isinstance(value, int):
        return QQ(value)
    if isinstance(value, numbers.Rational):
        return QQ(value.numerator, value.denominator)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def is_rational(value) -> bool:
    return isinstance(value, (int, numbers.Rational))


def ratio_str(q) -> str:
    """Render ``q`` as ``n`` or ``n/d``; round-trips through the parser."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"
