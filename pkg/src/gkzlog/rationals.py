"""Exact rational helpers and the ``p/q`` wire format.

Every scalar in the package is a ``fractions.Fraction``; floats are
rejected at the boundary so no rounding can enter the computation.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ProblemFileError


def to_rational(value) -> Fraction:
    """Coerce ``value`` to an exact rational.

    Accepts ints, Fractions, and strings like ``"3"`` or ``"-7/12"``.
    Floats are rejected: they carry rounding error by construction.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ProblemFileError(f"expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ProblemFileError(f"bad rational literal {value!r}: {exc}") from None
    raise ProblemFileError(f"expected int or 'p/q' string, got {type(value).__name__}")


def rational_vector(values) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def format_rational(value: Fraction) -> str:
    """Render as ``p`` or ``p/q`` (lowest terms, positive denominator)."""
    return str(Fraction(value))


def is_negative_integer(value) -> bool:
    q = value if isinstance(value, Fraction) else Fraction(value)
    return q.denominator == 1 and q < 0
