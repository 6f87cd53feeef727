"""Exact handling of user-supplied rationals (eps values, coordinates)."""

from fractions import Fraction


def as_fraction(x):
    """Exact rational for ``x``.

    Floats go through their shortest repr, so ``0.1`` becomes ``1/10`` rather
    than the binary value just above it; otherwise ``|e| >= 0.1 * 10`` would
    wrongly demand two vertices.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("boolean is not a number here")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def format_fraction(x):
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
