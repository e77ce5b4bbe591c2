"""Small exact-arithmetic helpers shared by the counters."""
from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

from .errors import InvalidArgument


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions, decimal/fraction strings and floats to a Fraction.

    Floats convert exactly (their binary value), so ``as_rational(0.1)`` is not 1/10.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InvalidArgument("booleans are not rationals")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidArgument(f"cannot parse {x!r} as a rational") from exc
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InvalidArgument(f"non-finite value {x!r}")
        return Fraction(x)
    try:
        return Fraction(float(x))
    except (TypeError, ValueError) as exc:
        raise InvalidArgument(f"cannot interpret {x!r} as a rational") from exc


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, exact for arbitrarily large n."""
    if n < 0:
        raise InvalidArgument("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    # float seed, then integer Newton from above
    try:
        x = int(round(n ** (1.0 / k))) + 1
    except OverflowError:
        x = 1 << (n.bit_length() // k + 1)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_power(base, exponent) -> Fraction | None:
    """Return base**exponent as a Fraction when the result is rational, else None."""
    base = as_rational(base)
    exponent = as_rational(exponent)
    if base <= 0:
        if base == 0 and exponent > 0:
            return Fraction(0)
        return None
    p, r = exponent.numerator, exponent.denominator
    b = base ** p  # Fraction handles negative p
    num, den = b.numerator, b.denominator
    rn, rd = iroot(num, r), iroot(den, r)
    if rn ** r == num and rd ** r == den:
        return Fraction(rn, rd)
    return None


def rational_power(base, exponent) -> tuple[Fraction, bool]:
    """base**exponent as a Fraction plus an ``exact`` flag.

    When the power is irrational the float value is converted exactly and the flag is False.
    """
    value = exact_power(base, exponent)
    if value is not None:
        return value, True
    return Fraction(float(as_rational(base)) ** float(as_rational(exponent))), False


def floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
