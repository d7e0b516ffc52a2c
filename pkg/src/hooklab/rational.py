"""Exact rational arithmetic helpers shared by every module.

Internally we use gmpy2.mpq (GMP-backed, roughly 3x faster than
fractions.Fraction in the partition sweeps).  Every public entry point
accepts ints, Fractions, mpqs, or "p/q" strings interchangeably.
"""

from __future__ import annotations

from fractions import Fraction

from gmpy2 import mpq

Rat = mpq

RationalLike = "int | Fraction | mpq | str"


def as_rat(x) -> mpq:
    """Coerce an int, Fraction, mpq, or "p/q" string to an exact rational."""
    if isinstance(x, mpq):
        return x
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(s: str) -> mpq:
    """Parse "p/q" or "p" (decimal points are rejected: exactness only)."""
    s = s.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return mpq(int(num), int(den))
    return mpq(int(s))


def rat_to_json(x) -> list:
    """["num", "den"] in lowest terms with positive denominator."""
    x = as_rat(x)
    return [str(x.numerator), str(x.denominator)]


def rat_from_json(pair) -> mpq:
    num, den = pair
    return mpq(int(num), int(den))
