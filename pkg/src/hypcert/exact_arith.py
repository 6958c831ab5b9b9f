"""Exact integer and rational kernel: factorials, binomials, Pochhammer symbols.

``Rational`` is ``fractions.Fraction``: arbitrary precision, always stored
with a positive denominator and gcd-reduced, so equality is structural.
Everything downstream (series evaluation, term recognition, certification)
computes in this type; floats only ever appear in the explicitly numeric
cross-check paths.

Factorials and binomials are exact integer products, never Gamma-function
detours; the Gamma route lives in :mod:`hypcert.whipple` as the independent
floating-point side of the cross-checks.
"""

from __future__ import annotations

import math
from fractions import Fraction

Rational = Fraction

__all__ = ["Rational", "factorial", "binomial", "pochhammer", "as_rational", "is_nonpositive_integer"]


def factorial(n: int) -> int:
    """n! as an exact integer; 0! = 1. Rejects negative n."""
    if n < 0:
        raise ValueError(f"factorial of negative argument {n}")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient n-choose-k for n >= 0.

    Out-of-range k (k < 0 or k > n) yields 0 rather than an error, so finite
    sums over a shifting window never need boundary guards.
    """
    if n < 0:
        raise ValueError(f"binomial upper index must be nonnegative, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


def pochhammer(x: Rational | int, n: int) -> Rational:
    """Rising factorial x(x+1)...(x+n-1); equals 1 for n = 0."""
    if n < 0:
        raise ValueError(f"pochhammer shift must be nonnegative, got {n}")
    x = Fraction(x)
    # (p/q + j) = (p + j*q)/q: one integer product plus a constant power of q.
    p, q = x.numerator, x.denominator
    num = 1
    for j in range(n):
        num *= p + j * q
    return Fraction(num, q**n)


def as_rational(value: Rational | int | str) -> Rational:
    """Coerce an int, Fraction, or "p/q" string to a canonical Rational."""
    return Fraction(value)


def is_nonpositive_integer(x: Rational | int) -> bool:
    """True when x is an integer <= 0 (the series termination/pole test)."""
    x = Fraction(x)
    return x.denominator == 1 and x.numerator <= 0
