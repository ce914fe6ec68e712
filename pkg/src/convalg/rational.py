"""Exact rational scalar helpers shared across the package.

Every certified inequality in this package eventually reduces to a comparison
between :class:`fractions.Fraction` values.  This module collects the wire
format for rationals, the reciprocal-square kernel on the integers, and
rational enclosures of the few transcendental quantities the certificates
need (exp, pi^2, ln 2, sum log n / n^2).
"""

from __future__ import annotations

from fractions import Fraction

Rational = Fraction

# pi^2 = 9.8696044010...  Both bounds are revalidated against math.pi in the
# test suite and are only ever used in the stated direction.
PI_SQUARED_LOWER = Fraction(98696, 10_000)
PI_SQUARED_UPPER = Fraction(98697, 10_000)

# ln 2 = 0.6931471805...
LOG2_LOWER = Fraction(6_931_471, 10_000_000)
LOG2_UPPER = Fraction(6_931_472, 10_000_000)

# sum_{n>=1} log(n)/n^2 = 0.9375482543...  Upper bound certified by partial
# sum plus the integral tail (log K + 1)/K at K=200; revalidated in tests.
LOG_SUM_OVER_SQUARES_UPPER = Fraction(94, 100)


def parse_rational(text: str) -> Fraction:
    """Parse the "num/den" wire format (a bare integer is also accepted)."""
    s = text.strip()
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


def format_rational(value: Fraction) -> str:
    """Serialize a rational as "num/den" (denominator always explicit)."""
    f = Fraction(value)
    return f"{f.numerator}/{f.denominator}"


def even_floor(x: Fraction) -> int:
    """Integer part extended evenly from the positive half-line: floor(|x|)."""
    ax = abs(Fraction(x))
    return ax.numerator // ax.denominator


def sigma(n: int) -> Fraction:
    """Reciprocal-square kernel 1 / max(1, |n|)^2 on the integers."""
    m = max(1, abs(n))
    return Fraction(1, m * m)


def exp_enclosure(x: Fraction, terms: int = 40) -> tuple[Fraction, Fraction]:
    """Certified rational enclosure of exp(x) for rational x >= 0.

    Partial Taylor sum S_K plus the geometric remainder cap
    t_{K+1} / (1 - x/(K+2)), valid whenever x < K+2.
    """
    x = Fraction(x)
    if x < 0:
        raise ValueError("exp_enclosure requires x >= 0")
    K = max(terms, 2 * (int(x) + 1))
    term = Fraction(1)
    total = Fraction(1)
    for k in range(1, K + 1):
        term = term * x / k
        total += term
    next_term = term * x / (K + 1)
    r = x / (K + 2)
    if r >= 1:
        raise ValueError("not enough terms for a certified remainder")
    tail = next_term / (1 - r)
    return total, total + tail


def exp_lower_pow2(x: Fraction) -> int:
    """Exponent k with 2^k < e^x, certified via the upper bound on ln 2."""
    x = Fraction(x)
    if x <= 0:
        raise ValueError("requires x > 0")
    k = int(x / LOG2_UPPER)
    # k * ln2 <= k * LOG2_UPPER <= x, with strict inequality for the returned k
    while Fraction(k) * LOG2_UPPER >= x:
        k -= 1
    return k


def floor_times_exp(c: Fraction, x: Fraction, max_terms: int = 400) -> int:
    """Exact floor(c * e^x) for rationals c > 0, x >= 0.

    Refines the enclosure until both ends share a floor; raises if the value
    sits too close to an integer to decide within max_terms.
    """
    c = Fraction(c)
    terms = 40
    while terms <= max_terms:
        lo, hi = exp_enclosure(x, terms)
        flo = (c * lo).numerator // (c * lo).denominator
        fhi = (c * hi).numerator // (c * hi).denominator
        if flo == fhi:
            return flo
        terms *= 2
    raise ValueError(f"floor of {c}*e^{x} not separated at {max_terms} terms")
