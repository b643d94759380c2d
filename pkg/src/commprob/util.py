"""Small numeric and formatting helpers."""

from __future__ import annotations

from fractions import Fraction


def smallest_prime_factor(n: int) -> int:
    if n < 2:
        raise ValueError("n must be at least 2")
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def is_prime(n: int) -> bool:
    return n >= 2 and smallest_prime_factor(n) == n


def fraction_str(x: Fraction) -> str:
    """Always ``num/den``, even for integers (machine-format contract)."""
    return f"{x.numerator}/{x.denominator}"


def dyadic_form_exponent(v: Fraction) -> int | None:
    """The s >= 0 with v = 1/2 + 1/2**(2s+1), or None if v has no such form."""
    x = v - Fraction(1, 2)
    if x <= 0 or x.numerator != 1:
        return None
    d = x.denominator
    if d & (d - 1):  # not a power of two
        return None
    k = d.bit_length() - 1
    if k < 1 or k % 2 == 0:
        return None
    return (k - 1) // 2
