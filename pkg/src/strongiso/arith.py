"""Small exact integer helpers shared by the other modules."""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def primary_decomposition(n: int) -> list[tuple[int, int]]:
    """Factor ``n >= 1`` into ``[(prime, exponent), ...]`` by trial division.

    >>> primary_decomposition(12)
    [(2, 2), (3, 1)]
    """
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")
    return list(_factor(n))


def prime_divisors(n: int) -> list[int]:
    return [p for p, _ in _factor(abs(n))] if n else []


def is_prime(n: int) -> bool:
    return n >= 2 and _factor(n) == ((n, 1),)


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for _, e in _factor(abs(n)))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def squarefree_part(x: int | Fraction) -> int:
    """Signed squarefree integer in the rational square class of ``x``."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("zero has no square class")
    n = x.numerator * x.denominator
    core = 1
    for p, e in _factor(abs(n)):
        if e % 2:
            core *= p
    return core if n > 0 else -core


def squarefree_product(a: int, b: int) -> int:
    """Squarefree part of ``a * b`` for squarefree ``a`` and ``b``, without factoring."""
    g = gcd(a, b)
    return a * b // (g * g)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n

