"""Exact number theory used throughout: primes, Legendre symbols,
multiplicative orders and part-bounded partitions."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd

from sympy import factorint, isprime, legendre_symbol, n_order
from sympy.utilities.iterables import partitions

__all__ = [
    "PRIME_LIMIT",
    "BoundedPartition",
    "is_prime",
    "require_prime",
    "prime_power",
    "legendre",
    "phi_rq",
    "phi_rq_naive",
    "valuation",
    "p_bounded_partitions",
    "primes_upto",
]

# deterministic primality is guaranteed below this bound
PRIME_LIMIT = 2**64


def is_prime(n: int) -> bool:
    if n >= PRIME_LIMIT:
        raise ValueError(f"primality of {n} not supported (>= 2^64)")
    return n >= 2 and bool(isprime(n))


def require_prime(n: int, name: str = "p") -> int:
    if not isinstance(n, int) or not is_prime(n):
        raise ValueError(f"{name}={n!r} is not a prime")
    return n


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p^f, raising if q is not a prime power."""
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"q={q} is not a prime power")
    (p, f), = fac.items()
    return int(p), int(f)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    if p == 2:
        raise ValueError("Legendre symbol needs an odd prime")
    require_prime(p)
    if a % p == 0:
        return 0
    return int(legendre_symbol(a % p, p))


def phi_rq(r: int, q: int) -> int:
    """Least i >= 1 with r | q^i - 1."""
    require_prime(r, "r")
    if q % r == 0:
        raise ValueError(f"r={r} divides q={q}")
    return int(n_order(q % r, r)) if r > 2 else 1


def phi_rq_naive(r: int, q: int) -> int:
    # plain loop, kept as a cross-check for phi_rq
    if q % r == 0:
        raise ValueError(f"r={r} divides q={q}")
    x, i = q % r, 1
    while x != 1 % r:
        x = x * q % r
        i += 1
    return i


def valuation(n: int, r: int) -> int:
    """r-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    n, v = abs(n), 0
    while n % r == 0:
        n //= r
        v += 1
    return v


def primes_upto(n: int) -> list[int]:
    return [k for k in range(2, n + 1) if is_prime(k)]


@dataclass(frozen=True)
class BoundedPartition:
    parts: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")
        if any(not 1 <= x <= self.bound for x in self.parts):
            raise ValueError(f"parts {self.parts} exceed bound {self.bound}")

    @property
    def total(self) -> int:
        return sum(self.parts)

    @property
    def d(self) -> int:
        """gcd of the parts."""
        return reduce(gcd, self.parts)


def p_bounded_partitions(n: int, p: int) -> list[BoundedPartition]:
    """All partitions of n with parts at most p, lexicographically decreasing."""
    if n < 1:
        raise ValueError("n must be positive")
    out = []
    for part in partitions(n, k=p):
        parts = tuple(sorted((k for k, m in part.items() for _ in range(m)), reverse=True))
        out.append(BoundedPartition(parts, p))
    out.sort(key=lambda b: b.parts, reverse=True)
    return out
