"""Small prime helpers that avoid importing sympy on the fast paths."""

from __future__ import annotations

from math import isqrt

_SMALL = 1 << 20


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < _SMALL:
        if n % 2 == 0:
            return n == 2
        return all(n % f for f in range(3, isqrt(n) + 1, 2))
    from sympy import isprime

    return bool(isprime(n))


def primes_upto(n: int) -> list:
    """Primes p <= n by an Eratosthenes sieve."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i, flag in enumerate(sieve) if flag]


def prime_power_base(q: int):
    """(p, k) with q = p^k for a prime power q, else None."""
    if q < 2:
        return None
    for p in primes_upto(isqrt(q) + 1) if q >= 4 else []:
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return (q, 1) if is_prime(q) else None
