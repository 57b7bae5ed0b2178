"""Exact integer and modular arithmetic shared by all modules.

Everything here is plain Python integer arithmetic: no floats, no silent
wraparound.  Primality is deterministic for all inputs below 2**64 and
factorization is by trial division, sized for the operand magnitudes this
project actually produces (< 10**12).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Deterministic Miller-Rabin witness set, valid for all n < 3.3 * 10**24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

_TRIAL_BOUND = 1_000_000


class ArithError(ValueError):
    """Bad input to an arithmetic primitive (zero, composite modulus, ...)."""


@dataclass(frozen=True)
class PrimeFactorization:
    """Factorization ``value = sign * prod(p**e)`` with primes increasing."""

    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def sign(self) -> int:
        return -1 if self.value < 0 else 1

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def recompose(self) -> int:
        n = self.sign
        for p, e in self.factors:
            n *= p**e
        return n


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with fixed witnesses)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> PrimeFactorization:
    """Complete factorization by trial division (|n| < 10**12 intended)."""
    if n == 0:
        raise ArithError("cannot factorize 0")
    value = n
    n = abs(n)
    factors: list[tuple[int, int]] = []
    for p in (2, 3, 5):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
    # wheel over 6k+-1
    p = 7
    step = 4
    while p * p <= n and p <= _TRIAL_BOUND:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors.append((p, e))
        p += step
        step = 6 - step
    if n > 1:
        if not is_prime(n):
            raise ArithError(f"cofactor {n} exceeds the trial-division design range")
        factors.append((n, 1))
    factors.sort()
    return PrimeFactorization(value, tuple(factors))


def odd_prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(p for p in factorize(n).primes() if p != 2)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, by Euler's criterion."""
    if p <= 2 or not is_prime(p):
        raise ArithError(f"legendre modulus {p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), defined for all integers."""
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    # factor out 2s of n
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            sign = -sign
    # now n odd >= 1: Jacobi symbol via reciprocity
    a %= n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


def rational_mod_p(num: int, den: int, p: int) -> int:
    """num/den reduced mod an odd prime p; rejects p | den."""
    if p <= 2 or not is_prime(p):
        raise ArithError(f"modulus {p} is not an odd prime")
    if den % p == 0:
        raise ArithError(f"denominator {den} vanishes mod {p}: bad prime for this rational")
    return num * pow(den, -1, p) % p


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def isqrt_exact(n: int) -> int | None:
    """Integer square root if n is a perfect square, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def primes_below(bound: int) -> list[int]:
    """All primes < bound by sieve."""
    if bound <= 2:
        return []
    sieve = bytearray([1]) * bound
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(bound - 1) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(range(p * p, bound, p))
    return [i for i in range(bound) if sieve[i]]
