"""Elliptic curves over Q: integral models for the one-parameter family
y^2 = (x - 1)(x^2 - 1/(lambda + 1)), naive point counting over F_p, trace of
Frobenius, the derived weight-3 coefficient, and torsion congruences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import ArithError, factorize, is_prime, legendre, rational_mod_p
from .newform import prime_power_coeff

_COUNT_CAP = 100_000


class CurveError(ValueError):
    pass


@dataclass(frozen=True)
class CurveQ:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 with integer coefficients."""

    a2: int
    a4: int
    a6: int
    torsion: frozenset[int] = field(default_factory=frozenset)

    def cubic_disc(self) -> int:
        a, b, c = self.a2, self.a4, self.a6
        return 18 * a * b * c - 4 * a**3 * c + a * a * b * b - 4 * b**3 - 27 * c * c

    def __post_init__(self):
        if self.cubic_disc() == 0:
            raise CurveError("singular cubic")


@dataclass(frozen=True)
class LambdaCurve:
    lam: Fraction
    curve: CurveQ
    bad_primes: frozenset[int]


def bad_primes(lam: Fraction) -> frozenset[int]:
    """{2} plus every prime in the numerator or denominator of lam(lam+1)."""
    lam = Fraction(lam)
    if lam in (0, -1):
        raise CurveError("lambda must avoid 0 and -1")
    prod = lam * (lam + 1)
    primes = {2}
    primes.update(factorize(prod.numerator).primes())
    primes.update(factorize(prod.denominator).primes())
    return frozenset(primes)


@lru_cache(maxsize=256)
def integral_model(lam: Fraction) -> LambdaCurve:
    """Integral model v^2 = u^3 - d u^2 - c d^2 u + c d^3, c = 1/(lam+1).

    The scale d = e^2 uses the least e clearing the denominator of c*e^4, so
    the substitution u = d x, v = d e y is an isomorphism over F_p at every
    good prime (d is a square, never a twist).
    """
    lam = Fraction(lam)
    if lam in (0, -1):
        raise CurveError("lambda must avoid 0 and -1")
    c = 1 / (lam + 1)
    e = 1
    for p, v in factorize(c.denominator).factors:
        e *= p ** ((v + 3) // 4)
    d = e * e
    a4 = -(c * d * d)
    a6 = c * d**3
    assert a4.denominator == 1 and a6.denominator == 1
    curve = CurveQ(a2=-d, a4=int(a4), a6=int(a6), torsion=frozenset({2}))
    return LambdaCurve(lam, curve, bad_primes(lam))


def count_points(curve: CurveQ, p: int) -> int:
    """#E(F_p) by direct character-sum enumeration; O(p), capped at 10^5."""
    if p == 2 or not is_prime(p):
        raise CurveError(f"{p} is not an odd prime")
    if p > _COUNT_CAP:
        raise CurveError(f"{p} exceeds the naive-counting cap {_COUNT_CAP}")
    if curve.cubic_disc() % p == 0:
        raise CurveError(f"{p} is a bad prime for this curve")
    # chi table: chi[t] = legendre(t, p)
    chi = bytearray(p)
    for t in range(1, p):
        chi[t * t % p] = 1
    total = p + 1
    a2, a4, a6 = curve.a2 % p, curve.a4 % p, curve.a6 % p
    for x in range(p):
        f = ((x + a2) * x + a4) * x + a6
        f %= p
        if f:
            total += 1 if chi[f] else -1
    return total


def a_E(curve: CurveQ, p: int) -> int:
    """Trace of Frobenius p + 1 - #E(F_p)."""
    a = p + 1 - count_points(curve, p)
    assert a * a <= 4 * p, f"Hasse bound violated at {p}"
    return a


def gamma_sign(lam: Fraction, p: int) -> int:
    """The quadratic symbol of lam+1 reduced mod p."""
    lam = Fraction(lam)
    r = rational_mod_p((lam + 1).numerator, (lam + 1).denominator, p)
    if r == 0:
        raise CurveError(f"{p} divides lambda+1")
    return legendre(r, p)


def a_lambda(lam: Fraction, p: int) -> int:
    """Weight-3 coefficient at a good prime from the point count.

    For ordinary reduction this is gamma * (b^2 - 2p) with b the trace: the
    trace of the squared Frobenius pair, twisted by the symbol of lam+1.  At
    supersingular primes (b = 0) the squared eigenvalues are p and -p, so the
    trace is 0 rather than the naive -2p*gamma.
    """
    lam = Fraction(lam)
    lc = integral_model(lam)
    if p in lc.bad_primes or not is_prime(p):
        raise CurveError(f"{p} is a bad prime for lambda = {lam}")
    b = a_E(lc.curve, p)
    if b == 0:
        return 0
    return gamma_sign(lam, p) * (b * b - 2 * p)


def torsion_congruence(curve: CurveQ, ell: int, p: int, d: int) -> tuple[int, int, bool]:
    """Check a_E(p^d) == 1 + p + ... + p^d mod ell for declared ell-torsion.

    Returns (lhs mod ell, rhs mod ell, equal).
    """
    if ell not in curve.torsion:
        raise CurveError(f"curve has no declared {ell}-torsion")
    if d < 1:
        raise CurveError("need d >= 1")
    if p == ell or p == 2 or curve.cubic_disc() % p == 0:
        raise CurveError(f"{p} is excluded (must avoid 2, {ell}, and bad primes)")
    a = a_E(curve, p)
    lhs = prime_power_coeff(a, 1, 2, p, d) % ell
    rhs = sum(pow(p, i, ell) for i in range(d + 1)) % ell
    return lhs, rhs, lhs == rhs
