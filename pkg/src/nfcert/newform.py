"""Eta-product q-expansions, character twists, and the multiplicative /
recurrence structure of normalized eigenform coefficients.

Series are dense integer arrays a(1..N).  Each Euler factor prod(1 - q^(m n))
is expanded by the pentagonal-number theorem, raised to its power by repeated
truncated multiplication, and the whole product is shifted by the q^(sum/24)
prefactor.  Multiplication runs on int64 numpy arrays when a worst-case bound
shows that cannot overflow, and falls back to exact big-integer convolution
otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .arith import is_prime, kronecker, primes_below


class SeriesError(ValueError):
    pass


@dataclass(frozen=True)
class HeckeSpec:
    """Weight, real quadratic nebentypus (by discriminant), and level support."""

    weight: int
    disc: int | None
    bad_primes: frozenset[int]

    def chi(self, n: int) -> int:
        for p in self.bad_primes:
            if n % p == 0:
                return 0
        if self.disc is None:
            return 1
        return kronecker(self.disc, n)


@dataclass(frozen=True)
class EtaProduct:
    """Finite product over (multiplier, exponent) with an optional twist."""

    factors: tuple[tuple[int, int], ...]
    twist_disc: int | None = None

    @property
    def scaled_degree(self) -> int:
        return sum(m * r for m, r in self.factors)

    @property
    def weight2x(self) -> int:
        return sum(r for _, r in self.factors)

    def validate(self) -> None:
        if not self.factors:
            raise SeriesError("empty eta product")
        for m, r in self.factors:
            if m < 1 or r < 1:
                raise SeriesError(f"bad eta factor ({m},{r})")
        if self.scaled_degree % 24 != 0:
            raise SeriesError(f"sum of multiplier*exponent = {self.scaled_degree} is not divisible by 24")
        if self.weight2x % 2 != 0:
            raise SeriesError("sum of exponents must be even (integer weight)")


_ETA_TOKEN = re.compile(r"eta\((\d+)\)(?:\^(\d+))?$")


def parse_eta_spec(text: str) -> EtaProduct:
    """Parse the compact notation ``eta(1)^2*eta(2)*eta(8)^2 % -4``."""
    twist: int | None = None
    if "%" in text:
        head, _, tail = text.partition("%")
        twist = int(tail.strip())
        text = head
    factors = []
    for tok in text.replace(" ", "").split("*"):
        if not tok:
            continue
        m = _ETA_TOKEN.match(tok)
        if not m:
            raise SeriesError(f"cannot parse eta factor {tok!r}")
        factors.append((int(m.group(1)), int(m.group(2) or 1)))
    product = EtaProduct(tuple(factors), twist)
    product.validate()
    return product


class CoefficientSeries:
    """Integer coefficients a(1..n_terms) of a q-series with a(1) = 1."""

    def __init__(self, spec: HeckeSpec, coeffs: list[int]):
        # coeffs[0] corresponds to a(1)
        self.spec = spec
        self._a = coeffs

    @property
    def n_terms(self) -> int:
        return len(self._a)

    def a(self, n: int) -> int:
        if not 1 <= n <= self.n_terms:
            raise SeriesError(f"coefficient index {n} outside 1..{self.n_terms}")
        return self._a[n - 1]

    def coefficients(self) -> list[int]:
        return list(self._a)


def _pentagonal(length: int) -> list[int]:
    """prod(1 - q^n) truncated to `length` coefficients (index 0 = q^0)."""
    out = [0] * length
    out[0] = 1
    k = 1
    while True:
        for idx in (k * (3 * k - 1) // 2, k * (3 * k + 1) // 2):
            if idx < length:
                out[idx] = 1 if k % 2 == 0 else -1
        if k * (3 * k - 1) // 2 >= length:
            break
        k += 1
    return out


def _mul_trunc(a: list[int], b: list[int], length: int) -> list[int]:
    """Exact truncated product of two coefficient lists."""
    na, nb = min(len(a), length), min(len(b), length)
    max_a = max(abs(v) for v in a[:na]) or 1
    max_b = max(abs(v) for v in b[:nb]) or 1
    if max_a * max_b * min(na, nb) < 2**62:
        conv = np.convolve(np.array(a[:na], dtype=np.int64), np.array(b[:nb], dtype=np.int64))
        return conv[:length].tolist()
    out = [0] * length
    for i, av in enumerate(a[:na]):
        if av == 0:
            continue
        top = min(nb, length - i)
        for j in range(top):
            bv = b[j]
            if bv:
                out[i + j] += av * bv
    return out


@lru_cache(maxsize=64)
def _euler_power(r: int, length: int) -> tuple[int, ...]:
    """prod(1 - q^n)^r truncated to `length` coefficients."""
    if r == 1:
        return tuple(_pentagonal(length))
    half = _euler_power(r // 2, length)
    sq = _mul_trunc(list(half), list(half), length)
    if r % 2:
        sq = _mul_trunc(sq, _pentagonal(length), length)
    return tuple(sq)


def eta_product_series(product: EtaProduct, n_terms: int, spec: HeckeSpec | None = None) -> CoefficientSeries:
    """Exact coefficients a(1..n_terms) of the eta product."""
    product.validate()
    if n_terms < 1:
        raise SeriesError("need at least one term")
    if n_terms > 200_000:
        raise SeriesError("requested length exceeds the term budget")
    shift = product.scaled_degree // 24
    # coefficients of prod_i E(q^(m_i))^(r_i) up to q^(n_terms - shift)
    length = n_terms - shift + 1
    acc = [1]
    if length > 0:
        for m, r in product.factors:
            base = _euler_power(r, (length + m - 1) // m)
            scaled = [0] * length
            for i, v in enumerate(base):
                if i * m >= length:
                    break
                scaled[i * m] = v
            acc = _mul_trunc(acc, scaled, length)
    coeffs = [0] * n_terms
    for i, v in enumerate(acc):
        n = i + shift
        if 1 <= n <= n_terms:
            coeffs[n - 1] = v
    if spec is None:
        spec = HeckeSpec(weight=product.weight2x // 2, disc=None, bad_primes=frozenset())
    series = CoefficientSeries(spec, coeffs)
    if product.twist_disc is not None:
        series = twist_series(series, product.twist_disc, n_terms)
    return series


def twist_series(series: CoefficientSeries, disc: int | None, n_terms: int) -> CoefficientSeries:
    """Coefficient-wise multiplication by the Kronecker symbol (disc/n)."""
    if disc is None:
        return series
    n_terms = min(n_terms, series.n_terms)
    coeffs = [kronecker(disc, n) * series.a(n) for n in range(1, n_terms + 1)]
    return CoefficientSeries(series.spec, coeffs)


def infer_character(series: CoefficientSeries, k: int, p_max: int) -> dict[int, int]:
    """Per-prime nebentypus values fitted from a(p^2) = a(p)^2 - chi(p) p^(k-1).

    Returns chi(p) in {-1, +1} for good primes and 0 where no sign fits (the
    level support).  Requires the series to reach a(p^2).
    """
    out: dict[int, int] = {}
    for p in primes_below(p_max + 1):
        if p * p > series.n_terms:
            raise SeriesError(f"series too short to infer the character at {p}")
        lhs = series.a(p * p)
        sq = series.a(p) ** 2
        fits = [eps for eps in (1, -1) if lhs == sq - eps * p ** (k - 1)]
        if len(fits) == 2:
            raise SeriesError(f"both character signs fit at {p}: corrupt series")
        out[p] = fits[0] if fits else 0
    return out


def prime_power_coeff(a_p: int, chi_p: int, k: int, p: int, m: int) -> int:
    """a(p^m) from a(p) and chi(p) via the two-term recurrence."""
    if m < 0:
        raise SeriesError("negative exponent")
    if chi_p not in (-1, 0, 1):
        raise SeriesError("character value must be -1, 0, or 1")
    if a_p * a_p > 4 * p ** (k - 1):
        raise SeriesError(f"|a(p)| = {abs(a_p)} violates the coefficient bound at p = {p}")
    b = chi_p * p ** (k - 1)
    u_prev, u_cur = 1, a_p  # a(p^0), a(p^1)
    if m == 0:
        return 1
    for _ in range(m - 1):
        u_prev, u_cur = u_cur, a_p * u_cur - b * u_prev
    return u_cur


def _coprime_splits(n: int, prime_powers: list[int]):
    """All unordered coprime factorizations n = d1*d2 with 1 < d1 <= d2 < n."""
    k = len(prime_powers)
    for mask in range(1, 2 ** (k - 1)):
        d1 = 1
        for i in range(k):
            if mask >> i & 1:
                d1 *= prime_powers[i]
        yield d1, n // d1


def verify_dagger(series: CoefficientSeries, k: int, n_max: int) -> list[str]:
    """Check multiplicativity, the prime-power recurrence, the coefficient
    bound, and normalization on 1..n_max.  Returns violation descriptions."""
    n_max = min(n_max, series.n_terms)
    violations: list[str] = []
    if series.a(1) != 1:
        violations.append(f"a(1) = {series.a(1)} != 1")
    chi = infer_character(series, k, int(n_max**0.5))
    # smallest prime factor sieve
    spf = list(range(n_max + 1))
    for p in range(2, int(n_max**0.5) + 1):
        if spf[p] == p:
            for q in range(p * p, n_max + 1, p):
                if spf[q] == q:
                    spf[q] = p
    for p in (q for q in range(2, n_max + 1) if spf[q] == q):
        if chi.get(p, 0) != 0 and series.a(p) ** 2 > 4 * p ** (k - 1):
            violations.append(f"|a({p})| exceeds the good-prime bound")
        # prime-power recurrence
        m = 2
        while p**m <= n_max:
            expect = series.a(p) * series.a(p ** (m - 1)) - chi.get(p, 0) * p ** (k - 1) * series.a(p ** (m - 2))
            if series.a(p**m) != expect:
                violations.append(f"recurrence fails at {p}^{m}")
            m += 1
    for n in range(2, n_max + 1):
        pps = []
        t = n
        while t > 1:
            p = spf[t]
            pp = 1
            while t % p == 0:
                t //= p
                pp *= p
            pps.append(pp)
        if len(pps) < 2:
            continue
        for d1, d2 in _coprime_splits(n, pps):
            if series.a(n) != series.a(d1) * series.a(d2):
                violations.append(f"multiplicativity fails at {d1}*{d2}")
    return violations


# ---------------------------------------------------------------------------
# the seven singular-parameter forms

LAMBDA_FORMS: dict[Fraction, tuple[str, int | None, int]] = {
    # lambda -> (eta spec, twist disc, nebentypus disc)
    Fraction(1): ("eta(1)^2*eta(2)*eta(4)*eta(8)^2", -4, -8),
    Fraction(8): ("eta(4)^6", None, -4),
    Fraction(1, 8): ("eta(4)^6", 8, -4),
    Fraction(-4): ("eta(2)^3*eta(6)^3", None, -3),
    Fraction(-1, 4): ("eta(2)^3*eta(6)^3", -4, -3),
    Fraction(-64): ("eta(1)^3*eta(7)^3", None, -7),
    Fraction(-1, 64): ("eta(1)^3*eta(7)^3", -4, -7),
}

SINGULAR_LAMBDAS = tuple(LAMBDA_FORMS)


@lru_cache(maxsize=32)
def lambda_series(lam: Fraction, n_terms: int = 2704) -> CoefficientSeries:
    """Coefficient series of the weight-3 form attached to a singular lambda,
    with its nebentypus and level support filled in."""
    if lam not in LAMBDA_FORMS:
        raise SeriesError(f"lambda = {lam} is not one of the singular parameters")
    if n_terms < 49:
        raise SeriesError("need at least 49 terms to pin the level support")
    spec_text, twist, neb = LAMBDA_FORMS[lam]
    product = EtaProduct(parse_eta_spec(spec_text).factors, twist)
    raw = eta_product_series(product, n_terms)
    # the level support of these forms lies below 8; a(p^2) up to p = 7 pins it
    bad = frozenset(p for p, v in infer_character(raw, 3, 7).items() if v == 0)
    spec = HeckeSpec(weight=3, disc=neb, bad_primes=bad)
    return CoefficientSeries(spec, raw.coefficients())
