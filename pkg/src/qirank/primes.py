"""Gaussian prime testing, factorization into primary primes, enumeration.

Rational integer factorization is delegated to sympy; everything Gaussian
(splitting, primary normalization, ordering) is done here exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from sympy import factorint

from .gaussian import (
    GaussInt,
    GaussLike,
    I_POWERS,
    ONE_PLUS_I,
    _coerce,
    divides,
    divmod_nearest,
    exact_div,
    is_primary,
    primary_associate,
    ram_valuation,
    unit_log,
)

# Miller-Rabin with these bases is deterministic for n < 3_317_044_064_679_887_385_961_981
# (about 3.3e24), which covers the desk-scale norms this toolkit targets.
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# Extra bases for larger inputs: probabilistic with error < 4**-28 per composite.
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103,
                   107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167,
                   173, 179)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53,
                 59, 61, 67, 71, 73, 79, 83, 89, 97)


def _miller_rabin_witness(n: int, a: int, d: int, s: int) -> bool:
    """True iff a witnesses that n is composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


@lru_cache(maxsize=1 << 20)
def is_rational_prime(n: int) -> bool:
    """Primality of a rational integer.

    Deterministic below ~3.3e24 (fixed Miller-Rabin base set); strong
    probabilistic with error below 4**-28 above that.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES
    if n >= _MR_DETERMINISTIC_BOUND:
        bases = _MR_BASES + _MR_EXTRA_BASES
    return not any(_miller_rabin_witness(n, a, d, s) for a in bases)


def is_gaussian_prime(alpha: GaussLike) -> bool:
    """True iff alpha is prime in Z[i].

    Split and ramified primes have rational prime norm; inert primes are the
    associates of rational primes q = 3 mod 4.
    """
    a = _coerce(alpha)
    n = a.norm()
    if n < 2:
        return False
    if is_rational_prime(n):
        return True
    if a.re != 0 and a.im != 0:
        return False
    q = abs(a.re or a.im)
    return q % 4 == 3 and is_rational_prime(q)


@dataclass(frozen=True, slots=True)
class PrimaryFactorization:
    """alpha = i**s * (1+i)**t * prod(p**e) with primary primes p.

    Factors are pairwise non-associate and ordered by (norm, re, im).
    """

    s: int
    t: int
    factors: tuple[tuple[GaussInt, int], ...]

    def value(self) -> GaussInt:
        acc = I_POWERS[self.s % 4] * ONE_PLUS_I ** self.t
        for p, e in self.factors:
            acc = acc * p ** e
        return acc

    def is_square_free(self) -> bool:
        return self.t <= 1 and all(e == 1 for _, e in self.factors)

    def is_square(self) -> bool:
        return (self.s % 2 == 0 and self.t % 2 == 0
                and all(e % 2 == 0 for _, e in self.factors))


def sqrt_minus_one_mod(p: int) -> int:
    """Smallest-witness square root of -1 modulo a prime p = 1 mod 4."""
    if p % 4 != 1:
        raise ValueError(f"{p} is not 1 mod 4")
    for a in range(2, p):
        if pow(a, (p - 1) // 2, p) == p - 1:
            x = pow(a, (p - 1) // 4, p)
            if x * x % p != p - 1:
                raise AssertionError(f"bad square root of -1 mod {p}")
            return x
    raise AssertionError(f"no quadratic non-residue found mod {p}")


def prime_above(p: int) -> GaussInt:
    """A primary Gaussian prime above the split rational prime p = 1 mod 4."""
    x = sqrt_minus_one_mod(p)
    g = _raw_gcd(GaussInt(p, 0), GaussInt(x, 1))
    pi, _ = primary_associate(g)
    return pi


def _raw_gcd(a: GaussInt, b: GaussInt) -> GaussInt:
    while b:
        _, r = divmod_nearest(a, b)
        a, b = b, r
    return a


def factor_primary(alpha: GaussLike) -> PrimaryFactorization:
    """The unique primary factorization of a nonzero Gaussian integer."""
    a = _coerce(alpha)
    if not a:
        raise ValueError("cannot factor zero")
    t = ram_valuation(a)
    u = exact_div(a, ONE_PLUS_I ** t)
    factors: list[tuple[GaussInt, int]] = []
    for p, e in sorted(factorint(u.norm()).items()):
        if p % 4 == 3:
            # inert: the primary associate of q is -q, contributing norm q**2
            if e % 2 != 0:
                raise AssertionError(f"odd inert exponent for {p} in norm")
            factors.append((GaussInt(-p, 0), e // 2))
            u = exact_div(u, GaussInt(-p, 0) ** (e // 2))
        else:
            pi = prime_above(p)
            for q in (pi, pi.conj()):
                q_plus, _ = primary_associate(q)
                mult = 0
                while divides(q_plus, u):
                    u = exact_div(u, q_plus)
                    mult += 1
                if mult:
                    factors.append((q_plus, mult))
    s = unit_log(u)
    factors.sort(key=lambda fe: (fe[0].norm(), fe[0].re, fe[0].im))
    return PrimaryFactorization(s=s, t=t, factors=tuple(factors))


def is_square(alpha: GaussLike) -> bool:
    """True iff alpha is a perfect square in Z[i] (zero counts)."""
    a = _coerce(alpha)
    if not a:
        return True
    return factor_primary(a).is_square()


def primes_in_box(
    re_range: tuple[int, int],
    im_range: tuple[int, int],
    residue_filter: Optional[tuple[GaussInt, GaussInt]] = None,
) -> Iterator[GaussInt]:
    """Yield every Gaussian prime in the box, in (re, im) lexicographic order.

    ``residue_filter`` = (cls, modulus) keeps only primes congruent to cls.
    Ranges are inclusive; an empty range yields nothing.
    """
    if residue_filter is not None:
        cls, modulus = residue_filter
        if not modulus:
            raise ValueError("zero modulus in residue filter")
    for a in range(re_range[0], re_range[1] + 1):
        for b in range(im_range[0], im_range[1] + 1):
            alpha = GaussInt(a, b)
            if residue_filter is not None and not divides(modulus, alpha - cls):
                continue
            if is_gaussian_prime(alpha):
                yield alpha


def primary_primes_up_to_norm(bound: int) -> list[GaussInt]:
    """All primary Gaussian primes of norm < bound, sorted by (norm, re, im)."""
    r = 1
    while r * r < bound:
        r += 1
    found = []
    for p in primes_in_box((-r, r), (-r, r)):
        if p.norm() < bound and p.is_odd() and is_primary(p):
            found.append(p)
    found.sort(key=lambda p: (p.norm(), p.re, p.im))
    return found


def rational_prime_sieve(limit: int) -> bytearray:
    """Bytearray sieve: sieve[n] == 1 iff n is prime, for 0 <= n <= limit."""
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    p = 2
    while p * p <= limit:
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
        p += 1
    return sieve
