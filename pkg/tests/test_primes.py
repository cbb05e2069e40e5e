import random

import pytest

from qirank.gaussian import GaussInt, I, ONE_PLUS_I, is_primary, norm
from qirank.primes import (
    PrimaryFactorization,
    factor_primary,
    is_gaussian_prime,
    is_rational_prime,
    is_square,
    primary_primes_up_to_norm,
    prime_above,
    primes_in_box,
    rational_prime_sieve,
    sqrt_minus_one_mod,
)


def gi(re, im=0):
    return GaussInt(re, im)


class TestRationalPrimality:
    def test_small(self):
        sieve = rational_prime_sieve(10_000)
        for n in range(10_000):
            assert is_rational_prime(n) == bool(sieve[n]), n

    def test_large_known(self):
        assert is_rational_prime(2**61 - 1)
        assert not is_rational_prime(2**61 + 1)
        # Carmichael numbers must not fool the test
        assert not is_rational_prime(561)
        assert not is_rational_prime(1729)


class TestIsGaussianPrime:
    def test_known_values(self):
        assert is_gaussian_prime(gi(-1, -6))
        assert is_gaussian_prime(gi(3))
        assert not is_gaussian_prime(gi(5))

    def test_units_zero_ramified(self):
        assert not is_gaussian_prime(gi(0))
        assert not is_gaussian_prime(gi(1))
        assert not is_gaussian_prime(I)
        assert is_gaussian_prime(ONE_PLUS_I)
        assert is_gaussian_prime(gi(-1, 1))

    def test_split_cross_oracle(self):
        # for split candidates, primality agrees with primality of the norm
        rng = random.Random(20)
        for _ in range(300):
            a = GaussInt(rng.randint(-500, 500), rng.randint(-500, 500))
            if a.re == 0 or a.im == 0:
                continue
            assert is_gaussian_prime(a) == is_rational_prime(norm(a))

    def test_inert_cases(self):
        assert is_gaussian_prime(gi(0, 7))
        assert is_gaussian_prime(gi(-11))
        assert not is_gaussian_prime(gi(13))  # 13 = 1 mod 4 splits
        assert not is_gaussian_prime(gi(9))


class TestSqrtMinusOne:
    def test_values(self):
        for p in (5, 13, 17, 29, 37, 101, 65537):
            x = sqrt_minus_one_mod(p)
            assert x * x % p == p - 1

    def test_rejects_wrong_class(self):
        with pytest.raises(ValueError):
            sqrt_minus_one_mod(7)


class TestFactorPrimary:
    def test_known_values(self):
        assert factor_primary(gi(5)) == PrimaryFactorization(
            s=0, t=0, factors=((gi(-1, -2), 1), (gi(-1, 2), 1))
        )
        assert factor_primary(gi(-4)) == PrimaryFactorization(s=0, t=4, factors=())
        assert factor_primary(I) == PrimaryFactorization(s=1, t=0, factors=())

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            factor_primary(gi(0))

    def test_roundtrip_random(self):
        rng = random.Random(21)
        for _ in range(500):
            a = GaussInt(rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6))
            if not a:
                continue
            f = factor_primary(a)
            assert f.value() == a
            for p, e in f.factors:
                assert e >= 1
                assert is_gaussian_prime(p)
                assert is_primary(p)

    def test_factors_sorted_and_distinct(self):
        rng = random.Random(22)
        for _ in range(100):
            a = GaussInt(rng.randint(-10**5, 10**5), rng.randint(-10**5, 10**5))
            if not a:
                continue
            f = factor_primary(a)
            keys = [(norm(p), p.re, p.im) for p, _ in f.factors]
            assert keys == sorted(keys)
            assert len(set(keys)) == len(keys)

    def test_prime_above(self):
        for p in (5, 13, 17, 10007 * 0 + 101):
            pi = prime_above(p)
            assert norm(pi) == p
            assert is_primary(pi)
            assert is_gaussian_prime(pi)


class TestIsSquare:
    def test_cases(self):
        assert is_square(gi(-4))  # (1+i)^4
        assert is_square(gi(-1))  # i^2
        assert not is_square(gi(2))
        assert not is_square(gi(3))
        assert not is_square(I)

    def test_random_squares(self):
        rng = random.Random(23)
        for _ in range(50):
            a = GaussInt(rng.randint(-300, 300), rng.randint(-300, 300))
            if not a:
                continue
            assert is_square(a * a)


class TestPrimesInBox:
    def test_small_box_contents(self):
        found = set(primes_in_box((-2, 2), (-2, 2)))
        for p in (gi(1, 1), gi(2, 1), gi(1, 2), gi(-1, 2)):
            assert p in found
        # oracle: direct scan of the 25 lattice points
        oracle = {
            GaussInt(a, b)
            for a in range(-2, 3)
            for b in range(-2, 3)
            if is_gaussian_prime(GaussInt(a, b))
        }
        assert found == oracle

    def test_empty_and_degenerate(self):
        assert list(primes_in_box((0, 0), (0, 0))) == []
        assert list(primes_in_box((1, 0), (0, 5))) == []

    def test_lexicographic_order(self):
        out = list(primes_in_box((-5, 5), (-5, 5)))
        assert out == sorted(out, key=lambda p: (p.re, p.im))

    def test_residue_filter_census(self):
        target = gi(-1, -6)
        sixteen = gi(16)
        filtered = list(
            primes_in_box((-100, 100), (-100, 100), residue_filter=(target, sixteen))
        )
        brute = [
            p
            for p in primes_in_box((-100, 100), (-100, 100))
            if (p.re - target.re) % 16 == 0 and (p.im - target.im) % 16 == 0
        ]
        assert filtered == brute
        assert filtered  # the class is populated already at this scale


class TestPrimaryPrimesUpToNorm:
    def test_contents(self):
        ps = primary_primes_up_to_norm(200)
        assert all(is_primary(p) and is_gaussian_prime(p) for p in ps)
        assert all(norm(p) < 200 for p in ps)
        assert gi(-1, -2) in ps and gi(-1, 2) in ps and gi(-3) in ps
        # split p = 1 mod 4 contributes two primary primes, inert q contributes -q
        split_count = sum(1 for p in ps if p.im != 0)
        inert = sorted(-p.re for p in ps if p.im == 0)
        assert inert == [3, 7, 11]
        assert split_count == 2 * sum(
            1 for n in range(5, 200, 4) if is_rational_prime(n)
        )
