import random

import pytest

from qirank.gaussian import GaussInt, I, ONE, ONE_PLUS_I, primary_associate
from qirank.primes import is_gaussian_prime, primary_primes_up_to_norm
from qirank.residues import (
    MNInvariant,
    brute_force_symbol,
    euler_symbol,
    mn_invariants,
    mod4_consistency,
    symbol_i,
    symbol_one_plus_i,
)


def gi(re, im=0):
    return GaussInt(re, im)


def random_primary(rng, bound=10**4):
    while True:
        a = GaussInt(rng.randint(-bound, bound), rng.randint(-bound, bound))
        if a and a.is_odd():
            return primary_associate(a)[0]


def random_primary_prime(rng, norm_bound=10**5):
    side = int(norm_bound ** 0.5)
    while True:
        a = GaussInt(rng.randint(-side, side), rng.randint(-side, side))
        if a.norm() < norm_bound and a.is_odd() and is_gaussian_prime(a):
            return primary_associate(a)[0]


class TestMNInvariants:
    def test_generators_and_identity(self):
        assert mn_invariants(gi(-1, -6)) == MNInvariant(0, 1)
        assert mn_invariants(gi(1, -4)) == MNInvariant(1, 0)
        assert mn_invariants(ONE) == MNInvariant(0, 0)
        assert mn_invariants(gi(-25, -2)) == MNInvariant(1, 1)

    def test_rejects_non_primary(self):
        with pytest.raises(ValueError):
            mn_invariants(gi(2, 1))
        with pytest.raises(ValueError):
            mn_invariants(ONE_PLUS_I)
        with pytest.raises(ValueError):
            mn_invariants(gi(0))

    def test_additivity(self):
        rng = random.Random(30)
        for _ in range(500):
            a, b = random_primary(rng), random_primary(rng)
            assert mn_invariants(a * b) == mn_invariants(a) + mn_invariants(b)

    def test_mod4_consistency(self):
        rng = random.Random(31)
        for _ in range(200):
            assert mod4_consistency(random_primary(rng))


class TestEulerSymbol:
    def test_known_values(self):
        p = gi(-1, -6)
        assert euler_symbol(I, p) == -1
        assert euler_symbol(ONE_PLUS_I, p) == 1
        assert euler_symbol(gi(-1, 2), gi(-1, -2)) == -1
        for q in (gi(-1, -6), gi(-1, 2), gi(-3), gi(2, 1)):
            assert euler_symbol(gi(4), q) == 1

    def test_preconditions(self):
        with pytest.raises(ValueError):
            euler_symbol(gi(3), gi(5))  # 5 is not prime in Z[i]
        with pytest.raises(ValueError):
            euler_symbol(gi(3), ONE_PLUS_I)  # even prime
        with pytest.raises(ValueError):
            euler_symbol(gi(-2, -12), gi(-1, -6))  # p | alpha

    def test_brute_force_oracle_sample(self):
        rng = random.Random(32)
        for p in primary_primes_up_to_norm(600):
            for _ in range(5):
                a = GaussInt(rng.randint(-40, 40), rng.randint(-40, 40))
                try:
                    s = euler_symbol(a, p)
                except ValueError:
                    continue
                assert s == brute_force_symbol(a, p)

    def test_multiplicative(self):
        rng = random.Random(33)
        checked = 0
        while checked < 100:
            p = random_primary_prime(rng, 10**4)
            a = GaussInt(rng.randint(-100, 100), rng.randint(-100, 100))
            b = GaussInt(rng.randint(-100, 100), rng.randint(-100, 100))
            try:
                lhs = euler_symbol(a * b, p)
                rhs = euler_symbol(a, p) * euler_symbol(b, p)
            except ValueError:
                continue
            assert lhs == rhs
            checked += 1

    def test_squares_are_residues(self):
        rng = random.Random(34)
        checked = 0
        while checked < 50:
            p = random_primary_prime(rng, 10**4)
            a = GaussInt(rng.randint(-50, 50), rng.randint(-50, 50))
            try:
                s = euler_symbol(a * a, p)
            except ValueError:
                continue
            assert s == 1
            checked += 1


class TestQuarticReciprocity:
    def test_symmetry_random_pairs(self):
        rng = random.Random(35)
        seen = 0
        while seen < 200:
            p = random_primary_prime(rng)
            q = random_primary_prime(rng)
            if p == q:
                continue
            assert euler_symbol(p, q) == euler_symbol(q, p)
            seen += 1


class TestFormulaSymbols:
    def test_known_values(self):
        assert symbol_i(gi(-1, -6)) == -1
        assert symbol_one_plus_i(gi(-1, -6)) == 1
        assert symbol_i(gi(1, -4)) == 1

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            symbol_i(gi(2, 1))  # prime but not primary
        with pytest.raises(ValueError):
            symbol_one_plus_i(gi(9))  # not prime

    def test_agrees_with_euler_small(self):
        for p in primary_primes_up_to_norm(2000):
            assert symbol_i(p) == euler_symbol(I, p)
            assert symbol_one_plus_i(p) == euler_symbol(ONE_PLUS_I, p)
