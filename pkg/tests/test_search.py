import random
from fractions import Fraction

import pytest

from qirank.gaussian import GaussInt
from qirank.search import (
    Box,
    ConstellationHit,
    Rejection,
    TARGET_CLASS,
    constellation_at,
    constellation_primes,
    find_first_hit,
    prime_density_stats,
    residue_prefilter,
    search_region,
)

# first hit of the canonical expanding schedule; frozen regression constant
FROZEN_BETA = GaussInt(15, 10)
FROZEN_K = 16
FROZEN_PRIMES = (
    GaussInt(-1, 26),
    GaussInt(-1, -6),
    GaussInt(31, -6),
    GaussInt(31, 26),
)


def gi(re, im=0):
    return GaussInt(re, im)


def congruent_mod16(p):
    return (p.re - TARGET_CLASS.re) % 16 == 0 and (p.im - TARGET_CLASS.im) % 16 == 0


class TestConstellationPrimes:
    def test_j_order(self):
        values = constellation_primes(FROZEN_BETA, FROZEN_K)
        assert values == FROZEN_PRIMES

    def test_sum_and_difference_identities(self):
        rng = random.Random(70)
        for _ in range(100):
            b = GaussInt(rng.randint(-50, 50), rng.randint(-50, 50))
            k = rng.randint(-50, 50)
            p1, p2, p3, p4 = constellation_primes(b, k)
            assert p1 + p3 == 2 * b
            assert p2 + p4 == 2 * b
            assert p1 - p4 == gi(-2 * k)

    def test_product_identity(self):
        rng = random.Random(71)
        for _ in range(1000):
            b = GaussInt(rng.randint(-100, 100), rng.randint(-100, 100))
            k = rng.randint(-100, 100)
            p1, p2, p3, p4 = constellation_primes(b, k)
            assert p1 * p2 * p3 * p4 == b ** 4 + gi(4 * k ** 4)


class TestConstellationAt:
    def test_k_zero_rejected(self):
        result = constellation_at(gi(7, 2), 0)
        assert isinstance(result, Rejection)
        assert result.reason == "primes not distinct"

    def test_k_not_multiple_of_8_fails_congruence(self):
        for k in (1, 2, 4, 7, 12):
            result = constellation_at(FROZEN_BETA, k)
            assert isinstance(result, Rejection)
            assert "not congruent" in result.reason

    def test_frozen_hit_validates(self):
        result = constellation_at(FROZEN_BETA, FROZEN_K)
        assert isinstance(result, ConstellationHit)
        assert result.primes == FROZEN_PRIMES
        assert len(set(result.primes)) == 4
        for p in result.primes:
            assert congruent_mod16(p)

    def test_prime_failure_names_condition(self):
        # beta = -1-6i, k = 16 puts p_2 = -33-22i = -11(3+2i), not prime
        result = constellation_at(gi(-1, -6), 16)
        assert isinstance(result, Rejection)
        assert "not a Gaussian prime" in result.reason


class TestResiduePrefilter:
    def test_exhaustive_soundness(self):
        # filter == direct four-congruence test across all 256 * 16 residue
        # combinations; k-class 0 is represented by k = 16 to keep k nonzero
        for br in range(16):
            for bi in range(16):
                beta = GaussInt(br, bi)
                for k0 in range(16):
                    k = k0 if k0 != 0 else 16
                    direct = all(
                        congruent_mod16(p) for p in constellation_primes(beta, k)
                    )
                    assert residue_prefilter(beta, k) == direct, (br, bi, k0)

    def test_rejects_k_zero(self):
        assert not residue_prefilter(gi(15, 10), 0)

    def test_accepts_frozen(self):
        assert residue_prefilter(FROZEN_BETA, FROZEN_K)


class TestSearchRegion:
    def test_empty_region(self):
        assert search_region(Box(5, 4, 0, 0), (-64, 64)) == []
        assert search_region(Box.centered(20), (1, 7)) == []

    def test_shard_determinism(self):
        box = Box.centered(40)
        h1 = search_region(box, (-40, 40), shards=1)
        h8 = search_region(box, (-40, 40), shards=8)
        assert h1 == h8
        assert h1  # the region contains the frozen hit

    def test_canonical_order(self):
        hits = search_region(Box.centered(48), (-48, 48))
        keys = [h.sort_key() for h in hits]
        assert keys == sorted(keys)
        assert len(set(keys)) == len(keys)

    def test_first_hit_is_frozen_constant(self):
        hits = search_region(Box.centered(32), (-32, 32))
        assert hits[0].beta == FROZEN_BETA
        assert hits[0].k == FROZEN_K
        assert hits[0].primes == FROZEN_PRIMES

    def test_im_beta_class(self):
        for h in search_region(Box.centered(48), (-48, 48)):
            assert h.beta.im % 8 == 2

    def test_progress_records(self):
        records = []
        search_region(Box.centered(20), (-16, 16), shards=2, progress=records.append)
        assert len(records) == 2
        for rec in records:
            assert rec["event"] == "shard_done"
            assert rec["candidates"] >= rec["filter_pass"] >= rec["hits"]


class TestFindFirstHit:
    def test_returns_frozen_hit(self):
        hit = find_first_hit(initial_radius=32, max_radius=256)
        assert (hit.beta, hit.k) == (FROZEN_BETA, FROZEN_K)

    def test_expands_before_failing(self):
        events = []
        with pytest.raises(RuntimeError):
            find_first_hit(initial_radius=2, max_radius=4, progress=events.append)
        rounds = [e for e in events if e["event"] == "round_done"]
        assert [r["radius"] for r in rounds] == [2, 4]


class TestDensityStats:
    def test_tiny_box(self):
        stats = prime_density_stats(Box(0, 0, 0, 0))
        assert stats.total_primes == 0
        assert stats.target_ratio == Fraction(0)

    def test_small_box_census(self):
        from qirank.primes import is_gaussian_prime

        stats = prime_density_stats(Box.centered(30))
        brute_total = sum(
            1
            for a in range(-30, 31)
            for b in range(-30, 31)
            if is_gaussian_prime(GaussInt(a, b))
        )
        assert stats.total_primes == brute_total
        brute_target = sum(
            1
            for a in range(-30, 31)
            for b in range(-30, 31)
            if is_gaussian_prime(GaussInt(a, b))
            and congruent_mod16(GaussInt(a, b))
        )
        assert stats.target_count == brute_target

    def test_associate_union_is_four_classes(self):
        stats = prime_density_stats(Box.centered(200))
        # the four associate classes partition the associates of each prime
        assert stats.associate_union_count() >= stats.target_count
        per_class = [
            stats.class_counts.get(((TARGET_CLASS * GaussInt(0, 1) ** j).re % 16,
                                    (TARGET_CLASS * GaussInt(0, 1) ** j).im % 16), 0)
            for j in range(4)
        ]
        assert sum(per_class) == stats.associate_union_count()
        # associate symmetry: the four counts agree exactly (multiplication
        # by i permutes the prime set and the classes)
        assert len(set(per_class)) == 1
