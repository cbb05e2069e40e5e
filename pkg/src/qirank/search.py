"""Search for (beta, k) making beta + i^j k(1+i), j = 1..4, simultaneously
prime and congruent to -1-6i mod 16.

The residue pre-filter (k a multiple of 8, beta in one of two classes mod 16
depending on k mod 16) is exhaustively proven equivalent to the direct
four-congruence test in the test suite, but remains an optimization only:
every candidate that passes it still gets the direct congruence and
primality tests.  Sharded searches merge deterministically, so output never
depends on the shard count.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .gaussian import GaussInt, GaussLike, I_POWERS, ONE_PLUS_I, _coerce
from .primes import is_gaussian_prime, rational_prime_sieve

TARGET_CLASS = GaussInt(-1, -6)
# beta residues mod 16 compatible with the target class, by k mod 16
_BETA_CLASS_K0 = (15, 10)   # k = 0 mod 16: beta = -1-6i
_BETA_CLASS_K8 = (7, 2)     # k = 8 mod 16: beta = -1-6i - 8(1+i)

# offsets i^j (1+i) in j-order, j = 1..4
OFFSETS = tuple(I_POWERS[j % 4] * ONE_PLUS_I for j in (1, 2, 3, 4))


@dataclass(frozen=True, slots=True)
class Box:
    """An inclusive lattice rectangle for beta."""

    re_min: int
    re_max: int
    im_min: int
    im_max: int

    @classmethod
    def centered(cls, radius: int) -> "Box":
        return cls(-radius, radius, -radius, radius)

    def __contains__(self, beta: GaussInt) -> bool:
        return (self.re_min <= beta.re <= self.re_max
                and self.im_min <= beta.im <= self.im_max)

    def split_re(self, shards: int) -> list["Box"]:
        """Partition into at most ``shards`` sub-boxes along the real axis."""
        width = self.re_max - self.re_min + 1
        if width <= 0 or self.im_max < self.im_min:
            return []
        shards = max(1, min(shards, width))
        bounds = [self.re_min + (width * s) // shards for s in range(shards + 1)]
        return [
            Box(bounds[s], bounds[s + 1] - 1, self.im_min, self.im_max)
            for s in range(shards)
            if bounds[s + 1] > bounds[s]
        ]


@dataclass(frozen=True, slots=True)
class ConstellationHit:
    """A verified constellation: beta, k, and the four primes in j-order."""

    beta: GaussInt
    k: int
    primes: tuple[GaussInt, GaussInt, GaussInt, GaussInt]

    def sort_key(self) -> tuple[int, int, int, int, int]:
        return (
            max(abs(self.beta.re), abs(self.beta.im)),
            abs(self.k),
            0 if self.k > 0 else 1,
            self.beta.re,
            self.beta.im,
        )


@dataclass(frozen=True, slots=True)
class Rejection:
    """Why a candidate (beta, k) is not a constellation."""

    reason: str


def constellation_primes(beta: GaussLike, k: int) -> tuple[GaussInt, ...]:
    """The four values beta + i^j k (1+i), j = 1..4."""
    b = _coerce(beta)
    return tuple(b + off * k for off in OFFSETS)


def constellation_at(beta: GaussLike, k: int) -> Union[ConstellationHit, Rejection]:
    """Full check of one candidate; a Rejection names the first failed condition."""
    b = _coerce(beta)
    if k == 0:
        return Rejection("primes not distinct")
    values = constellation_primes(b, k)
    for j, p in enumerate(values, start=1):
        if (p.re - TARGET_CLASS.re) % 16 or (p.im - TARGET_CLASS.im) % 16:
            return Rejection(f"p_{j} = {p} is not congruent to -1-6i mod 16")
    for j, p in enumerate(values, start=1):
        if not is_gaussian_prime(p):
            return Rejection(f"p_{j} = {p} is not a Gaussian prime")
    hit = ConstellationHit(beta=b, k=k, primes=values)
    # algebraic identity; cheap cross-check that the offsets are right
    product = values[0] * values[1] * values[2] * values[3]
    assert product == b ** 4 + GaussInt(4 * k ** 4, 0)
    return hit


def residue_prefilter(beta: GaussLike, k: int) -> bool:
    """Fast residue test equivalent to the four mod-16 congruences."""
    if k % 8 != 0 or k == 0:
        return False
    b = _coerce(beta)
    cls = _BETA_CLASS_K0 if k % 16 == 0 else _BETA_CLASS_K8
    return (b.re % 16, b.im % 16) == cls


def _k_values(k_range: tuple[int, int]) -> list[int]:
    lo, hi = k_range
    start = lo + (-lo) % 8
    return [k for k in range(start, hi + 1, 8) if k != 0]


def _scan_shard(
    args: tuple[int, int, int, int, int, int]
) -> tuple[list[tuple[int, int, int]], int, int]:
    """Worker: scan one sub-box; returns (hits, candidates, filter passes)."""
    re_lo, re_hi, im_lo, im_hi, k_lo, k_hi = args
    ks = _k_values((k_lo, k_hi))
    ks_by_class = {
        _BETA_CLASS_K0: [k for k in ks if k % 16 == 0],
        _BETA_CLASS_K8: [k for k in ks if k % 16 != 0],
    }
    hits: list[tuple[int, int, int]] = []
    candidates = (re_hi - re_lo + 1) * (im_hi - im_lo + 1) * len(ks) \
        if re_hi >= re_lo and im_hi >= im_lo else 0
    passes = 0
    for a in range(re_lo, re_hi + 1):
        for b in range(im_lo, im_hi + 1):
            matching = ks_by_class.get((a % 16, b % 16))
            if not matching:
                continue
            beta = GaussInt(a, b)
            for k in matching:
                passes += 1
                result = constellation_at(beta, k)
                if isinstance(result, ConstellationHit):
                    hits.append((a, b, k))
    return hits, candidates, passes


ProgressFn = Callable[[dict], None]


def search_region(
    beta_box: Box,
    k_range: tuple[int, int],
    shards: int = 1,
    progress: Optional[ProgressFn] = None,
) -> list[ConstellationHit]:
    """Every hit in the region, each exactly once, in canonical order.

    The order (growing max(|Re beta|, |Im beta|), then |k|, positive k first,
    then beta lexicographically) is independent of the shard count.
    """
    if shards < 1:
        raise ValueError("shard count must be >= 1")
    sub_boxes = beta_box.split_re(shards)
    shard_args = [
        (sb.re_min, sb.re_max, sb.im_min, sb.im_max, k_range[0], k_range[1])
        for sb in sub_boxes
    ]
    raw: list[tuple[int, int, int]] = []
    if len(shard_args) <= 1:
        results = [_scan_shard(a) for a in shard_args]
    else:
        with ProcessPoolExecutor(max_workers=len(shard_args)) as pool:
            results = list(pool.map(_scan_shard, shard_args))
    for args, (shard_hits, candidates, passes) in zip(shard_args, results):
        raw.extend(shard_hits)
        if progress is not None:
            progress({
                "event": "shard_done",
                "region": {
                    "re_min": args[0], "re_max": args[1],
                    "im_min": args[2], "im_max": args[3],
                    "k_min": args[4], "k_max": args[5],
                },
                "candidates": candidates,
                "filter_pass": passes,
                "hits": len(shard_hits),
            })
    hits = [
        ConstellationHit(GaussInt(a, b), k, constellation_primes(GaussInt(a, b), k))
        for a, b, k in raw
    ]
    hits.sort(key=ConstellationHit.sort_key)
    return hits


def find_first_hit(
    initial_radius: int = 32,
    max_radius: int = 4096,
    shards: int = 1,
    progress: Optional[ProgressFn] = None,
) -> ConstellationHit:
    """First hit of the canonical expanding schedule.

    Round r searches beta with max(|re|, |im|) <= R and |k| <= R for
    R = initial_radius * 2**r, and returns the canonically-first hit of the
    first round that finds any.  Raises RuntimeError when max_radius is
    exhausted without a hit.
    """
    radius = initial_radius
    while radius <= max_radius:
        hits = search_region(
            Box.centered(radius), (-radius, radius), shards=shards, progress=progress
        )
        if progress is not None:
            progress({"event": "round_done", "radius": radius, "hits": len(hits)})
        if hits:
            return hits[0]
        radius *= 2
    raise RuntimeError(f"no constellation found up to radius {max_radius}")


@dataclass(frozen=True, slots=True)
class DensityStats:
    """Census of Gaussian primes in a box by residue class mod 16."""

    total_primes: int
    class_counts: dict[tuple[int, int], int]
    target_class: tuple[int, int]

    @property
    def target_count(self) -> int:
        return self.class_counts.get(self.target_class, 0)

    @property
    def target_ratio(self) -> Fraction:
        if self.total_primes == 0:
            return Fraction(0)
        return Fraction(self.target_count, self.total_primes)

    def associate_union_count(self) -> int:
        """Count over the four classes i^j * (-1-6i) mod 16."""
        total = 0
        cls = TARGET_CLASS
        for _ in range(4):
            total += self.class_counts.get((cls.re % 16, cls.im % 16), 0)
            cls = cls * GaussInt(0, 1)
        return total


def prime_density_stats(box: Box) -> DensityStats:
    """Exact per-class prime counts over the box (sieve-backed, no floats)."""
    max_re = max(abs(box.re_min), abs(box.re_max), 1)
    max_im = max(abs(box.im_min), abs(box.im_max), 1)
    limit = max_re * max_re + max_im * max_im
    sieve = rational_prime_sieve(limit)
    counts: dict[tuple[int, int], int] = {}
    total = 0
    for a in range(box.re_min, box.re_max + 1):
        aa = a * a
        for b in range(box.im_min, box.im_max + 1):
            n = aa + b * b
            if n < 2:
                continue
            if sieve[n]:
                prime = True
            elif (a == 0 or b == 0) and abs(a or b) % 4 == 3 and sieve[abs(a or b)]:
                prime = True
            else:
                prime = False
            if not prime:
                continue
            total += 1
            if n % 2 == 1:  # odd primes lie in invertible classes mod 16
                key = (a % 16, b % 16)
                counts[key] = counts.get(key, 0) + 1
    return DensityStats(
        total_primes=total,
        class_counts=counts,
        target_class=(TARGET_CLASS.re % 16, TARGET_CLASS.im % 16),
    )
