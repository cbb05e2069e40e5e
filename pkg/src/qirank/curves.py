"""Exact point arithmetic on y^2 = x^3 + a*x over Q(i).

Curve coefficients are Gaussian integers; point coordinates are exact
elements of Q(i).  Alongside the chord-tangent group law this module houses
the complex-multiplication automorphism, the 2-isogeny pair between E_a and
E_(-4a), the twist isomorphism between them, and the torsion classification
for congruent number curves E_(g^2) with g square-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd as _int_gcd, isqrt
from typing import Optional

from .gaussian import (
    GaussInt,
    GaussLike,
    GaussRat,
    I,
    ONE_PLUS_I,
    RAT_ZERO,
    _coerce,
    _coerce_rat,
)
from .primes import factor_primary


@dataclass(frozen=True, slots=True)
class CurvePoint:
    """An affine point with exact Q(i) coordinates, or the point at infinity."""

    x: Optional[GaussRat]
    y: Optional[GaussRat]

    @classmethod
    def affine(cls, x, y) -> "CurvePoint":
        return cls(_coerce_rat(x), _coerce_rat(y))

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        if self.is_infinity:
            return "O"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": self.x.to_json(), "y": self.y.to_json()}

    @classmethod
    def from_json(cls, obj) -> "CurvePoint":
        if obj == "infinity":
            return cls.infinity()
        return cls(GaussRat.from_json(obj["x"]), GaussRat.from_json(obj["y"]))


INFINITY = CurvePoint.infinity()
ORIGIN = CurvePoint.affine(0, 0)


def on_curve(alpha: GaussLike, point: CurvePoint) -> bool:
    """True iff the point satisfies y^2 = x^3 + alpha*x exactly (O counts)."""
    if point.is_infinity:
        return True
    a = _coerce_rat(_coerce(alpha))
    return point.y * point.y == point.x ** 3 + a * point.x


def _require_on_curve(alpha: GaussLike, point: CurvePoint) -> None:
    if not on_curve(alpha, point):
        raise ValueError(f"{point} is not on y^2 = x^3 + ({alpha})x")


def negate(point: CurvePoint) -> CurvePoint:
    if point.is_infinity:
        return point
    return CurvePoint(point.x, -point.y)


def add(alpha: GaussLike, p: CurvePoint, q: CurvePoint) -> CurvePoint:
    """Chord-tangent sum of two points on y^2 = x^3 + alpha*x."""
    _require_on_curve(alpha, p)
    _require_on_curve(alpha, q)
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    a = _coerce_rat(_coerce(alpha))
    if p.x == q.x:
        if p.y == -q.y:
            return INFINITY
        # doubling; y != 0 here since y = -y was excluded
        lam = (3 * (p.x * p.x) + a) / (2 * p.y)
    else:
        lam = (q.y - p.y) / (q.x - p.x)
    x3 = lam * lam - p.x - q.x
    y3 = lam * (p.x - x3) - p.y
    return CurvePoint(x3, y3)


def scalar_mul(alpha: GaussLike, n: int, point: CurvePoint) -> CurvePoint:
    if n < 0:
        return scalar_mul(alpha, -n, negate(point))
    acc = INFINITY
    addend = point
    while n:
        if n & 1:
            acc = add(alpha, acc, addend)
        addend = add(alpha, addend, addend)
        n >>= 1
    return acc


def cm_apply(point: CurvePoint) -> CurvePoint:
    """The automorphism [i]: (x, y) -> (-x, iy), fixing O and (0,0)."""
    if point.is_infinity:
        return point
    return CurvePoint(-point.x, point.y * GaussRat.of(I))


def phi_forward(alpha: GaussLike, point: CurvePoint) -> CurvePoint:
    """The degree-2 isogeny E_alpha -> E_(-4 alpha).

    Kernel {O, (0,0)}; elsewhere (x, y) -> (y^2/x^2, y(alpha - x^2)/x^2).
    """
    _require_on_curve(alpha, point)
    if point.is_infinity or point == ORIGIN:
        return INFINITY
    a = _coerce_rat(_coerce(alpha))
    x_sq = point.x * point.x
    image = CurvePoint(point.y * point.y / x_sq, point.y * (a - x_sq) / x_sq)
    assert on_curve(_coerce(alpha) * GaussInt(-4, 0), image)
    return image


def phi_dual(alpha: GaussLike, point: CurvePoint) -> CurvePoint:
    """The dual isogeny E_(-4 alpha) -> E_alpha.

    Kernel {O, (0,0)}; elsewhere (x, y) -> (y^2/(4x^2), -y(4 alpha + x^2)/(8x^2)).
    Composing with phi_forward is duplication on E_alpha.
    """
    _require_on_curve(_coerce(alpha) * GaussInt(-4, 0), point)
    if point.is_infinity or point == ORIGIN:
        return INFINITY
    a = _coerce_rat(_coerce(alpha))
    x_sq = point.x * point.x
    image = CurvePoint(
        point.y * point.y / (4 * x_sq),
        -point.y * (4 * a + x_sq) / (8 * x_sq),
    )
    assert on_curve(alpha, image)
    return image


_IOTA_X = GaussRat.of(ONE_PLUS_I * ONE_PLUS_I)   # (1+i)^2
_IOTA_Y = GaussRat.of(ONE_PLUS_I ** 3)           # (1+i)^3


def twist_iso(alpha: GaussLike, point: CurvePoint) -> CurvePoint:
    """The isomorphism E_(-4 alpha) -> E_alpha, (x, y) -> (x/(1+i)^2, y/(1+i)^3)."""
    _require_on_curve(_coerce(alpha) * GaussInt(-4, 0), point)
    if point.is_infinity:
        return point
    image = CurvePoint(point.x / _IOTA_X, point.y / _IOTA_Y)
    assert on_curve(alpha, image)
    return image


def twist_iso_inv(alpha: GaussLike, point: CurvePoint) -> CurvePoint:
    """Exact inverse of twist_iso: E_alpha -> E_(-4 alpha)."""
    _require_on_curve(alpha, point)
    if point.is_infinity:
        return point
    image = CurvePoint(point.x * _IOTA_X, point.y * _IOTA_Y)
    assert on_curve(_coerce(alpha) * GaussInt(-4, 0), image)
    return image


# reference data: every torsion group an elliptic curve over Q(i) can have.
# The curves in this module only ever realize Z2xZ2 and Z2xZ4.
QI_TORSION_GROUP_LABELS = (
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "Z9", "Z10", "Z12", "Z13",
    "Z2xZ2", "Z2xZ4", "Z2xZ6", "Z2xZ8",
    "Z4xZ4",
)


@dataclass(frozen=True, slots=True)
class TorsionGroup:
    """The full torsion of E_(g^2)(Q(i)): label plus the explicit points."""

    label: str  # "Z2xZ2" or "Z2xZ4"
    points: tuple[CurvePoint, ...]


def _is_rational_square(num: int, den: int) -> bool:
    """Exact test for num/den (den != 0) being a square in Q."""
    if num == 0:
        return True
    if num * den < 0:
        return False
    num, den = abs(num), abs(den)
    g = _int_gcd(num, den)
    num, den = num // g, den // g
    rn, rd = isqrt(num), isqrt(den)
    return rn * rn == num and rd * rd == den


def rational_in_qi_square(q_num: int, q_den: int) -> bool:
    """True iff the rational q_num/q_den is a square in Q(i).

    A rational is a Q(i)-square exactly when it or its negative is a square
    in Q (squares in Q(i) with rational value are (a)^2 or (bi)^2).
    """
    return _is_rational_square(q_num, q_den) or _is_rational_square(-q_num, q_den)


def _check_no_order3_or_extra_order4() -> None:
    """Square-class checks behind the torsion classification.

    An order-3 point would need sqrt(3) in Q(i); a root of the quartic
    factor of the order-4 condition would need sqrt(2) in Q(i).  Neither
    rational is a Q(i)-square.
    """
    if rational_in_qi_square(3, 1):
        raise AssertionError("3 unexpectedly a square in Q(i)")
    if rational_in_qi_square(2, 1):
        raise AssertionError("2 unexpectedly a square in Q(i)")


def two_torsion_points(gamma: GaussLike) -> tuple[CurvePoint, ...]:
    """The four 2-torsion points {O, (0,0), (gamma*i, 0), (-gamma*i, 0)} of E_(gamma^2)."""
    g = _coerce(gamma)
    if not g:
        raise ValueError("gamma = 0 gives a singular curve")
    gi_ = g * I
    return (
        INFINITY,
        ORIGIN,
        CurvePoint.affine(gi_, 0),
        CurvePoint.affine(-gi_, 0),
    )


def _validate_square_free(gamma: GaussInt) -> None:
    if not gamma:
        raise ValueError("gamma must be nonzero")
    if not factor_primary(gamma).is_square_free():
        raise ValueError(f"{gamma} is not square-free")


# torsion of E_(-1): the 2-torsion plus four points of order 4
_ORDER4_POINTS = (
    CurvePoint.affine(I, GaussInt(1, -1)),
    CurvePoint.affine(I, GaussInt(-1, 1)),
    CurvePoint.affine(GaussInt(0, -1), GaussInt(1, 1)),
    CurvePoint.affine(GaussInt(0, -1), GaussInt(-1, -1)),
)


def torsion_subgroup(
    gamma: GaussLike, *, assume_square_free: bool = False
) -> TorsionGroup:
    """The torsion subgroup of E_(gamma^2)(Q(i)) for square-free gamma.

    Z2xZ4 exactly when gamma = +/-i (both give the curve y^2 = x^3 - x);
    Z2xZ2 with the explicit 2-torsion points otherwise.  Set
    ``assume_square_free`` when square-freeness was already established by
    other means (e.g. an exhibited prime factorization), to skip refactoring.
    """
    g = _coerce(gamma)
    if not assume_square_free:
        _validate_square_free(g)
    elif not g:
        raise ValueError("gamma must be nonzero")
    _check_no_order3_or_extra_order4()
    if g == I or g == -I:
        return TorsionGroup("Z2xZ4", two_torsion_points(g) + _ORDER4_POINTS)
    return TorsionGroup("Z2xZ2", two_torsion_points(g))


def is_torsion(
    gamma: GaussLike, point: CurvePoint, *, assume_square_free: bool = False
) -> bool:
    """Torsion membership on E_(gamma^2) for square-free nonzero gamma.

    Away from gamma = +/-i every torsion point other than O has y = 0; for
    gamma = +/-i membership is checked against the explicit 8-point set.
    """
    g = _coerce(gamma)
    if not assume_square_free:
        _validate_square_free(g)
    elif not g:
        raise ValueError("gamma must be nonzero")
    _require_on_curve(g * g, point)
    if g == I or g == -I:
        return point in torsion_subgroup(g, assume_square_free=True).points
    return point.is_infinity or point.y == RAT_ZERO
