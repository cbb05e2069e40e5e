"""Exact arithmetic in Z[i] and Q(i).

Everything here is integer-exact: no floats anywhere.  The two value types
are ``GaussInt`` (a + bi with arbitrary-precision integer parts) and
``GaussRat`` (a reduced fraction of two GaussInts, the coordinate field for
curve points).  All values are immutable and safe to share across threads.
"""

from __future__ import annotations

import re as _re
from dataclasses import dataclass
from typing import Union

GaussLike = Union["GaussInt", int]

_GAUSS_FULL_RE = _re.compile(
    r"""^\s*(?P<re>[+-]?\s*\d+)\s*(?P<im>[+-]\s*\d*)\s*[iI]\s*$"""
)
_GAUSS_IMAG_RE = _re.compile(r"""^\s*(?P<im>[+-]?\s*\d*)\s*[iI]\s*$""")
_GAUSS_REAL_RE = _re.compile(r"""^\s*(?P<re>[+-]?\s*\d+)\s*$""")


def _round_half_even(a: int, b: int) -> int:
    """Round a/b to the nearest integer, ties to the even integer.  b > 0."""
    q, r = divmod(a, b)
    twice = 2 * r
    if twice > b or (twice == b and q % 2 == 1):
        q += 1
    return q


@dataclass(frozen=True, slots=True)
class GaussInt:
    """A Gaussian integer re + im*i with exact integer parts."""

    re: int
    im: int

    @classmethod
    def parse(cls, text: str) -> "GaussInt":
        """Parse forms like ``3``, ``-i``, ``2i``, ``-1-6i`` (spaces allowed)."""
        m = _GAUSS_FULL_RE.match(text)
        if m:
            re_s = m.group("re").replace(" ", "")
            im_s = m.group("im").replace(" ", "")
            if im_s in ("+", "-"):
                im_s += "1"
            return cls(int(re_s), int(im_s))
        m = _GAUSS_IMAG_RE.match(text)
        if m:
            im_s = m.group("im").replace(" ", "")
            if im_s in ("", "+", "-"):
                im_s += "1"
            return cls(0, int(im_s))
        m = _GAUSS_REAL_RE.match(text)
        if m:
            return cls(int(m.group("re").replace(" ", "")), 0)
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")

    def __str__(self) -> str:
        if self.im == 0:
            return str(self.re)
        if self.im == 1:
            im_s = "i"
        elif self.im == -1:
            im_s = "-i"
        else:
            im_s = f"{self.im}i"
        if self.re == 0:
            return im_s
        return f"{self.re}{im_s}" if im_s.startswith("-") else f"{self.re}+{im_s}"

    def __repr__(self) -> str:
        return f"GaussInt({self.re}, {self.im})"

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __add__(self, other: GaussLike) -> "GaussInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: GaussLike) -> "GaussInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: GaussLike) -> "GaussInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "GaussInt":
        return GaussInt(-self.re, -self.im)

    def __mul__(self, other: GaussLike) -> "GaussInt":
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return GaussInt(self.re * o.re - self.im * o.im,
                        self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "GaussInt":
        if exponent < 0:
            raise ValueError("negative exponents are not defined in Z[i]")
        result = ONE
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conj(self) -> "GaussInt":
        return GaussInt(self.re, -self.im)

    def norm(self) -> int:
        """re**2 + im**2; zero iff the element is zero, and multiplicative."""
        return self.re * self.re + self.im * self.im

    def is_unit(self) -> bool:
        return self.norm() == 1

    def is_odd(self) -> bool:
        """True iff not divisible by 1+i, i.e. re and im have opposite parity."""
        return (self.re + self.im) % 2 == 1

    def to_json(self) -> dict[str, str]:
        return {"im": str(self.im), "re": str(self.re)}

    @classmethod
    def from_json(cls, obj: dict[str, str]) -> "GaussInt":
        return cls(int(obj["re"]), int(obj["im"]))


ZERO = GaussInt(0, 0)
ONE = GaussInt(1, 0)
I = GaussInt(0, 1)
ONE_PLUS_I = GaussInt(1, 1)

# i**0 .. i**3
I_POWERS = (ONE, I, GaussInt(-1, 0), GaussInt(0, -1))


def _coerce(x: GaussLike) -> GaussInt | None:
    if isinstance(x, GaussInt):
        return x
    if isinstance(x, int):
        return GaussInt(x, 0)
    return None


def norm(alpha: GaussLike) -> int:
    a = _coerce(alpha)
    if a is None:
        raise TypeError(f"expected GaussInt or int, got {type(alpha).__name__}")
    return a.norm()


def divmod_nearest(n: GaussLike, d: GaussLike) -> tuple[GaussInt, GaussInt]:
    """Euclidean division n = q*d + r with norm(r) <= norm(d)/2.

    q is the exact quotient n/d with each coordinate rounded to the nearest
    integer, ties resolved to the even integer, so the result is fully
    deterministic.
    """
    a, b = _coerce(n), _coerce(d)
    if a is None or b is None:
        raise TypeError("divmod_nearest expects GaussInt or int operands")
    nd = b.norm()
    if nd == 0:
        raise ZeroDivisionError("division by zero in Z[i]")
    t = a * b.conj()
    q = GaussInt(_round_half_even(t.re, nd), _round_half_even(t.im, nd))
    return q, a - q * b


def divides(d: GaussLike, a: GaussLike) -> bool:
    """True iff d | a in Z[i] (d != 0)."""
    dd, aa = _coerce(d), _coerce(a)
    nd = dd.norm()
    if nd == 0:
        raise ZeroDivisionError("zero divides only zero")
    t = aa * dd.conj()
    return t.re % nd == 0 and t.im % nd == 0


def exact_div(a: GaussLike, d: GaussLike) -> GaussInt:
    """Quotient a/d, raising if d does not divide a exactly."""
    q, r = divmod_nearest(a, d)
    if r:
        raise ValueError(f"{a} is not divisible by {d}")
    return q


def ram_valuation(alpha: GaussLike) -> int:
    """Largest t with (1+i)**t dividing alpha (alpha != 0)."""
    a = _coerce(alpha)
    if not a:
        raise ValueError("ram_valuation is undefined at zero")
    t = 0
    re, im = a.re, a.im
    while (re + im) % 2 == 0:
        # division by 1+i: (re+im)/2 + ((im-re)/2) i
        re, im = (re + im) // 2, (im - re) // 2
        t += 1
    return t


_ONE_PLUS_I_CUBED = ONE_PLUS_I ** 3  # -2 + 2i


def is_primary(alpha: GaussLike) -> bool:
    """True iff alpha is congruent to 1 mod (1+i)**3."""
    a = _coerce(alpha)
    return divides(_ONE_PLUS_I_CUBED, a - ONE)


def primary_associate(alpha: GaussLike) -> tuple[GaussInt, int]:
    """Return (a_plus, s) with alpha = i**s * a_plus and a_plus primary.

    Exactly one of the four associates of an odd element is congruent to 1
    mod (1+i)**3; units normalize to (1, s).  Even input is an error.
    """
    a = _coerce(alpha)
    if not a:
        raise ValueError("primary_associate is undefined at zero")
    if not a.is_odd():
        raise ValueError(f"{a} is divisible by 1+i; no primary associate exists")
    for s in range(4):
        candidate = a * I_POWERS[(4 - s) % 4]  # alpha * i**(-s)
        if is_primary(candidate):
            return candidate, s
    raise AssertionError(f"no primary associate found for {a}")  # unreachable


def unit_log(u: GaussLike) -> int:
    """s with u = i**s, for a unit u."""
    v = _coerce(u)
    for s, p in enumerate(I_POWERS):
        if v == p:
            return s
    raise ValueError(f"{u} is not a unit")


def canonical_associate(alpha: GaussLike) -> GaussInt:
    """Unique associate of the form (1+i)**t * u with u primary (alpha != 0).

    Writing alpha = i**s (1+i)**t u with u odd, the unit is absorbed and the
    odd part replaced by its primary associate.  Serves as the normal form
    for gcd results.
    """
    a = _coerce(alpha)
    if not a:
        raise ValueError("zero has no canonical associate")
    t = ram_valuation(a)
    u = exact_div(a, ONE_PLUS_I ** t)
    u_plus, _ = primary_associate(u)
    return (ONE_PLUS_I ** t) * u_plus


def gcd(alpha: GaussLike, beta: GaussLike) -> GaussInt:
    """A greatest common divisor in canonical associate form."""
    a, b = _coerce(alpha), _coerce(beta)
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        _, r = divmod_nearest(a, b)
        a, b = b, r
    return canonical_associate(a)


def mod_pow(base: GaussLike, exponent: int, modulus: GaussLike) -> GaussInt:
    """base**exponent reduced modulo modulus via divmod_nearest remainders."""
    if exponent < 0:
        raise ValueError("negative exponent")
    m = _coerce(modulus)
    if not m:
        raise ZeroDivisionError("zero modulus")
    _, acc = divmod_nearest(ONE, m)
    _, b = divmod_nearest(base, m)
    e = exponent
    while e:
        if e & 1:
            _, acc = divmod_nearest(acc * b, m)
        _, b = divmod_nearest(b * b, m)
        e >>= 1
    return acc


@dataclass(frozen=True, slots=True)
class GaussRat:
    """An exact element of Q(i), stored as num/den in reduced canonical form.

    The denominator is normalized to canonical associate form
    ((1+i)**t times a primary odd part), which makes equality componentwise
    and serialization byte-stable.  Construct via ``GaussRat.of``.
    """

    num: GaussInt
    den: GaussInt

    @classmethod
    def of(cls, num: GaussLike, den: GaussLike = 1) -> "GaussRat":
        n, d = _coerce(num), _coerce(den)
        if n is None or d is None:
            raise TypeError("GaussRat components must be GaussInt or int")
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            return cls(ZERO, ONE)
        g = gcd(n, d)
        n, d = exact_div(n, g), exact_div(d, g)
        # rotate by a unit so the denominator is canonical
        t = ram_valuation(d)
        _, s = primary_associate(exact_div(d, ONE_PLUS_I ** t))
        w = I_POWERS[(4 - s) % 4]
        return cls(n * w, d * w)

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __bool__(self) -> bool:
        return bool(self.num)

    def __add__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return GaussRat.of(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __sub__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return GaussRat.of(self.num * o.den - o.num * self.den, self.den * o.den)

    def __rsub__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self) -> "GaussRat":
        return GaussRat(-self.num, self.den)

    def __mul__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return GaussRat.of(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        if not o:
            raise ZeroDivisionError("division by zero in Q(i)")
        return GaussRat.of(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other: "GaussRat | GaussLike") -> "GaussRat":
        o = _coerce_rat(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, exponent: int) -> "GaussRat":
        if exponent < 0:
            if not self:
                raise ZeroDivisionError("zero to a negative power")
            return GaussRat.of(self.den, self.num) ** (-exponent)
        return GaussRat.of(self.num ** exponent, self.den ** exponent)

    def is_integral(self) -> bool:
        return self.den == ONE

    def as_gauss_int(self) -> GaussInt:
        if self.den != ONE:
            raise ValueError(f"{self} is not integral")
        return self.num

    def to_json(self) -> dict[str, dict[str, str]]:
        return {"den": self.den.to_json(), "num": self.num.to_json()}

    @classmethod
    def from_json(cls, obj: dict[str, dict[str, str]]) -> "GaussRat":
        return cls.of(GaussInt.from_json(obj["num"]), GaussInt.from_json(obj["den"]))


RAT_ZERO = GaussRat(ZERO, ONE)
RAT_ONE = GaussRat(ONE, ONE)


def _coerce_rat(x: "GaussRat | GaussLike") -> GaussRat | None:
    if isinstance(x, GaussRat):
        return x
    g = _coerce(x)
    if g is None:
        return None
    return GaussRat(g, ONE)
