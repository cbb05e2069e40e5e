"""End-to-end certification of rank-2 curves from prime constellations.

``certify`` runs every check on a candidate (beta, k): the four-prime
constellation conditions, genuineness over Q(i), the Selmer candidate set
with its dimension and rank bound, the torsion classification, and the
explicit non-torsion point.  The result is a self-contained certificate
that ``verify_certificate`` re-derives from (beta, k) alone and compares
field by field, so a certificate can be audited with no trust in the
producer.  Serialization is byte-stable: sorted keys, decimal strings,
no floats.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Union

from . import __version__
from .gaussian import GaussInt, GaussLike, I, _coerce
from .curves import (
    CurvePoint,
    TorsionGroup,
    cm_apply,
    is_torsion,
    on_curve,
    torsion_subgroup,
)
from .search import ConstellationHit, Rejection, constellation_at
from .selmer import DivisorClass, F2Matrix, SelmerReport, selmer_candidate_set

CERT_VERSION = "1"
CONCLUSION = "rank = 2, group ≅ ℤ² ⊕ (ℤ/2ℤ)²"
GAMMA_CONVENTION = "gamma = i*(beta^4 + 4*k^4)"

# the only two symbol matrices a valid constellation can produce, by the
# common value of (k / p_j)
MATRIX_SYMBOL_PLUS = F2Matrix.from_lists(
    [[1, 0, 0, 1], [0, 0, 1, 1], [0, 1, 1, 0], [1, 1, 0, 0]]
)
MATRIX_SYMBOL_MINUS = F2Matrix.from_lists(
    [[0, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 1], [0, 0, 1, 1]]
)
CONSTELLATION_MATRICES = (MATRIX_SYMBOL_PLUS, MATRIX_SYMBOL_MINUS)

# the Klein-four candidate set every valid constellation must produce
EXPECTED_CANDIDATES = (
    DivisorClass(False, ()),
    DivisorClass(False, (1, 2, 3, 4)),
    DivisorClass(True, (1, 3)),
    DivisorClass(True, (2, 4)),
)


@dataclass(frozen=True, slots=True)
class GenuineWitness:
    """Is the curve genuinely defined over Q(i), witnessed by Im((beta^4+4k^4)^2)."""

    value: bool
    im_gamma_squared: int


@dataclass(frozen=True, slots=True)
class FailureReport:
    """A certification failure: short reason plus the condition it violates."""

    reason: str
    condition: str


@dataclass(frozen=True, slots=True)
class Certificate:
    """Machine-checkable record of one certified rank-2 curve."""

    beta: GaussInt
    k: int
    primes: tuple[GaussInt, GaussInt, GaussInt, GaussInt]
    alpha: GaussInt
    selmer: SelmerReport
    genuine: GenuineWitness
    point: CurvePoint
    point_cm: CurvePoint
    torsion: TorsionGroup
    gamma_torsion: GaussInt
    conclusion: str
    version: str

    def to_json_obj(self) -> dict:
        return {
            "L": ["".join(str(b) for b in row) for row in self.selmer.matrix.to_lists()],
            "alpha": self.alpha.to_json(),
            "beta": self.beta.to_json(),
            "conclusion": self.conclusion,
            "genuine": {
                "im_gamma_squared": str(self.genuine.im_gamma_squared),
                "value": self.genuine.value,
            },
            "k": str(self.k),
            "point": self.point.to_json(),
            "point_cm": self.point_cm.to_json(),
            "primes": [p.to_json() for p in self.primes],
            "rank_upper": str(self.selmer.rank_upper),
            "selmer_candidates": [
                {
                    "primes": [str(j) for j in c.indices],
                    "unit": "i" if c.unit_i else "1",
                }
                for c in self.selmer.candidates
            ],
            "selmer_dim": str(self.selmer.dim),
            "toolchain": f"qirank {__version__}",
            "torsion": {
                "convention": GAMMA_CONVENTION,
                "gamma": self.gamma_torsion.to_json(),
                "group": self.torsion.label,
            },
            "version": self.version,
        }

    def to_json_bytes(self) -> bytes:
        return json.dumps(
            self.to_json_obj(), sort_keys=True, ensure_ascii=True,
            separators=(",", ":"),
        ).encode("ascii")


def is_genuine(beta: GaussLike, k: int) -> GenuineWitness:
    """The curve is genuine iff (beta^4 + 4k^4)^2 is not a rational integer."""
    b = _coerce(beta)
    gamma = b ** 4 + GaussInt(4 * k ** 4, 0)
    im = (gamma * gamma).im
    return GenuineWitness(value=(im != 0), im_gamma_squared=im)


def family_point(beta: GaussLike, k: int) -> CurvePoint:
    """(4 b^2 k^2, 2i b k (b^4 - 4k^4)), always on y^2 = x^3 - (b^4+4k^4)^2 x."""
    b = _coerce(beta)
    x = 4 * (b * b) * (k * k)
    y = 2 * I * b * k * (b ** 4 - GaussInt(4 * k ** 4, 0))
    return CurvePoint.affine(x, y)


def certify(beta: GaussLike, k: int) -> Union[Certificate, FailureReport]:
    """Run the full verification chain for (beta, k)."""
    b = _coerce(beta)
    result = constellation_at(b, k)
    if isinstance(result, Rejection):
        return FailureReport(
            reason=result.reason,
            condition="each of beta + i^j k(1+i), j = 1..4, must be a Gaussian prime "
                      "congruent to -1-6i mod 16, with k nonzero",
        )
    hit: ConstellationHit = result

    gamma = b ** 4 + GaussInt(4 * k ** 4, 0)
    product = hit.primes[0] * hit.primes[1] * hit.primes[2] * hit.primes[3]
    if product != gamma:
        return FailureReport(
            reason="product identity failed",
            condition="p_1 p_2 p_3 p_4 must equal beta^4 + 4k^4",
        )

    genuine = is_genuine(b, k)
    if not genuine.value:
        return FailureReport(
            reason="not genuine",
            condition="Im((beta^4 + 4k^4)^2) must be nonzero, otherwise the curve "
                      "is a base change from Q",
        )

    alpha = -(gamma * gamma)

    report = selmer_candidate_set("minus_square", hit.primes)
    if not any(report.matrix == m for m in CONSTELLATION_MATRICES):
        return FailureReport(
            reason="unexpected symbol matrix",
            condition="the matrix of pairwise residue symbols must be one of the "
                      "two constellation matrices",
        )
    if report.candidates != EXPECTED_CANDIDATES:
        return FailureReport(
            reason="unexpected Selmer candidate set",
            condition="candidates must be exactly {1, p1p2p3p4, i p1p3, i p2p4}",
        )
    if not report.is_group():
        return FailureReport(
            reason="candidate classes do not form a group",
            condition="the candidate set must be a subgroup of the divisor classes "
                      "modulo squares",
        )
    if report.dim != 2 or report.rank_upper != 2:
        return FailureReport(
            reason="selmer dimension is not 2",
            condition="dim span{candidates} = 2 and rank bound 2*dim - 2 = 2",
        )

    # square-freeness of gamma is certified by the four exhibited distinct
    # primary primes and the product identity, so skip refactoring
    gamma_torsion = I * gamma
    torsion = torsion_subgroup(gamma_torsion, assume_square_free=True)
    if torsion.label != "Z2xZ2":
        return FailureReport(
            reason="unexpected torsion",
            condition="E_(gamma^2) with square-free gamma != +-i has torsion "
                      "Z/2 x Z/2",
        )

    point = family_point(b, k)
    if not on_curve(alpha, point):
        return FailureReport(
            reason="point not on curve",
            condition="(4 b^2 k^2, 2i b k(b^4 - 4k^4)) must satisfy "
                      "y^2 = x^3 - (b^4+4k^4)^2 x",
        )
    if is_torsion(gamma_torsion, point, assume_square_free=True):
        return FailureReport(
            reason="point is torsion",
            condition="the exhibited point must have y != 0 (b != 0, k != 0 and "
                      "b^4 != 4k^4 since 4 is not a fourth power in Z[i])",
        )
    point_cm = cm_apply(point)
    if not on_curve(alpha, point_cm) or is_torsion(
        gamma_torsion, point_cm, assume_square_free=True
    ):
        return FailureReport(
            reason="CM image of point invalid",
            condition="the CM image (-x, iy) must be a non-torsion curve point",
        )

    return Certificate(
        beta=b,
        k=k,
        primes=hit.primes,
        alpha=alpha,
        selmer=report,
        genuine=genuine,
        point=point,
        point_cm=point_cm,
        torsion=torsion,
        gamma_torsion=gamma_torsion,
        conclusion=CONCLUSION,
        version=CERT_VERSION,
    )


def parse_certificate(data: Union[str, bytes, dict]) -> dict:
    """Parse raw certificate JSON into a dict, validating the basic shape."""
    if isinstance(data, (str, bytes)):
        obj = json.loads(data)
    else:
        obj = data
    if not isinstance(obj, dict):
        raise ValueError("certificate must be a JSON object")
    for field in ("beta", "k", "version"):
        if field not in obj:
            raise ValueError(f"certificate is missing the {field!r} field")
    return obj


def verify_certificate(data: Union[str, bytes, dict, Certificate]) -> bool:
    """Recompute everything from (beta, k) and compare field by field.

    Any mismatch (including a tampered matrix entry, a swapped point, or an
    unsupported format version) makes the certificate invalid.  The
    ``toolchain`` field is provenance, not mathematics, and is ignored.
    """
    if isinstance(data, Certificate):
        obj = data.to_json_obj()
    else:
        obj = parse_certificate(data)
    if obj.get("version") != CERT_VERSION:
        return False
    try:
        beta = GaussInt.from_json(obj["beta"])
        k = int(obj["k"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed certificate: {exc}") from exc
    recomputed = certify(beta, k)
    if isinstance(recomputed, FailureReport):
        return False
    expected = recomputed.to_json_obj()
    given = {key: value for key, value in obj.items() if key != "toolchain"}
    expected.pop("toolchain", None)
    return given == expected
