"""Command-line surface: every capability as a subcommand with JSON output.

Gaussian integers are written as ``a+bi`` / ``a-bi`` (optional spaces);
tokens that look like negative numbers or negative Gaussian literals are
accepted as positional arguments.  All numeric output is exact (decimal
strings or small integers, never floats).  Exit codes: 0 success, 1
mathematical rejection, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from .gaussian import GaussInt
from .certify import FailureReport, certify, verify_certificate
from .curves import torsion_subgroup
from .primes import factor_primary
from .residues import euler_symbol, mn_invariants
from .search import Box, find_first_hit, prime_density_stats, search_region
from .selmer import selmer_candidate_set

SHARDS_ENV = "QIRANK_SHARDS"

# tokens like -5, -i, -6i, -1-6i are values, not flags
_NEGATIVE_VALUE_RE = re.compile(r"^-(?:\d+|\d*[iI])(?:[+-]\d*[iI])?$")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _emit_stderr(obj) -> None:
    sys.stderr.write(json.dumps(obj, sort_keys=True) + "\n")
    sys.stderr.flush()


def _gauss(text: str) -> GaussInt:
    try:
        return GaussInt.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _default_shards() -> int:
    value = os.environ.get(SHARDS_ENV, "1")
    try:
        shards = int(value)
    except ValueError:
        return 1
    return max(1, shards)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qirank",
        description="Gaussian prime constellations and rank-2 curve certificates over Q(i)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_factor = sub.add_parser("factor", help="primary factorization of a Gaussian integer")
    p_factor.add_argument("value", type=_gauss)

    p_symbol = sub.add_parser("symbol", help="quadratic residue symbol (a / p)")
    p_symbol.add_argument("numerator", type=_gauss)
    p_symbol.add_argument("prime", type=_gauss)

    p_inv = sub.add_parser("invariants", help="(m, n) class invariants of a primary element")
    p_inv.add_argument("value", type=_gauss)

    p_tors = sub.add_parser("torsion", help="torsion subgroup of y^2 = x^3 + gamma^2 x")
    p_tors.add_argument("gamma", type=_gauss)

    p_selmer = sub.add_parser("selmer", help="Selmer candidate classes for a prime list")
    p_selmer.add_argument("shape", choices=["plus", "minus", "minus-square"])
    p_selmer.add_argument("primes", type=_gauss, nargs="+")

    p_search = sub.add_parser("search", help="search a region for constellations")
    p_search.add_argument("--box", type=int, default=None,
                          help="search |Re beta|, |Im beta| <= BOX")
    for bound in ("re-min", "re-max", "im-min", "im-max"):
        p_search.add_argument(f"--{bound}", type=int, default=None,
                              help=f"explicit beta bound (overrides --box); "
                                   f"lets interrupted runs resume from a checkpoint")
    p_search.add_argument("--kmax", type=int, default=None,
                          help="search |k| <= KMAX (default: BOX)")
    p_search.add_argument("--shards", type=int, default=_default_shards())
    p_search.add_argument("--expand", action="store_true",
                          help="expand the region until a first hit is found")
    p_search.add_argument("--max-radius", type=int, default=4096,
                          help="expansion cap used with --expand")

    p_cert = sub.add_parser("certify", help="certify one (beta, k) candidate")
    p_cert.add_argument("beta", type=_gauss)
    p_cert.add_argument("k", type=int)
    p_cert.add_argument("--output", type=str, default=None,
                        help="also write the certificate JSON to this path")

    p_verify = sub.add_parser("verify", help="independently re-verify a certificate file")
    p_verify.add_argument("file", type=str)

    p_stats = sub.add_parser("stats", help="prime density census by residue class mod 16")
    p_stats.add_argument("--box", type=int, required=True)

    return parser


def _cmd_factor(args) -> int:
    f = factor_primary(args.value)
    _emit({
        "s": f.s,
        "t": f.t,
        "factors": [
            {"prime": p.to_json(), "exponent": e} for p, e in f.factors
        ],
    })
    return 0


def _cmd_symbol(args) -> int:
    _emit({"value": euler_symbol(args.numerator, args.prime)})
    return 0


def _cmd_invariants(args) -> int:
    inv = mn_invariants(args.value)
    _emit({"m": inv.m, "n": inv.n, "n_bar": inv.n_bar})
    return 0


def _cmd_torsion(args) -> int:
    group = torsion_subgroup(args.gamma)
    _emit({
        "group": group.label,
        "points": [p.to_json() for p in group.points],
    })
    return 0


def _cmd_selmer(args) -> int:
    shape = args.shape.replace("-", "_")
    report = selmer_candidate_set(shape, args.primes)
    _emit({
        "shape": args.shape,
        "primes": [p.to_json() for p in report.primes],
        "L": ["".join(str(b) for b in row) for row in report.matrix.to_lists()],
        "nbar": list(report.nbar),
        "candidates": [
            {"unit": "i" if c.unit_i else "1", "primes": list(c.indices)}
            for c in report.candidates
        ],
        "dim": report.dim,
        "rank_upper": report.rank_upper,
    })
    return 0


def _hit_json(hit) -> dict:
    return {
        "beta": hit.beta.to_json(),
        "k": str(hit.k),
        "primes": [p.to_json() for p in hit.primes],
    }


def _search_box(args) -> Box:
    explicit = (args.re_min, args.re_max, args.im_min, args.im_max)
    if args.box is None and any(b is None for b in explicit):
        raise ValueError("search needs --box or all four explicit bounds")
    base = Box.centered(args.box) if args.box is not None else None
    return Box(
        explicit[0] if explicit[0] is not None else base.re_min,
        explicit[1] if explicit[1] is not None else base.re_max,
        explicit[2] if explicit[2] is not None else base.im_min,
        explicit[3] if explicit[3] is not None else base.im_max,
    )


def _cmd_search(args) -> int:
    if args.shards < 1:
        _emit({"error": "shard count must be >= 1"})
        return 2
    if args.expand:
        if args.box is None:
            _emit({"error": "--expand needs --box as the initial radius"})
            return 2
        try:
            hit = find_first_hit(
                initial_radius=max(1, args.box),
                max_radius=args.max_radius,
                shards=args.shards,
                progress=_emit_stderr,
            )
        except RuntimeError as exc:
            _emit({"error": str(exc)})
            return 1
        _emit(_hit_json(hit))
        return 0
    try:
        box = _search_box(args)
    except ValueError as exc:
        _emit({"error": str(exc)})
        return 2
    kmax = args.kmax if args.kmax is not None else args.box
    if kmax is None:
        _emit({"error": "search needs --kmax when --box is not given"})
        return 2
    hits = search_region(box, (-kmax, kmax), shards=args.shards,
                         progress=_emit_stderr)
    for hit in hits:
        _emit(_hit_json(hit))
    _emit_stderr({"event": "search_done", "hits": len(hits)})
    return 0


def _cmd_certify(args) -> int:
    result = certify(args.beta, args.k)
    if isinstance(result, FailureReport):
        _emit({"error": result.reason, "condition": result.condition})
        return 1
    payload = result.to_json_bytes().decode("ascii")
    sys.stdout.write(payload + "\n")
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(payload + "\n")
    return 0


def _cmd_verify(args) -> int:
    try:
        with open(args.file, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        _emit({"error": f"cannot read {args.file}: {exc}"})
        return 2
    try:
        valid = verify_certificate(data)
    except ValueError as exc:
        _emit({"error": str(exc)})
        return 1
    _emit({"valid": valid})
    return 0 if valid else 1


def _cmd_stats(args) -> int:
    stats = prime_density_stats(Box.centered(args.box))
    ratio = stats.target_ratio
    classes = [
        {"re": cls[0], "im": cls[1], "count": count}
        for cls, count in sorted(stats.class_counts.items())
    ]
    _emit({
        "total_primes": stats.total_primes,
        "target_class": {"re": stats.target_class[0], "im": stats.target_class[1]},
        "target_count": stats.target_count,
        "target_ratio": f"{ratio.numerator}/{ratio.denominator}",
        "associate_union_count": stats.associate_union_count(),
        "classes": classes,
    })
    return 0


_HANDLERS = {
    "factor": _cmd_factor,
    "symbol": _cmd_symbol,
    "invariants": _cmd_invariants,
    "torsion": _cmd_torsion,
    "selmer": _cmd_selmer,
    "search": _cmd_search,
    "certify": _cmd_certify,
    "verify": _cmd_verify,
    "stats": _cmd_stats,
}


def run(argv: Optional[Sequence[str]] = None) -> int:
    raw = list(sys.argv[1:] if argv is None else argv)
    # keep argparse from reading negative values as option flags
    argv_safe = [" " + tok if _NEGATIVE_VALUE_RE.match(tok) else tok for tok in raw]
    parser = _build_parser()
    try:
        args = parser.parse_args(argv_safe)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        _emit({"error": str(exc)})
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
