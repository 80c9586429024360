"""Command-line entry point; every subcommand writes JSON to standard output.

Exit codes: 0 when a result was computed (including FAIL verdicts), 1 for
invalid input, 2 when a property violation or internal assertion is found.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .certify import CertificationError, certify, topology_decompositions
from . import enumeration, gaussmap
from .polytope import PolytopeError, parse_polytope_json

SAFE_INT = 2**53
MAX_ENUM_DIM = 5
MAX_ENUM_VOL = 64
MAX_TARGETS = 10**7


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def json_safe(obj):
    """Recursively replace integers outside the 53-bit safe range by decimal strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (float, str)):
        return obj
    if isinstance(obj, int):
        return obj if -SAFE_INT < obj < SAFE_INT else str(obj)
    if isinstance(obj, dict):
        return {str(k): json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(x) for x in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(json_safe(obj), sort_keys=True)


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _params(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--params must be comma-separated reals, got {text!r}") from None


def _check_enum_limits(dim: int, max_vol: int) -> None:
    if dim < 3 or dim > MAX_ENUM_DIM:
        raise InputError(f"--dim must be between 3 and {MAX_ENUM_DIM}, got {dim}")
    if max_vol > MAX_ENUM_VOL:
        raise InputError(f"--max-vol must be at most {MAX_ENUM_VOL}, got {max_vol}")


def _cmd_certify(args, out) -> int:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        poly = parse_polytope_json(text)
        report = certify(poly)
    except (PolytopeError, CertificationError) as exc:
        raise InputError(str(exc)) from None
    out.write(dumps(report.to_dict()) + "\n")
    return 0


def _cmd_enumerate(args, out) -> int:
    _check_enum_limits(args.dim, args.max_vol)
    for cls in enumeration.enumerate_simplices(args.dim, args.max_vol, jobs=args.jobs):
        out.write(dumps(enumeration.classify(cls)) + "\n")
    return 0


def _cmd_verify_lemma(args, out) -> int:
    _check_enum_limits(args.dim, args.max_vol)
    classes = list(enumeration.enumerate_simplices(args.dim, args.max_vol, jobs=os.cpu_count()))
    records = [enumeration.classify(c) for c in classes]
    bad = [r for r in records if r["volume"] > 1 and r["unimodular_facets"] and r["smooth_dim1"]]
    doc = {
        "dim": args.dim,
        "max_vol": args.max_vol,
        "classes_checked": len(records),
        "counterexamples": bad,
        "summary": {
            "unimodular_facets": sum(r["unimodular_facets"] for r in records),
            "smooth_dim1": sum(r["smooth_dim1"] for r in records),
            "unimodular_facets_not_unimodular": sum(
                r["unimodular_facets"] and r["volume"] > 1 for r in records),
            "smooth_not_unimodular": sum(r["smooth_dim1"] and r["volume"] > 1 for r in records),
        },
    }
    out.write(dumps(doc) + "\n")
    return 2 if bad else 0


def _cmd_decompose(args, out) -> int:
    out.write(dumps({"vol": args.vol, "decompositions": topology_decompositions(args.vol)}) + "\n")
    return 0


def _cmd_probe(args, out) -> int:
    if args.targets > MAX_TARGETS:
        raise InputError(f"--targets must be at most {MAX_TARGETS}")
    try:
        report = gaussmap.real_fibered_verdict(args.family, args.params, args.targets, args.seed)
    except (gaussmap.ProbeError, ValueError) as exc:
        raise InputError(str(exc)) from None
    out.write(dumps(report.to_dict()) + "\n")
    w = report.witness
    broken = report.forward_failures > 0 or (
        w is not None
        and (w["verified_residual"] > gaussmap.RESIDUAL_TOL or w["verified_distance"] > gaussmap.DISTANCE_TOL)
    )
    return 2 if broken else 0


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fibercert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("certify", help="run the obstruction chain on a polytope JSON file")
    p.add_argument("--input", required=True, help='file containing {"vertices": [[int, ...], ...]}')
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("enumerate", help="stream simplex classes as JSON lines")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--max-vol", type=_positive, required=True)
    p.add_argument("--jobs", type=_positive, default=os.cpu_count() or 1)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("verify-lemma", help="search for smooth simplices with unimodular facets and volume > 1")
    p.add_argument("--dim", type=_positive, required=True)
    p.add_argument("--max-vol", type=_positive, required=True)
    p.set_defaults(func=_cmd_verify_lemma)

    p = sub.add_parser("decompose", help="(spheres, projective spaces) counts for a Gauss map degree")
    p.add_argument("--vol", type=_positive, required=True)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("probe", help="sample real targets of a closed-form family")
    p.add_argument("--family", required=True, choices=sorted(gaussmap.FAMILIES))
    p.add_argument("--params", type=_params, required=True)
    p.add_argument("--targets", type=_positive, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=_cmd_probe)
    return parser


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    try:
        args = make_parser().parse_args(argv)
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except AssertionError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
