"""``stablemaps`` command line.

Exit codes: 0 success, 1 usage or parameter error, 2 failed check or a class
outside the effective cone, 3 random draws exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Any, Sequence

from . import cones, picard
from .chowring import volumes
from .errors import (BadParameters, DegreeMismatch, DimensionMismatch, DuplicatePoints,
                     NotEffective, PresentationError, RetriesExhausted, StableMapsError,
                     UnknownCone, UnknownCurve, UnsupportedParameters)
from .movcurve import config as mcconfig
from .movcurve import pipeline
from .tables import FORMATS, GoldenTable, q
from .verify import SUITES

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_RETRIES = 0, 1, 2, 3

_USAGE_ERRORS = (UnsupportedParameters, BadParameters, UnknownCurve, UnknownCone, PresentationError,
                 DuplicatePoints, DegreeMismatch, DimensionMismatch)

FORMAT_ENV = "STABLEMAPS_FORMAT"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _coeffs(text: str) -> tuple[Fraction, ...]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected three comma-separated rationals a,b,c")
    return tuple(_fraction(p) for p in parts)


def _default_format() -> str:
    fmt = os.environ.get(FORMAT_ENV, "plain").strip().lower() or "plain"
    return fmt if fmt in FORMATS else "plain"


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None,
                        help=f"output format (default: ${FORMAT_ENV} or plain)")
    common.add_argument("--output", "-o", default=None, help="write to this file instead of stdout")

    parser = _Parser(prog="stablemaps", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("divclass", parents=[common], help="coefficients of a named divisor class")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--name", default=None, choices=picard.NAMED_CLASSES)
    p.add_argument("--m", type=_fraction, default=None, help="twist for D_m")
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--alpha", type=_fraction, default=None)
    p.add_argument("--reading", choices=("corrected", "verbatim"), default="corrected")
    p.add_argument("--all-named", action="store_true", help="every catalog class at this d")

    p = sub.add_parser("verify", parents=[common], help="run a named consistency suite")
    p.add_argument("--suite", choices=sorted(SUITES), required=True)
    p.add_argument("--d", type=int, default=None, help="restrict degree-ranging checks to one d")
    p.add_argument("--d-min", type=int, default=None)
    p.add_argument("--d-max", type=int, default=None)

    p = sub.add_parser("chamber", parents=[common], help="base-locus report for a degree-4 class")
    p.add_argument("--coeffs", type=_coeffs, required=True, metavar="a,b,c",
                   help="coefficients of H, Delta_13, Delta_22")

    p = sub.add_parser("volume", parents=[common], help="top intersection table of a ring preset")
    p.add_argument("--preset", choices=volumes.PRESETS, required=True)
    p.add_argument("--seed", type=_fraction, default=None, help="H^12 for m03-p3 (default 80160)")

    p = sub.add_parser("movcheck", parents=[common], help="moving-curve check over a finite field")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--preset", choices=mcconfig.PRESETS)
    src.add_argument("--config", help="TOML or JSON configuration file")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--expected-rank", type=int, default=None)
    p.add_argument("--json", action="store_true", help="same as --format json")

    p = sub.add_parser("tables", parents=[common], help="emit a reference table")
    p.add_argument("--which", choices=("volume-p2", "volume-p3", "intersection-catalog"), required=True)
    p.add_argument("--seed", type=_fraction, default=None)
    p.add_argument("--d", type=int, default=4)
    return parser


# ---------------------------------------------------------------------------
# commands return (payload for json, table or text for other formats, exit code)


def _delta_label(k: int, d: int) -> str:
    return f"Delta_{k},{d - k}"


def _class_table(name: str, D: picard.DivisorClass) -> GoldenTable:
    t = GoldenTable(name, ["basis", "coefficient"])
    t.add("H", D.h)
    for k, c in sorted(D.delta_coeffs.items()):
        t.add(_delta_label(k, D.d), c)
    return t


def _catalog(args) -> dict[str, picard.DivisorClass]:
    names = list(picard.CATALOG)
    if args.r is not None and args.r != args.d:
        names.remove("D_deg")  # only defined when r = d
    if args.r is not None:
        names.append("K")
    if args.d == 4:
        names += ["P", "Q"]
    return {n: picard.named_class(n, args.d, args.r) for n in names}


def cmd_divclass(args):
    if args.all_named:
        classes = _catalog(args)
        payload = {"d": args.d, "classes": {n: D.to_json_obj() for n, D in classes.items()}}
        t = GoldenTable(f"catalog d={args.d}",
                        ["class", "H"] + [_delta_label(k, args.d) for k in range(1, args.d // 2 + 1)])
        for n, D in classes.items():
            t.add(n, D.h, *D.delta)
        return payload, t, EXIT_OK
    if args.name is None:
        raise UsageError("divclass needs --name or --all-named")
    D = picard.named_class(args.name, args.d, args.r, m=args.m, k=args.k, alpha=args.alpha,
                           reading=args.reading)
    return D.to_json_obj(), _class_table(args.name, D), EXIT_OK


def cmd_verify(args):
    kwargs: dict[str, Any] = {}
    if args.suite in ("theorem11", "corollary36"):
        lo = args.d if args.d is not None else args.d_min
        hi = args.d if args.d is not None else args.d_max
        if lo is not None:
            kwargs["d_min"] = lo
        if hi is not None:
            kwargs["d_max"] = hi
    elif args.d not in (None, 4):
        raise UnknownCone(f"suite {args.suite} is only defined at d = 4")
    checks = SUITES[args.suite](**kwargs)
    ok = all(c.passed for c in checks)
    payload = {"suite": args.suite, "pass": ok, "checks": [c.to_json_obj() for c in checks]}
    t = GoldenTable(args.suite, ["check", "pass", "expected", "got"])
    for c in checks:
        t.add(c.name, "pass" if c.passed else "FAIL", c.expected, c.got)
    return payload, t, EXIT_OK if ok else EXIT_FAIL


def cmd_chamber(args):
    a, b, c = args.coeffs
    D = picard.DivisorClass(4, a, (b, c))
    try:
        report = cones.classify_base_locus(D)
    except NotEffective as exc:
        payload = {"class": D.to_json_obj(), "error": "NotEffective", "message": str(exc)}
        t = GoldenTable("chamber", ["field", "value"])
        t.add("error", "NotEffective")
        return payload, t, EXIT_FAIL
    payload = report.to_json_obj()
    t = GoldenTable("chamber", ["field", "value"])
    for k, v in payload.items():
        t.add(k, v if v is not None else "none")
    return payload, t, EXIT_OK


def _volume_table(which: str, seed) -> GoldenTable:
    if which == "m03-p2":
        t = GoldenTable("volume-p2", ["monomial", "value", "provenance"])
        for a, v in volumes.volume_table_d3_r2().items():
            t.add(f"H^{a} NL^{8 - a}", v, "computed")
        return t
    seed = volumes.H12_P3 if seed is None else seed
    t = GoldenTable("volume-p3", ["monomial", "value", "provenance"])
    for a, v in volumes.volume_table_d3_r3(seed).items():
        t.add(f"H^{a} NL^{12 - a}", v, "external seed" if a == 12 else "computed")
    return t


def cmd_volume(args):
    if args.preset == "m03-p2" and args.seed is not None:
        raise UsageError("--seed only applies to m03-p3")
    t = _volume_table(args.preset, args.seed)
    return t.to_json_obj(), t, EXIT_OK


def cmd_tables(args):
    if args.which in ("volume-p2", "volume-p3"):
        preset = "m03-p2" if args.which == "volume-p2" else "m03-p3"
        if preset == "m03-p2" and args.seed is not None:
            raise UsageError("--seed only applies to volume-p3")
        t = _volume_table(preset, args.seed)
        return t.to_json_obj(), t, EXIT_OK
    if args.d != 4:
        raise UnknownCurve("the intersection catalog is tabulated at d = 4")
    classes = picard.d4_classes()
    t = GoldenTable("intersection-catalog", ["curve", *classes])
    for name in ("B13", "B22", "B1", "B2", "B2proj", "C2", "C3", "C0", "C1", "C2pencil"):
        c = picard.test_curve(name, 4)
        t.add(name, *(picard.pair(c, D) for D in classes.values()))
    return t.to_json_obj(), t, EXIT_OK


def cmd_movcheck(args):
    cfg = mcconfig.preset(args.preset) if args.preset else mcconfig.load_config(args.config)
    if args.seed is not None:
        cfg = cfg.with_seed(args.seed)
    if args.expected_rank is not None:
        cfg = replace(cfg, expected_rank=args.expected_rank)
    report = pipeline.moving_curve_check(cfg)
    payload = report.to_json_obj()
    t = GoldenTable("movcheck", ["field", "value"])
    for k, v in payload.items():
        if k != "points":
            t.add(k, v)
    return payload, t, EXIT_OK if report.passed else EXIT_FAIL


COMMANDS = {
    "divclass": cmd_divclass, "verify": cmd_verify, "chamber": cmd_chamber,
    "volume": cmd_volume, "movcheck": cmd_movcheck, "tables": cmd_tables,
}


def resolved_config(args) -> dict[str, Any]:
    """Every option of the invocation with defaults filled in, as JSON-ready values."""
    out: dict[str, Any] = {}
    for k, v in sorted(vars(args).items()):
        if k in ("output", "json"):
            continue
        if isinstance(v, tuple):
            v = [q(x) for x in v]
        elif isinstance(v, Fraction):
            v = q(v)
        out[k] = v
    if args.command == "movcheck":
        cfg = mcconfig.preset(args.preset) if args.preset else None
        seed = args.seed if args.seed is not None else (cfg.seed if cfg else None)
        if seed is not None:
            out["seed"] = seed
    if args.command in ("volume", "tables") and out.get("seed") is None and \
            (getattr(args, "preset", None) == "m03-p3" or getattr(args, "which", None) == "volume-p3"):
        out["seed"] = q(volumes.H12_P3)
    return out


def render(args, payload, table) -> str:
    if args.format == "json":
        return json.dumps(payload, separators=(",", ":"), ensure_ascii=False) + "\n"
    header = "# " + json.dumps({"config": resolved_config(args)}, sort_keys=True, ensure_ascii=False) + "\n"
    return header + table.emit(args.format)


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--coeffs -1,0,0`` into ``--coeffs=-1,0,0`` so argparse does not
    read the value as an option."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--coeffs", "--seed", "--m", "--alpha") and i + 1 < len(argv) \
                and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_glue_negative_values(argv))
    if getattr(args, "json", False):
        args.format = "json"
    if args.format is None:
        args.format = _default_format()
    try:
        payload, table, code = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stablemaps: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RetriesExhausted as exc:
        print(f"stablemaps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RETRIES
    except _USAGE_ERRORS as exc:
        print(f"stablemaps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StableMapsError, OSError) as exc:
        print(f"stablemaps: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL if isinstance(exc, StableMapsError) else EXIT_USAGE
    text = render(args, payload, table)
    if args.format == "json":
        # stdout carries exactly the JSON document; the resolved config goes to stderr
        print("# " + json.dumps({"config": resolved_config(args)}, sort_keys=True, ensure_ascii=False),
              file=sys.stderr)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_FAIL and args.command == "chamber":
        print(f"stablemaps: NotEffective: {payload.get('message', '')}", file=sys.stderr)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
