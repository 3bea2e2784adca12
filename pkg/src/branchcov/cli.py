"""Command-line entry point: ``branchcov {bezout,plcov,fintop,fixtures} ...``.

Every command prints a JSON report envelope on standard output. Exit codes:
0 on success, 1 when ``--expect`` contradicts the verdict, 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Sequence

from branchcov import bezoutian as bz
from branchcov import fixtures
from branchcov.finitetop import FinMap, check_lemma, fuzz, is_branched_covering, lemma_ids, sweep
from branchcov.intervals import Interval
from branchcov.multipoly import parse_poly
from branchcov.plcov import PLCovering, analyze
from branchcov.polycore import AlgebraicReal, UniPoly, as_rat, isolate_real_roots, rat_str
from branchcov.report import ReportEnvelope, Timer

FIXTURE_PREFIX = "fixtures:"


class InputError(Exception):
    """Bad user input; ``field`` names the offending flag or JSON key."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


def to_jsonable(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return rat_str(obj)
    if isinstance(obj, (Interval, AlgebraicReal)):
        return obj.to_json()
    if isinstance(obj, UniPoly):
        return [rat_str(c) for c in obj.coeffs]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# input helpers


def parse_rational(text, field: str) -> Fraction:
    try:
        return as_rat(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InputError(field, f"cannot parse {text!r} as a rational") from None


def parse_point(text: str, field: str = "--point") -> list[Fraction]:
    parts = [p.strip() for p in text.split(",")]
    if not text.strip() or any(not p for p in parts):
        raise InputError(field, f"expected comma-separated rationals, got {text!r}")
    return [parse_rational(p, field) for p in parts]


def read_json_source(source: str, field: str) -> tuple[dict, str | None]:
    """JSON from a file path or ``fixtures:<name>``; returns (data, fixture name)."""
    if source.startswith(FIXTURE_PREFIX):
        name = source[len(FIXTURE_PREFIX):]
        return load_fixture(name, field), name
    try:
        with open(source, encoding="utf-8") as fh:
            return json.load(fh), None
    except OSError as exc:
        raise InputError(field, f"cannot read {source!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(field, f"malformed JSON in {source!r}: {exc.msg} at line {exc.lineno}") from None


def load_fixture(name: str, field: str, kind: str | None = None) -> dict:
    try:
        data = fixtures.load(name)
    except fixtures.UnknownFixture:
        raise InputError(field, f"unknown fixture {name!r}") from None
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(field, str(exc)) from None
    if kind is not None and data["kind"] != kind:
        raise InputError(field, f"fixture {name!r} is of kind {data['kind']!r}, expected {kind!r}")
    return data


def _bezout_point(args) -> list[Fraction]:
    if args.fixture and args.point:
        raise InputError("--point", "give either --point or --fixture, not both")
    if args.fixture:
        data = load_fixture(args.fixture, "--fixture", "bezout")
        point = [parse_rational(v, "point") for v in data.get("point", [])]
    elif args.point:
        point = parse_point(args.point)
    else:
        raise InputError("--point", "a point is required (or --fixture)")
    if args.n is not None and args.n != len(point):
        raise InputError("--n", f"--n {args.n} does not match the {len(point)} coordinates given")
    return point


def _bezout_f(args, n: int):
    if not args.f:
        raise InputError("--f", "a polynomial expression is required")
    try:
        return parse_poly(args.f, n)
    except ValueError as exc:
        raise InputError("--f", str(exc)) from None


def _mode_width(args) -> tuple[str, Fraction]:
    width = parse_rational(args.width, "--width")
    if width <= 0:
        raise InputError("--width", "must be positive")
    return args.mode, width


# ---------------------------------------------------------------------------
# bezout


def _hyperbolic_or_error(a):
    if bz.is_hyperbolic(a) is None:
        raise InputError("--point", "point is not hyperbolic (its polynomial has non-real roots)")


def cmd_bezout(args) -> tuple[dict, bool | None]:
    a = _bezout_point(args)
    n = len(a)
    try:
        if args.action == "analyze":
            if n > bz.FIBER_DEGREE_CAP:
                raise InputError("--n", f"degree cap exceeded (n <= {bz.FIBER_DEGREE_CAP})")
            payload = bz.describe(a)
            return payload, _bezout_expect(args.expect, payload)
        if args.action == "resultant":
            if n > bz.RESULTANT_DEGREE_CAP:
                raise InputError("--n", f"degree cap exceeded (n <= {bz.RESULTANT_DEGREE_CAP})")
            width = parse_rational(args.width, "--width")
            roots = isolate_real_roots(bz.coefficient_poly(a)).values()
            residuals = bz.resultant_residuals(a, roots, width)
            payload = {
                "n": n,
                "point": [rat_str(v) for v in a],
                "resultant": bz.real_part_resultant(n).to_str(
                    [f"u{i + 1}" for i in range(n)] + ["x", "y"]
                ),
                "roots": [r.to_json() for r in roots],
                "residuals": to_jsonable(residuals),
                "all_zero": all(r == 0 if isinstance(r, Fraction) else r.contains(0) for r in residuals),
            }
            return payload, None
        if n > bz.FIBER_DEGREE_CAP:
            raise InputError("--n", f"degree cap exceeded (n <= {bz.FIBER_DEGREE_CAP})")
        _hyperbolic_or_error(a)
        f = _bezout_f(args, n)
        mode, width = _mode_width(args)
        payload = {"n": n, "point": [rat_str(v) for v in a], "f": args.f, "mode": mode}
        if args.action == "mu":
            payload["mu"] = to_jsonable(bz.mu_eval(a, f, mode, width))
        elif args.action == "symfun":
            if args.k is None:
                payload["symfun"] = to_jsonable(bz.symfun_all(a, f, mode, width))
            else:
                if not 1 <= args.k <= math.factorial(n):
                    raise InputError("--k", f"k={args.k} outside 1..{math.factorial(n)}")
                payload["k"] = args.k
                payload["symfun"] = to_jsonable(bz.symfun_eval(a, f, args.k, mode, width))
        elif args.action == "integral":
            payload["coefficients"] = to_jsonable(bz.integral_poly(a, f, mode, width))
            payload["residuals"] = to_jsonable(bz.annihilation_residuals(a, f, mode, width))
        return payload, None
    except bz.IrrationalFiberError as exc:
        raise InputError("--mode", str(exc)) from None
    except bz.NotHyperbolicError as exc:
        raise InputError("--point", str(exc)) from None


def _bezout_expect(expect: str | None, payload: dict) -> bool | None:
    if expect is None:
        return None
    verdict = {
        "hyperbolic": payload["hyperbolic"],
        "not-hyperbolic": not payload["hyperbolic"],
        "branch": bool(payload["branch"]),
        "regular": payload["hyperbolic"] and not payload["branch"],
        "collapse": bool(payload["collapse"]),
    }
    return verdict[expect]


# ---------------------------------------------------------------------------
# plcov


def cmd_plcov(args) -> tuple[dict, bool | None]:
    data, name = read_json_source(args.source, "source")
    if name is not None:
        if data["kind"] != "plcov":
            raise InputError("source", f"fixture {name!r} is of kind {data['kind']!r}, expected 'plcov'")
        data = data["covering"]
    try:
        cov = PLCovering.from_json(data)
    except ValueError as exc:
        raise InputError("segments", str(exc)) from None
    report = analyze(cov)
    if args.svg:
        from branchcov.svg import emit_svg

        try:
            emit_svg(cov, report, args.svg)
        except OSError as exc:
            raise InputError("--svg", f"cannot write {args.svg!r}: {exc.strerror}") from None
    ok = None
    if args.expect:
        ok = {
            "branched": report.is_branched,
            "not-branched": not report.is_branched,
            "quasi": report.is_quasi,
            "not-quasi": not report.is_quasi,
        }[args.expect]
    return report.to_json(), ok


# ---------------------------------------------------------------------------
# fintop


def _instance(args) -> FinMap:
    if not args.instance:
        raise InputError("--instance", "an instance file is required")
    data, name = read_json_source(args.instance, "--instance")
    if name is not None:
        if data["kind"] != "fintop":
            raise InputError("--instance", f"fixture {name!r} is of kind {data['kind']!r}, expected 'fintop'")
        data = data["instance"]
    try:
        return FinMap.from_json(data)
    except (ValueError, TypeError, IndexError) as exc:
        raise InputError("--instance", str(exc)) from None


def cmd_fintop(args) -> tuple[dict, bool | None]:
    if args.action == "fuzz":
        if args.trials < 0:
            raise InputError("--trials", "must be non-negative")
        if not 1 <= args.max_points <= 10:
            raise InputError("--max-points", "must be between 1 and 10")
        return fuzz(args.seed, args.trials, args.max_points).to_json(), None
    if args.action == "sweep":
        domain = 4 if args.max_points is None else args.max_points
        if not 1 <= domain <= 5:
            raise InputError("--max-points", "bound exceeded (sweep handles at most 5 points)")
        if not 1 <= args.max_codomain <= 5:
            raise InputError("--max-codomain", "bound exceeded (sweep handles at most 5 points)")
        return sweep(domain, args.max_codomain).to_json(), None
    fmap = _instance(args)
    if args.action == "check":
        if args.lemma not in lemma_ids():
            raise InputError("--lemma", f"unknown lemma id {args.lemma!r}")
        verdict = check_lemma(args.lemma, fmap)
        ok = None if args.expect is None else _fintop_verdict(args.expect, fmap)
        return verdict.to_json(), ok
    result = is_branched_covering(fmap)
    ok = None if args.expect is None else _fintop_verdict(args.expect, fmap)
    return result.to_json(), ok


def _fintop_verdict(expect: str, fmap: FinMap) -> bool:
    res = is_branched_covering(fmap)
    return {
        "branched": res.is_branched,
        "not-branched": not res.is_branched,
        "quasi": res.is_quasi,
        "not-quasi": not res.is_quasi,
    }[expect]


# ---------------------------------------------------------------------------
# fixtures


def cmd_fixtures(args) -> tuple[dict, bool | None]:
    if args.action == "list":
        try:
            return {"fixtures": fixtures.listing()}, None
        except ValueError as exc:
            raise InputError("kind", str(exc)) from None
    if not args.name:
        raise InputError("name", "a fixture name is required")
    return {"name": args.name, "fixture": load_fixture(args.name, "name")}, None


# ---------------------------------------------------------------------------
# parser


VERDICTS = ["branched", "not-branched", "quasi", "not-quasi"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="branchcov", description="Construct and check branched coverings.")
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("bezout", help="the covering by elementary symmetric polynomials")
    p.add_argument("action", choices=["analyze", "mu", "symfun", "integral", "resultant"])
    p.add_argument("--n", type=int)
    p.add_argument("--point", help="comma-separated rationals a1,...,an")
    p.add_argument("--fixture")
    p.add_argument("--f", help="polynomial in x1..xn, e.g. 'x1^2 - 3/2*x2'")
    p.add_argument("--mode", choices=[bz.EXACT, bz.INTERVAL], default=bz.EXACT)
    p.add_argument("--width", default=rat_str(bz.DEFAULT_WIDTH))
    p.add_argument("--k", type=int)
    p.add_argument("--expect", choices=["hyperbolic", "not-hyperbolic", "branch", "regular", "collapse"])
    p.set_defaults(run=cmd_bezout)

    p = sub.add_parser("plcov", help="piecewise-linear coverings of an interval")
    p.add_argument("action", choices=["check"])
    p.add_argument("source", help="covering JSON file or fixtures:<name>")
    p.add_argument("--svg", help="also write an SVG rendering to this path")
    p.add_argument("--expect", choices=VERDICTS)
    p.set_defaults(run=cmd_plcov)

    p = sub.add_parser("fintop", help="maps between finite topological spaces")
    p.add_argument("action", choices=["fuzz", "sweep", "check", "analyze"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--max-points", type=int)
    p.add_argument("--max-codomain", type=int, default=3)
    p.add_argument("--lemma")
    p.add_argument("--instance", help="instance JSON file or fixtures:<name>")
    p.add_argument("--expect", choices=VERDICTS)
    p.set_defaults(run=cmd_fintop)

    p = sub.add_parser("fixtures", help="shipped example instances")
    p.add_argument("action", choices=["list", "show"])
    p.add_argument("name", nargs="?")
    p.set_defaults(run=cmd_fixtures)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.group == "fintop" and args.action == "fuzz" and args.max_points is None:
        args.max_points = 5
    try:
        with Timer() as timer:
            payload, ok = args.run(args)
    except InputError as exc:
        print(f"branchcov: error: {exc}", file=sys.stderr)
        return 2
    seed = args.seed if args.group == "fintop" and args.action == "fuzz" else None
    envelope = ReportEnvelope(command=argv, payload=payload, seed=seed, timing={"seconds": timer.seconds})
    print(envelope.dumps())
    if ok is False:
        print(f"branchcov: expectation {args.expect!r} not met", file=sys.stderr)
        return 1
    return 0
