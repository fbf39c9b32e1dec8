"""Command-line interface.

Documents are JSON, passed inline or as ``@path``. Exit codes: 0 success,
1 failed verification or numerical check, 2 parse or usage error,
3 singular evaluation, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import jsonio
from .errors import (ConfigurationError, ConsistencyError, ConvergenceError, DomainError,
                     ParseError, SingularityError, SingularMatrixError)
from .fractional import (MatrixH, act, canonical_form, classify_pole, lft_compose, lft_eval,
                         moebius_from_params, moebius_map_pair, moebius_params, rft_eval,
                         rft_quotient, sp11_normalize)
from .quaternion import Infinity, Quaternion, SliceSphere, as_quaternion
from .quotient import RegularRational, eval_quotient, singular_set
from .series import RegularPolynomial, eval_poly
from .verify import run_suite, suite_names
from .zeros import zero_set

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_SINGULAR, EXIT_IO = 0, 1, 2, 3, 4


class _IOFailure(Exception):
    pass


def _read_doc(text: str):
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise _IOFailure(str(exc)) from exc
    return jsonio.loads(text)


def _expect(value, kinds, what):
    if not isinstance(value, kinds):
        raise ParseError(f"expected {what}, got {type(value).__name__}")
    return value


def _as_quotient(value) -> RegularRational:
    if isinstance(value, RegularPolynomial):
        return RegularRational.from_polynomial(value)
    return _expect(value, RegularRational, "a quotient or polynomial")


def _location(loc) -> dict:
    if isinstance(loc, SliceSphere):
        return {"kind": "sphere", "x": loc.x + 0.0, "y": loc.y + 0.0}
    return {"kind": "point", "x": float(loc) + 0.0}


def _evaluate(target, q, pointwise=False):
    if isinstance(target, MatrixH):
        return lft_eval(target, q) if pointwise else rft_eval(target, q)
    if isinstance(q, Infinity):
        raise ParseError("only matrices accept the point at infinity")
    if isinstance(target, RegularRational):
        return eval_quotient(target, q)
    if isinstance(target, RegularPolynomial):
        return eval_poly(target, q)
    raise ParseError("expected a matrix, quotient or polynomial")


# commands --------------------------------------------------------------------

def cmd_eval(args):
    target = _read_doc(args.target)
    q = _read_doc(args.point)
    _expect(q, (Quaternion, Infinity), "a quaternion point")
    return _evaluate(target, q, args.pointwise)


def cmd_compose(args):
    mats = [_expect(_read_doc(m), MatrixH, "a matrix") for m in args.matrices]
    out = mats[0]
    for m in mats[1:]:
        out = lft_compose(out, m)
    return out


def cmd_act(args):
    r = _as_quotient(_read_doc(args.quotient))
    A = _expect(_read_doc(args.matrix), MatrixH, "a matrix")
    return act(r, A)


def cmd_canonical(args):
    return canonical_form(_expect(_read_doc(args.matrix), MatrixH, "a matrix"))


def cmd_classify(args):
    A = _expect(_read_doc(args.matrix), MatrixH, "a matrix")
    return {"class": jsonio.to_jsonable(classify_pole(A)),
            "singular_set": jsonio.to_jsonable(singular_set(rft_quotient(A)))}


def cmd_zeros(args):
    f = _expect(_read_doc(args.poly), RegularPolynomial, "a polynomial")
    return zero_set(f, seed=args.seed)


def cmd_moebius(args):
    if args.params:
        a, u = moebius_params(_expect(_read_doc(args.params), MatrixH, "a matrix"))
        return {"a": jsonio.to_jsonable(a), "u": jsonio.to_jsonable(u)}
    if args.pair:
        a, b = (_expect(_read_doc(t), Quaternion, "a quaternion") for t in args.pair)
        return moebius_map_pair(a, b)
    a = _expect(_read_doc(args.a), Quaternion, "a quaternion")
    u = _expect(_read_doc(args.u), Quaternion, "a quaternion")
    return sp11_normalize(moebius_from_params(a, u))


def cmd_verify(args):
    report = run_suite(args.suite, seed=args.seed, trials=args.trials, tol=args.tol)
    return report


def _grid(args) -> list[Quaternion]:
    n = args.res
    if n < 1:
        raise ConfigurationError("resolution must be positive")
    if args.sphere:
        x, y = args.sphere
        sph = SliceSphere(x, y)
        pts = []
        for i in range(n):
            theta = math.pi * (i + 0.5) / n
            for j in range(n):
                phi = 2 * math.pi * j / n
                unit = Quaternion(0.0, math.cos(theta), math.sin(theta) * math.cos(phi),
                                  math.sin(theta) * math.sin(phi))
                pts.append(sph.point(unit))
        return pts
    unit = as_quaternion(_expect(_read_doc(args.slice), Quaternion, "a quaternion"))
    if unit.w != 0.0 or unit.imag_norm() == 0.0:
        raise ConfigurationError("slice direction must be a nonzero imaginary quaternion")
    unit = unit / unit.imag_norm()
    lo, hi = args.range
    axis = np.linspace(lo, hi, n)
    return [Quaternion(float(s)) + unit * float(t) for t in axis for s in axis]


def cmd_sample(args):
    target = _read_doc(args.target)
    rows = []
    for q in _grid(args):
        try:
            out, flag = _evaluate(target, q, args.pointwise), False
        except SingularityError:
            out, flag = None, True
        if isinstance(out, Infinity):
            out, flag = None, True
        rows.append((q, out, flag))
    return rows


# output ----------------------------------------------------------------------

def _sample_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["in_w", "in_x", "in_y", "in_z", "out_w", "out_x", "out_y", "out_z", "singular"])
    for q, out, flag in rows:
        vals = jsonio.to_jsonable(q) + (jsonio.to_jsonable(out) if out is not None else [""] * 4)
        w.writerow([repr(v) if isinstance(v, float) else v for v in vals] + [int(flag)])
    return buf.getvalue()


def _verify_csv(report) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "check", "max_residual", "tolerance", "trials", "passed"])
    for suite, checks in report["suites"].items():
        for c in checks:
            w.writerow([suite, c["name"], repr(c["max_residual"]), repr(c["tolerance"]),
                        c["trials"], int(c["passed"])])
    return buf.getvalue()


def _render(command, result, fmt) -> str:
    if fmt == "csv":
        if command == "sample":
            return _sample_csv(result)
        if command == "verify":
            return _verify_csv(result)
        raise ConfigurationError("csv output is available for sample and verify only")
    if command == "sample":
        result = [{"in": jsonio.to_jsonable(q),
                   "out": None if out is None else jsonio.to_jsonable(out),
                   "singular": flag} for q, out, flag in result]
    return json.dumps(jsonio.to_jsonable(result)) + "\n"


def _emit(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
        return
    try:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(str(exc)) from exc


# parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=7, help="seed for randomized steps")
    common.add_argument("--out", help="write output to this path instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), default="json")

    p = argparse.ArgumentParser(prog="quatreg",
                                description="Regular quaternionic quotients and fractional transformations.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", parents=[common], help="evaluate a matrix, quotient or polynomial at a point")
    s.add_argument("target")
    s.add_argument("point", help='quaternion [w,x,y,z] (or "inf" with --pointwise)')
    s.add_argument("--pointwise", action="store_true",
                   help="use the linear fractional map F_A instead of its regular counterpart")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("compose", parents=[common], help="matrix of F_B after F_A, i.e. the product AB")
    s.add_argument("matrices", nargs="+")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("act", parents=[common], help="right action of a matrix on a quotient")
    s.add_argument("quotient")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("canonical", parents=[common], help="affine or pole canonical form")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_canonical)

    s = sub.add_parser("classify", parents=[common], help="pole type and singular set")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("zeros", parents=[common], help="zero set of a polynomial")
    s.add_argument("poly")
    s.set_defaults(func=cmd_zeros)

    s = sub.add_parser("moebius", parents=[common], help="build or analyse regular Moebius maps")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--params", metavar="MATRIX", help="recover (a, u) from a matrix")
    g.add_argument("--pair", nargs=2, metavar=("A", "B"), help="map sending A to B")
    s.add_argument("--a", default="[0,0,0,0]")
    s.add_argument("--u", default="[1,0,0,0]")
    s.set_defaults(func=cmd_moebius)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", choices=suite_names())
    s.add_argument("--trials", type=int, help="samples per check")
    s.add_argument("--tol", type=float, help="tolerance for every check")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sample", parents=[common], help="evaluate on a grid for plotting")
    s.add_argument("target")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--slice", metavar="UNIT", help="slice plane x + yI through this imaginary direction")
    g.add_argument("--sphere", nargs=2, type=float, metavar=("X", "Y"), help="sphere x + yS")
    s.add_argument("--range", nargs=2, type=float, default=(-1.0, 1.0), metavar=("LO", "HI"))
    s.add_argument("--res", type=int, default=10, help="points per grid axis")
    s.add_argument("--pointwise", action="store_true")
    s.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "trials", None) is not None and args.trials < 1:
        print("error: --trials must be positive", file=sys.stderr)
        return EXIT_PARSE
    try:
        result = args.func(args)
        text = _render(args.command, result, args.format)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except SingularityError as exc:
        report = {"singular": True, "message": str(exc)}
        if exc.location is not None:
            report["location"] = _location(exc.location)
        sys.stdout.write(json.dumps(report) + "\n")
        return EXIT_SINGULAR
    except SingularMatrixError as exc:
        sys.stdout.write(json.dumps({"singular": True, "message": str(exc)}) + "\n")
        return EXIT_SINGULAR
    except (ConvergenceError, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ParseError, ConfigurationError, DomainError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        _emit(text, args.out)
    except _IOFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    if args.command == "verify" and not result["passed"]:
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
