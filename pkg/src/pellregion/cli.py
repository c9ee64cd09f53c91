"""``pell`` command-line front end.

Exit codes: 0 ok, 2 invalid input, 3 closed-form shifted count requested
below the threshold K, 4 methods disagree (should never happen).
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .analytic import AnalyticContext, floor_g_formula, g_real_arccosh, g_real_log
from .core import fundamental_solution, make_instance
from .counting import CountReport, Method, RegionQuery, count_region, enumerate_region
from .errors import BelowThreshold, PellError, ScanTooLarge
from .oracle import brute_force
from .shifted import ShiftedInstance, count_shifted, enumerate_shifted, threshold_K

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BELOW_K = 3
EXIT_DISAGREE = 4


class CliExit(Exception):
    def __init__(self, code, kind, message):
        super().__init__(message)
        self.code = code
        self.kind = kind


def _parse_int(text, name):
    try:
        return int(text)
    except ValueError:
        raise CliExit(EXIT_INPUT, "InvalidInput", f"{name} must be an integer, got {text!r}") from None


def _parse_real(text, name):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise CliExit(EXIT_INPUT, "InvalidInput", f"{name} must be a decimal or rational, got {text!r}") from None


def _instance(text):
    return make_instance(_parse_int(text, "D"))


def _shifted(args, inst):
    if args.shift is None:
        return None
    a, b = (_parse_int(v, name) for v, name in zip(args.shift, ("a", "b")))
    return ShiftedInstance(inst, a, b)


def _inputs(args, **extra):
    out = {"D": args.D}
    if getattr(args, "shift", None) is not None:
        out["a"], out["b"] = args.shift
    else:
        out["a"], out["b"] = "0", "0"
    out.update(extra)
    return out


def _report_json(r: CountReport) -> dict:
    return {
        "method": r.method.value,
        "count": str(r.count),
        "max_index": str(r.max_index),
        "corrections_applied": str(r.corrections_applied),
        "corrections": [str(c) for c in r.corrections],
        "branch_indices": None if r.branch_indices is None else [str(n) for n in r.branch_indices],
    }


def _report_text(r: CountReport) -> str:
    parts = [f"method={r.method.value}", f"count={r.count}", f"max_index={r.max_index}"]
    if r.method is Method.FORMULA:
        parts.append(f"corrections_applied={r.corrections_applied}")
    if r.branch_indices:
        parts.append("branch_indices=" + ",".join(map(str, r.branch_indices)))
    return " ".join(parts)


# ---------------------------------------------------------------- commands

def cmd_fundamental(args):
    inst = _instance(args.D)
    fund = fundamental_solution(inst)
    payload = {"alpha": str(fund.alpha), "beta": str(fund.beta), "unit": fund.unit}
    text = [f"D={inst.D} alpha={fund.alpha} beta={fund.beta} unit={fund.unit!r}"]
    return {"D": args.D}, payload, text


def _count_one(inst, shifted, q, method, workers):
    if method is Method.BRUTE:
        a, b = (shifted.a, shifted.b) if shifted else (0, 0)
        res = brute_force(inst.D, a, b, q.lam, workers=workers)
        if shifted:
            return CountReport(method, res.count, -1, branch_indices=())
        return CountReport(method, res.count, (res.count - 2) // 4 if res.count else -1)
    if shifted is None:
        return count_region(inst, q, method)
    if method is Method.EXACT and not threshold_K(shifted).lambda_at_least(q.lam):
        # below K the closed form is not claimed; enumeration is always valid
        n = len(enumerate_shifted(shifted, q))
        return CountReport(method, n, -1, branch_indices=())
    return count_shifted(shifted, q, method)


def cmd_count(args):
    inst = _instance(args.D)
    shifted = _shifted(args, inst)
    q = RegionQuery.parse(args.lam)
    if args.check:
        methods = [Method.EXACT, Method.FORMULA, Method.BRUTE]
        if shifted and not threshold_K(shifted).lambda_at_least(q.lam):
            methods.remove(Method.FORMULA)
    else:
        methods = [Method.parse(args.method)]

    reports, skipped = [], []
    for m in methods:
        try:
            reports.append(_count_one(inst, shifted, q, m, args.parallel))
        except BelowThreshold as exc:
            K = exc.threshold
            raise CliExit(EXIT_BELOW_K, "BelowThreshold",
                          f"lambda={args.lam} is below K={K} (~{K.approx:.6g}); "
                          "use --method exact or the enumerate command") from None
        except ScanTooLarge:
            if not args.check:
                raise
            skipped.append(m.value)
    if args.check and shifted is not None:
        n = len(enumerate_shifted(shifted, q))
        if any(r.count != n for r in reports):
            reports.append(CountReport(Method.EXACT, n, -1, branch_indices=()))
    agree = len({r.count for r in reports}) == 1
    payload = {
        "count": str(reports[0].count),
        "agree": agree,
        "reports": [_report_json(r) for r in reports],
    }
    if skipped:
        payload["skipped"] = skipped
    text = [f"D={inst.D} lambda={args.lam} count={reports[0].count}"]
    if shifted is not None:
        K = threshold_K(shifted)
        payload["threshold_K"] = str(K)
        text[0] = f"D={inst.D} a={shifted.a} b={shifted.b} lambda={args.lam} count={reports[0].count}"
    text += ["  " + _report_text(r) for r in reports] if args.check or args.verbose else []
    if args.check:
        text.append(f"agree={str(agree).lower()}" + (f" skipped={','.join(skipped)}" if skipped else ""))
    if not agree:
        raise CliExit(EXIT_DISAGREE, "MethodDisagreement",
                      "methods disagree: " + ", ".join(f"{r.method.value}={r.count}" for r in reports))
    return _inputs(args, **{"lambda": args.lam}), payload, text


def cmd_enumerate(args):
    inst = _instance(args.D)
    shifted = _shifted(args, inst)
    q = RegionQuery.parse(args.lam)
    sols = enumerate_shifted(shifted, q) if shifted else enumerate_region(inst, q)
    payload = {"count": str(len(sols)), "solutions": [[str(p.x), str(p.y)] for p in sols]}
    text = [f"{p.x} {p.y}" for p in sols]
    return _inputs(args, **{"lambda": args.lam}), payload, text, sols


def cmd_g(args):
    inst = _instance(args.D)
    ctx = AnalyticContext.from_fundamental(fundamental_solution(inst), args.precision)
    x = _parse_real(args.x, "x")
    if args.form == "floor":
        fg = floor_g_formula(ctx, x)
        payload = {
            "form": "floor",
            "value": str(fg.n),
            "candidate": str(fg.candidate),
            "correction": str(fg.correction),
            "corrected": fg.corrected,
        }
        text = [f"{fg.n} corrected={str(fg.corrected).lower()} candidate={fg.candidate}"]
    else:
        fn = g_real_arccosh if args.form == "arccosh" else g_real_log
        value = fn(ctx, x)
        payload = {"form": args.form, "value": value if ctx.mp is None else str(value)}
        text = [str(value)]
    return {"D": args.D, "x": args.x}, payload, text


# ---------------------------------------------------------------- plumbing

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pell",
        description="Count and enumerate solutions of x^2 - D*y^2 = 1 in |x| + |y| <= lambda.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fundamental", help="fundamental solution (alpha, beta)")
    p.add_argument("D")
    p.add_argument("--json", action="store_true")

    def shift_opt(p):
        p.add_argument("--shift", nargs=2, metavar=("A", "B"),
                       help="use (x-A)^2 - D*(y-B)^2 = 1 instead")

    p = sub.add_parser("count", help="number of solutions in the region")
    p.add_argument("D")
    p.add_argument("lam", metavar="lambda", help="radius, parsed exactly (e.g. 5, 4.999, 7/2)")
    shift_opt(p)
    p.add_argument("--method", choices=["exact", "formula", "brute"], default="exact")
    p.add_argument("--check", action="store_true", help="run every applicable method and compare")
    p.add_argument("--parallel", type=int, default=None, metavar="N",
                   help="brute-force scan with N worker processes")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enumerate", help="list the solutions in the region")
    p.add_argument("D")
    p.add_argument("lam", metavar="lambda")
    shift_opt(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true")
    fmt.add_argument("--csv", action="store_true")

    p = sub.add_parser("g", help="inverse of f = u + v")
    p.add_argument("D")
    p.add_argument("x")
    p.add_argument("--form", choices=["arccosh", "log", "floor"], default="arccosh")
    p.add_argument("--precision", type=int, default=None, metavar="BITS",
                   help="evaluate with an mpmath significand of BITS bits")
    p.add_argument("--json", action="store_true")
    return parser


COMMANDS = {
    "fundamental": cmd_fundamental,
    "count": cmd_count,
    "enumerate": cmd_enumerate,
    "g": cmd_g,
}


def _error(kind, message, code):
    print(json.dumps({"error": kind, "message": message, "exit_code": code}), file=sys.stderr)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        result = COMMANDS[args.command](args)
    except CliExit as exc:
        return _error(exc.kind, str(exc), exc.code)
    except PellError as exc:
        return _error(type(exc).__name__, str(exc), EXIT_INPUT)
    elapsed = (time.perf_counter() - start) * 1000
    inputs, payload, text = result[:3]

    if args.json:
        record = {
            "schema_version": SCHEMA_VERSION,
            "command": args.command,
            "inputs": inputs,
            "result": payload,
            "timing_ms": elapsed,
        }
        print(json.dumps(record))
    elif getattr(args, "csv", False):
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "y"])
        w.writerows((p.x, p.y) for p in result[3])
    else:
        for line in text:
            print(line)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
