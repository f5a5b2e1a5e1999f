"""Command-line front end: ``plan``, ``solve``, ``verify`` and ``plot``.

Problem files are JSON. Every number that has to stay exact is a string::

    {
      "mode": "factors",
      "degree": "448",
      "substitution": "3",
      "coefficients": {"3": "-240", "6": "28320", "9": "-2190860", "12": "125012034"},
      "roots": [["1", "-1"], ["1", "-1", "2"]]
    }

``coefficients`` maps codegrees (of the original variable) to values; a plain
list means codegrees 1, 2, ... . In ``disks`` mode ``roots`` is a list of
``{"re": ..., "im": ..., "radius": ...}``; in ``factors`` mode each root entry
is a monic dense coefficient list, highest degree first. Roots are given in
the substituted variable ``y = x^s``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__, planner
from .ball import ComplexDisk, sci
from .errors import (AmbiguousDisk, DiskContainsZero, InconsistentInput, MatrixSingular,
                     NegativeMultiplicity, NonIntegralSolution, NonZeroSkippedCoefficient,
                     RepeatedRoot, RootMultError, ZeroRoot)
from .exactq import MonicPoly
from .plot import expand_substitution, render_svg
from .roots import enclose_roots
from .solver import MultiplicityResult, PolyProblem, default_precision, solve_exact, solve_numeric
from .verify import VerificationReport, verify_disk_multiplicities, verify_multiplicities

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECISION = 3
EXIT_SINGULAR = 4
EXIT_VERIFY = 5

RETRY_CAP_BITS = 1 << 20
PROBLEM_KEYS = {"mode", "coefficients", "degree", "substitution", "roots", "precision_bits", "description"}
DISK_KEYS = {"re", "im", "radius"}


class ParseError(ValueError):
    pass


# -- problem files ------------------------------------------------------------

@dataclass(frozen=True)
class ProblemFile:
    mode: str
    problem: PolyProblem
    precision_bits: Optional[int]
    raw: dict


def _no_duplicates(pairs):
    out = {}
    for key, value in pairs:
        if key in out:
            raise ParseError(f"duplicate key {key!r}")
        out[key] = value
    return out


def _load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh, object_pairs_hook=_no_duplicates)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: not valid JSON ({exc})") from None
    if not isinstance(data, dict):
        raise ParseError(f"{path}: top level must be an object")
    return data


def _integer(value, what, minimum=0) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ParseError(f"{what} must be an integer or an integer string")
    try:
        n = int(value)
    except ValueError:
        raise ParseError(f"{what}: {value!r} is not an integer") from None
    if n < minimum:
        raise ParseError(f"{what} must be at least {minimum}")
    return n


def _rational(value, what) -> Fraction:
    if not isinstance(value, str):
        raise ParseError(f"{what} must be a string, got {type(value).__name__}")
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"{what}: {value!r} is not an exact rational") from None


def _coefficient_map(raw) -> dict:
    if isinstance(raw, list):
        return {j: _rational(v, f"coefficient {j}") for j, v in enumerate(raw, start=1)}
    if not isinstance(raw, dict):
        raise ParseError("coefficients must be an object keyed by codegree or a list")
    out = {}
    for key, value in raw.items():
        j = _integer(key, f"codegree {key!r}", minimum=1)
        if j in out:
            raise ParseError(f"codegree {j} given twice")
        out[j] = _rational(value, f"coefficient at codegree {j}")
    return out


def substituted_coefficients(coeffs: dict, s: int) -> list:
    """Coefficients of the polynomial in ``y = x^s`` as a dense list c_1..c_k."""
    for j in sorted(coeffs):
        if j % s and coeffs[j]:
            raise NonZeroSkippedCoefficient(j)
    top = max(coeffs, default=0) // s
    missing = [j * s for j in range(1, top + 1) if j * s not in coeffs]
    if missing:
        raise ParseError(f"coefficient at codegree {missing[0]} is missing")
    return [coeffs[j * s] for j in range(1, top + 1)]


def _parse_roots(mode, raw, prec):
    if not isinstance(raw, list):
        raise ParseError("roots must be a list")
    out = []
    for i, entry in enumerate(raw):
        if mode == "disks":
            if not isinstance(entry, dict) or not entry.keys() <= DISK_KEYS or "re" not in entry:
                raise ParseError(f"root {i} must be an object with re and optional im, radius")
            re = _rational(entry["re"], f"root {i} re")
            im = _rational(entry.get("im", "0"), f"root {i} im")
            rad = _rational(entry.get("radius", "0"), f"root {i} radius")
            if rad < 0:
                raise ParseError(f"root {i} has a negative radius")
            out.append(ComplexDisk.from_strings(str(re), str(im), str(rad), prec))
        else:
            if not isinstance(entry, list) or len(entry) < 2:
                raise ParseError(f"factor {i} must be a dense coefficient list of length >= 2")
            coeffs = [_rational(c, f"factor {i} coefficient") for c in entry]
            if coeffs[0] != 1:
                raise ParseError(f"factor {i} is not monic")
            out.append(MonicPoly.from_dense(coeffs))
    return out


def parse_problem(data: dict) -> ProblemFile:
    unknown = set(data) - PROBLEM_KEYS
    if unknown:
        raise ParseError(f"unknown keys: {', '.join(sorted(unknown))}")
    mode = data.get("mode")
    if mode not in ("disks", "factors"):
        raise ParseError('mode must be "disks" or "factors"')
    for key in ("coefficients", "roots"):
        if key not in data:
            raise ParseError(f"missing key {key!r}")
    s = _integer(data.get("substitution", 1), "substitution", minimum=1)
    degree = _integer(data["degree"], "degree") if data.get("degree") is not None else None
    bits = data.get("precision_bits")
    bits = _integer(bits, "precision_bits", minimum=2) if bits is not None else None
    coeffs = substituted_coefficients(_coefficient_map(data["coefficients"]), s)
    roots = _parse_roots(mode, data["roots"], bits or 128)
    try:
        problem = PolyProblem(coeffs, roots, degree, s)
    except (ValueError, TypeError, ZeroRoot) as exc:
        raise ParseError(str(exc)) from None
    return ProblemFile(mode, problem, bits, data)


def reparse_at(pf: ProblemFile, prec: int) -> PolyProblem:
    """The disk problem with its exact root strings re-rounded at ``prec`` bits."""
    p = pf.problem
    roots = _parse_roots(pf.mode, pf.raw["roots"], prec)
    return PolyProblem(p.coefficients, roots, p.degree, p.substitution)


def load_problem(path) -> ProblemFile:
    return parse_problem(_load_json(path))


# -- result files -------------------------------------------------------------

@dataclass(frozen=True)
class ResultFile:
    mode: str
    multiplicities: tuple
    m0: Optional[int]
    certified: bool
    precision_bits: Optional[int] = None
    plan: Optional[dict] = None
    verification: dict = field(default_factory=dict)
    problem: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "multiplicities": {str(i): m for i, m in enumerate(self.multiplicities)},
            "m0": self.m0,
            "certified": self.certified,
            "precision_bits": self.precision_bits,
            "plan": self.plan,
            "verification": self.verification,
            "problem": self.problem,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, data) -> "ResultFile":
        if not isinstance(data, dict):
            raise ParseError("result must be an object")
        expected = {"mode", "multiplicities", "m0", "certified", "precision_bits",
                    "plan", "verification", "problem"}
        if set(data) != expected:
            raise ParseError(f"result keys must be exactly {', '.join(sorted(expected))}")
        raw = data["multiplicities"]
        if not isinstance(raw, dict):
            raise ParseError("multiplicities must be an object keyed by root index")
        try:
            order = sorted(raw, key=int)
        except ValueError:
            raise ParseError("multiplicity keys must be root indices") from None
        if [int(k) for k in order] != list(range(len(order))):
            raise ParseError("multiplicity keys must be 0..k-1")
        mult = tuple(_integer(raw[k], f"multiplicity {k}") for k in order)
        m0 = None if data["m0"] is None else _integer(data["m0"], "m0")
        bits = None if data["precision_bits"] is None else _integer(data["precision_bits"], "precision_bits")
        if not isinstance(data["certified"], bool):
            raise ParseError("certified must be a boolean")
        if data["mode"] not in ("disks", "factors"):
            raise ParseError('mode must be "disks" or "factors"')
        for key in ("verification", "problem"):
            if not isinstance(data[key], dict):
                raise ParseError(f"{key} must be an object")
        if data["plan"] is not None and not isinstance(data["plan"], dict):
            raise ParseError("plan must be an object or null")
        return cls(data["mode"], mult, m0, data["certified"], bits, data["plan"],
                   data["verification"], data["problem"])

    @classmethod
    def from_json(cls, text: str) -> "ResultFile":
        try:
            data = json.loads(text, object_pairs_hook=_no_duplicates)
        except json.JSONDecodeError as exc:
            raise ParseError(f"result is not valid JSON ({exc})") from None
        return cls.from_dict(data)


def load_result(path) -> ResultFile:
    return ResultFile.from_dict(_load_json(path))


# -- operations ---------------------------------------------------------------

def verify_problem(pf: ProblemFile, mult, m0) -> VerificationReport:
    p = pf.problem
    if len(mult) != len(p.roots):
        raise ParseError(f"result has {len(mult)} multiplicities for {len(p.roots)} roots")
    check = verify_multiplicities if pf.mode == "factors" else verify_disk_multiplicities
    return check(list(p.roots), list(mult), list(p.coefficients), p.degree, m0, p.substitution)


def report_summary(report: VerificationReport) -> dict:
    return {"coefficients_match": report.coefficients_match,
            "first_mismatch": report.first_mismatch,
            "degree_match": report.degree_match}


def factor_disks(factors, prec=128) -> list:
    """Certified disks around every root of every factor, flattened, with owner index."""
    out = []
    for i, q in enumerate(factors):
        out.extend((i, d) for d in enclose_roots(q, prec))
    return out


def plan_problem(pf: ProblemFile):
    p = pf.problem
    if not p.roots:
        raise ParseError("a plan needs at least one root")
    if pf.mode == "disks":
        disks = list(p.roots)
    else:
        disks = [d for _, d in factor_disks(p.roots)]
    return planner.plan(disks, p.coefficients[:len(disks)])


def run_solve(pf: ProblemFile, precision_bits=None, retry=False, cap=RETRY_CAP_BITS,
              log=None) -> MultiplicityResult:
    if pf.mode == "factors":
        return solve_exact(pf.problem)
    if not pf.problem.roots:
        return solve_numeric(pf.problem)
    bits = precision_bits or pf.precision_bits or default_precision(pf.problem)
    last = None
    while True:
        try:
            return solve_numeric(reparse_at(pf, bits), bits)
        except AmbiguousDisk as exc:
            # more working bits cannot shrink disks dominated by the input radii
            stalled = last is not None and exc.diameter >= last / 2
            if not retry or bits * 2 > cap or stalled:
                raise
            last = exc.diameter
            bits *= 2
            if log:
                log(f"ambiguous result disk {exc.index}; retrying at {bits} bits")


def plot_markers(result: ResultFile) -> list:
    """``(x-root, multiplicity)`` pairs for the nonzero roots of a result."""
    pf = parse_problem(result.problem)
    p = pf.problem
    if len(result.multiplicities) != len(p.roots):
        raise ParseError("result and embedded problem disagree on the number of roots")
    if pf.mode == "disks":
        ys = [(d.center, m) for d, m in zip(p.roots, result.multiplicities)]
    else:
        ys = [(d.center, result.multiplicities[i]) for i, d in factor_disks(p.roots)]
    return expand_substitution(ys, p.substitution)


# -- commands -----------------------------------------------------------------

def _fmt(x):
    return sci(x)


def cmd_plan(args, out) -> int:
    pf = load_problem(args.problem)
    plan = plan_problem(pf)
    if args.json:
        out.write(json.dumps(plan.as_dict(), indent=2, sort_keys=True) + "\n")
        return EXIT_OK
    out.write(f"M = {_fmt(plan.M)}\nm = {_fmt(plan.m)}\nR = {_fmt(plan.R)}\n"
              f"r = {_fmt(plan.r)}\nc = {_fmt(plan.c)}\nn = {plan.n}\n"
              f"epsilon = {_fmt(plan.epsilon)}\n"
              f"bound bits = {plan.bound_bits} ({plan.decimal_digits} decimal digits)\n"
              f"required bits = {plan.required_bits} (with {plan.required_bits - plan.bound_bits} guard bits)\n")
    return EXIT_OK


def cmd_solve(args, out) -> int:
    pf = load_problem(args.problem)
    res = run_solve(pf, args.precision_bits, args.retry_doubling,
                    log=lambda msg: print(msg, file=sys.stderr))
    report = verify_problem(pf, res.multiplicities, res.m0)
    plan = None
    if pf.mode == "disks" and pf.problem.roots:
        plan = {k: str(v) for k, v in plan_problem(pf).as_dict().items()}
    result = ResultFile(pf.mode, tuple(res.multiplicities), res.m0, res.certified and report.ok,
                        res.precision_bits, plan, report_summary(report), pf.raw)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(result.to_json())
    if args.json:
        out.write(result.to_json())
    else:
        for i, m in enumerate(result.multiplicities):
            out.write(f"root {i}: multiplicity {m}\n")
        out.write(f"m0: {'unknown (no degree given)' if result.m0 is None else result.m0}\n")
        if result.precision_bits:
            out.write(f"precision: {result.precision_bits} bits\n")
        out.write(f"certified: {'yes' if result.certified else 'no'}\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_verify(args, out) -> int:
    pf = load_problem(args.problem)
    result = load_result(args.result)
    if result.mode != pf.mode:
        raise ParseError(f"result mode {result.mode!r} does not match problem mode {pf.mode!r}")
    report = verify_problem(pf, result.multiplicities, result.m0)
    out.write(f"coefficients match: {'yes' if report.coefficients_match else 'no'}\n")
    if report.first_mismatch is not None:
        out.write(f"first mismatch at codegree {report.first_mismatch}\n")
    if report.degree_match is not None:
        out.write(f"degree match: {'yes' if report.degree_match else 'no'}\n")
    return EXIT_OK if report.ok else EXIT_VERIFY


def cmd_plot(args, out) -> int:
    result = load_result(args.result)
    svg = render_svg(plot_markers(result), result.m0 or 0)
    with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rootmult", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="root precision needed for a certified numeric solve")
    p.add_argument("problem")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("solve", help="recover the multiplicities")
    p.add_argument("problem")
    p.add_argument("--precision-bits", type=int, metavar="N")
    p.add_argument("--retry-doubling", action="store_true",
                   help=f"double the working precision on ambiguity, up to {RETRY_CAP_BITS} bits")
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output", metavar="RESULT")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a result against a problem")
    p.add_argument("problem")
    p.add_argument("result")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("plot", help="SVG scatter of the spectrum")
    p.add_argument("result")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "precision_bits", None) is not None and args.precision_bits < 2:
        print("error: --precision-bits must be at least 2", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args, out)
    except (ParseError, NonZeroSkippedCoefficient, DiskContainsZero, RepeatedRoot, ZeroRoot) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except AmbiguousDisk as exc:
        print(f"error: precision exhausted: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except MatrixSingular as exc:
        print(f"error: singular system, the coefficients cannot determine the exponents: {exc}",
              file=sys.stderr)
        return EXIT_SINGULAR
    except (NonIntegralSolution, NegativeMultiplicity, InconsistentInput) as exc:
        print(f"error: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except RootMultError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
