"""Command-line front end: ``sumprod {stats,verify,chain,incidence,scan}``.

Exit status: 0 when every exact check passes, 1 when any exact check
fails, 2 on input errors (bad spec or file, 0 in a set that needs
division, inputs too small or too large to evaluate exactly).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chain import proof_chain
from .energy import additive_energy, cubic_energy, multiplicative_energy
from .errors import ComputationTooLarge, SumprodError
from .exact import Line
from .families import parse_family_spec, generate, parse_set_file
from .incidence import (
    origin_line, parse_line_file, parse_point_file, point_degrees, line_degrees,
    weighted_incidences,
)
from .sets import ElementSet, cartesian_grid, rep_function, sizes
from .verify import (
    DEFAULT_PRECISION, MIN_PRECISION, TARGETS, Evaluator, all_exact_pass,
    check_exact_inequalities, check_st_reports, elekes_check, input_digest,
    observed_exponent, render_number, report_document, theorem_report,
)

SCAN_SCHEMA = "sumprod-scan/1"
SCAN_COLUMNS = (
    "schema", "familySpec", "n", "sumset", "diffset", "prodset", "ratioset",
    "energy", "multEnergy", "cubicEnergy",
    "expRatioDiff", "expRatioSum", "expProductDiff", "expProductSum",
)

FAMILY_HELP = """\
set inputs (--set):
  file:PATH                       one scalar per line: 3, -1/2, 2/3i, 1-2/5i; '#' comments
  ap:START:STEP:LEN               arithmetic progression
  gp:START:RATIO:LEN              geometric progression
  convex:squares|cubes|powers-K:N {f(1), ..., f(N)}
  randint:LO:HI:LEN:seed=S        LEN distinct integers in [LO, HI] (PCG64 stream)
  randgauss:LO:HI:LEN:seed=S      LEN distinct Gaussian integers with parts in [LO, HI]
for scan, a spec containing {n} is swept over --values (e.g. ap:1:1:{n} --values 4..64)

environment: SUMPROD_OUTPUT_DIR (base for relative --output), SUMPROD_PRECISION
"""


class InputError(SumprodError):
    pass


# ---------------------------------------------------------------------------
# inputs


def load_set(source: str) -> ElementSet:
    if source.startswith("file:"):
        path = Path(source[5:])
        try:
            data = path.read_bytes()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        A, dups = parse_set_file(data)
        for line in dups:
            print(f"warning: {path}:{line}: duplicate element ignored", file=sys.stderr)
        return A
    return generate(parse_family_spec(source))


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def parse_values(text: str) -> list[int]:
    """``4..64`` (every integer), ``4..64..x2`` (doubling) or ``4,8,16``."""
    try:
        if ".." in text:
            parts = text.split("..")
            lo, hi = int(parts[0]), int(parts[1])
            if len(parts) == 3:
                if not parts[2].startswith("x") or int(parts[2][1:]) < 2:
                    raise ValueError
                out, v, f = [], lo, int(parts[2][1:])
                while v <= hi:
                    out.append(v)
                    v *= f
                return out
            return list(range(lo, hi + 1))
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InputError(f"bad --values {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_stats(args, precision):
    A = load_set(args.set)
    s = sizes(A)
    body = {
        "input": args.set,
        "inputDigest": input_digest(A),
        "n": len(A),
        "field": A.field,
        "sumset": s["sum"],
        "diffset": s["diff"],
        "prodset": s["prod"],
        "ratioset": s["ratio"],
        "energy": int(additive_energy(A, A)),
        "multEnergy": None if A.has_zero() else int(multiplicative_energy(A)),
        "cubicEnergy": int(cubic_energy(A)),
    }
    return body, 0


def _default_configuration(A: ElementSet, multiplicative: bool):
    """``A x A`` against the lines ``y = x + d`` and, if allowed, ``y = r x``."""
    lines = [Line(1, -1, -d) for d in rep_function(A, A, "diff").keys()]
    if multiplicative:
        lines += [origin_line(r) for r in rep_function(A, A, "ratio").keys()]
    return cartesian_grid(A), lines


def cmd_verify(args, precision):
    A = load_set(args.set)
    mult = not args.no_multiplicative
    reports = check_exact_inequalities(A, multiplicative=mult, precision=precision)
    P, L = _default_configuration(A, mult)
    reports += check_st_reports(P, L, precision=precision)
    if mult:
        for sign in ("diff", "sum"):
            reports += elekes_check(A, sign, precision=precision)
    return _checks_output(args, A, reports, precision), 0 if all_exact_pass(reports) else 1


def cmd_chain(args, precision):
    A = load_set(args.set)
    ch = proof_chain(A, args.case, args.sign, precision=precision)
    reports = ch.reports + theorem_report(A, precision=precision)
    meta = ch.meta()
    meta["stats"] = {k: v for k, v in ch.stats.items()}
    return (_checks_output(args, A, reports, precision, meta),
            0 if all_exact_pass(reports) else 1)


def cmd_incidence(args, precision):
    P, pdups = parse_point_file(_read(args.points))
    L, ldups = parse_line_file(_read(args.lines))
    for name, dups in ((args.points, pdups), (args.lines, ldups)):
        for line in dups:
            print(f"warning: {name}:{line}: duplicate entry ignored", file=sys.stderr)
    deg = point_degrees(list(P), L)
    ldeg = [d for _, d in line_degrees(list(P), L)]
    ts = [args.t] if args.t else sorted({int(d) for d in deg if d >= 1} | {1})
    body = {
        "points": len(P),
        "lines": len(L),
        "incidences": int(deg.sum()),
        "weightedIncidences": weighted_incidences(list(P), L),
        "richPoints": [{"t": t, "count": int((deg >= t).sum()),
                        "points": [p.render() for p, d in zip(P, deg) if d >= t]
                        if args.t else None} for t in ts],
        "richLines": [{"t": t, "count": sum(1 for d in ldeg if d >= t)} for t in ts],
        "checks": [r.to_dict(precision) for r in check_st_reports(P, L, precision=precision)],
    }
    if args.format == "csv":
        return _csv([("t", "richPoints", "richLines")]
                    + [(r["t"], r["count"], l["count"])
                       for r, l in zip(body["richPoints"], body["richLines"])]), 0
    return body, 0


def scan_row(spec_text: str, precision: int) -> list[str]:
    """One CSV row of set sizes, energies and observed exponents."""
    A = generate(parse_family_spec(spec_text))
    s = sizes(A)
    ev = Evaluator(precision)
    nz = not A.has_zero()
    exps = []
    for case, sign in TARGETS:
        if len(A) < 2 or (case == "ratio" and not nz):
            exps.append("")
        else:
            exps.append(render_number(observed_exponent(A, case, sign, ev, s), precision))
    cell = lambda v: "" if v is None else str(v)  # noqa: E731
    return [SCAN_SCHEMA, spec_text, str(len(A)), cell(s["sum"]), cell(s["diff"]),
            cell(s["prod"]), cell(s["ratio"]), str(int(additive_energy(A, A))),
            cell(int(multiplicative_energy(A)) if nz else None),
            str(int(cubic_energy(A)))] + exps


def _scan_worker(job):
    return scan_row(*job)


def cmd_scan(args, precision):
    template = args.set
    if "{n}" in template:
        if not args.values:
            raise InputError("a spec with {n} needs --values")
        specs = [template.replace("{n}", str(v)) for v in parse_values(args.values)]
    else:
        specs = [template]
    for s in specs:
        parse_family_spec(s)
    jobs = [(s, precision) for s in specs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_scan_worker, jobs))
    else:
        rows = [_scan_worker(j) for j in jobs]
    if args.format == "json":
        return [dict(zip(SCAN_COLUMNS, r)) for r in rows], 0
    return _csv([SCAN_COLUMNS] + rows), 0


# ---------------------------------------------------------------------------
# output


class _CSVText(str):
    """Marker for output that is already rendered text."""


def _csv(rows) -> _CSVText:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for r in rows:
        w.writerow(r)
    return _CSVText(buf.getvalue())


def _config(args, precision) -> dict:
    cfg = {k: v for k, v in vars(args).items() if k not in ("func", "output", "jobs")}
    cfg["precision"] = precision
    return cfg


def _checks_output(args, A, reports, precision, meta=None):
    if args.format == "csv":
        cols = ("checkId", "paperAnchor", "lhs", "rhs", "ratio", "verdict", "notes")
        rows = [cols] + [[r.to_dict(precision)[c] for c in cols] for r in reports]
        return _csv(rows)
    return report_document(reports, A, _config(args, precision), precision, meta)


def _render(body) -> str:
    if isinstance(body, _CSVText):
        return str(body)
    return json.dumps(body, indent=2, sort_keys=False) + "\n"


def _destination(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    base = os.environ.get("SUMPROD_OUTPUT_DIR")
    if base and not p.is_absolute():
        p = Path(base) / p
    return p


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default=None,
                        help="output format (default: csv for scan, json otherwise)")
    common.add_argument("--output", "-o", help="write the report here instead of stdout")
    common.add_argument("--precision", type=int, default=None,
                        help=f"significant digits for decimals (>= {MIN_PRECISION}, "
                             f"default {DEFAULT_PRECISION})")
    common.add_argument("--jobs", type=int, default=1,
                        help="worker processes for independent instances (scan)")

    parser = argparse.ArgumentParser(
        prog="sumprod", description="Exact sum-product statistics and inequality checks.",
        epilog=FAMILY_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_, epilog=FAMILY_HELP,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
        p.set_defaults(func=func)
        return p

    p = add("stats", cmd_stats, "set sizes and energies")
    p.add_argument("--set", required=True, help="file:PATH or a family spec")
    p = add("verify", cmd_verify, "exact inequality suite, incidence and ratio-line reports")
    p.add_argument("--set", required=True)
    p.add_argument("--no-multiplicative", action="store_true",
                   help="skip checks that divide by set elements (allows 0 in the set)")
    p = add("chain", cmd_chain, "run the origin-line argument step by step")
    p.add_argument("--set", required=True)
    p.add_argument("--case", choices=("ratio", "product"), default="ratio")
    p.add_argument("--sign", choices=("sum", "diff"), default="diff")
    p = add("incidence", cmd_incidence, "incidences between point and line files")
    p.add_argument("--points", required=True, help="file of 'x;y' points")
    p.add_argument("--lines", required=True, help="file of 'a;b;c' lines (a*x + b*y = c)")
    p.add_argument("--t", type=int, default=None, help="list the points on at least t lines")
    p = add("scan", cmd_scan, "one CSV row per family instance")
    p.add_argument("--set", required=True, help="family spec, optionally with {n}")
    p.add_argument("--values", help="values for {n}: 4..64, 4..64..x2 or 4,8,16")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.format is None:
        args.format = "csv" if args.command == "scan" else "json"
    try:
        precision = args.precision
        if precision is None:
            precision = int(os.environ.get("SUMPROD_PRECISION", DEFAULT_PRECISION))
        if precision < MIN_PRECISION:
            raise InputError(f"precision must be at least {MIN_PRECISION}")
        if args.jobs < 1:
            raise InputError("--jobs must be at least 1")
        body, code = args.func(args, precision)
    except (SumprodError, ComputationTooLarge, ValueError, ZeroDivisionError) as exc:
        print(f"sumprod {args.command}: error: {exc}", file=sys.stderr)
        return 2
    text = _render(body)
    dest = _destination(args.output)
    if dest is None:
        sys.stdout.write(text)
    else:
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_text(text)
    return code


__all__ = ["main", "build_parser", "scan_row"]
