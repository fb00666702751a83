"""Command-line front end: ``crowns <subcommand> ...``.

Exit status: 0 success, 1 failed validation or check, 2 usage or input
error, 3 a sign scan of F found more than two zeros.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import reference_values as ref
from .analysis import (
    admissible_set,
    bifurcation_n3,
    central_interval,
    convex_threshold_mass,
    convexity_window,
    count_configurations,
    solve_for_mass,
    zeros_of_F,
)
from .core import load_crown
from .errors import ConjectureViolation, CrownError, DomainError, SingularityError
from .oracle import full_gradient_residual
from .potential import POLE_RTOL, context
from .rootkit import geometric_grid

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONJECTURE = 0, 1, 2, 3
DEFAULT_TOL = 1e-12


def fmt(x) -> str:
    """12 significant digits; '' for None, plain text for everything else."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{float(x):.12g}"
    return str(x)


def parse_n_list(text: str) -> list[int]:
    """'3-10,100,500' -> [3, 4, ..., 10, 100, 500]."""
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = (int(p) for p in part.split("-", 1))
                if hi < lo:
                    raise ValueError
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad n-list item {part!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty n-list")
    return out


class Output:
    """Collects rows and writes them as aligned text, CSV or JSON."""

    def __init__(self, fmt_name: str, stream):
        self.format = fmt_name
        self.stream = stream

    def table(self, header: list[str], rows: list[list], records: list[dict] | None = None):
        if self.format == "json":
            recs = records if records is not None else [dict(zip(header, r)) for r in rows]
            json.dump(recs, self.stream, indent=2, default=_json_default)
            self.stream.write("\n")
        elif self.format == "csv":
            w = csv.writer(self.stream, lineterminator="\r\n")
            w.writerow(header)
            w.writerows([fmt(v) for v in r] for r in rows)
        else:
            cells = [header] + [[fmt(v) for v in r] for r in rows]
            widths = [max(len(c[i]) for c in cells) for i in range(len(header))]
            for c in cells:
                self.stream.write("  ".join(s.rjust(w) for s, w in zip(c, widths)).rstrip() + "\n")

    def line(self, text: str):
        if self.format == "text":
            self.stream.write(text + "\n")

    def document(self, obj):
        json.dump(obj, self.stream, indent=2, default=_json_default)
        self.stream.write("\n")


def _json_default(o):
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(f"not JSON serialisable: {type(o).__name__}")


def _check_cell(out, label: str, got: float, want: float, tol: float) -> bool:
    diff = abs(got - want)
    ok = diff <= tol
    out.stream.write(f"{'PASS' if ok else 'FAIL'}  {label}: computed {fmt(got)} "
                     f"expected {fmt(want)} |diff| {diff:.3g}\n")
    return ok


# ---------------------------------------------------------------------------
# subcommands


def _zero_rows(ns, tol):
    rows, status = [], EXIT_OK
    for n in ns:
        try:
            zp = zeros_of_F(n, tol)
        except ConjectureViolation as exc:
            flag = f"conjecture-violation ({len(exc.brackets)} zeros)"
            rows.append([n, None, None, None, None, flag])
            status = EXIT_CONJECTURE
            continue
        if zp.analytic:
            flag = "analytic"
        else:
            flag = "verified" if zp.conjecture_verified else "unverified"
        rows.append([n, zp.z1, zp.z2, 1.0 / zp.z2, 1.0 / zp.z1, flag])
    return rows, status


def cmd_table(args, out) -> int:
    ns = args.n_list if args.n_list is not None else [args.n]
    rows, status = _zero_rows(ns, args.tol)
    out.table(["n", "z1", "z2", "1/z2", "1/z1", "flag"], rows)
    if args.check:
        ok = True
        for row in rows:
            n = row[0]
            if n not in ref.ZEROS or row[1] is None:
                out.stream.write(f"SKIP  n={n}: no reference value\n")
                continue
            for name, got, want in zip(("z1", "z2"), row[1:3], ref.ZEROS[n]):
                ok &= _check_cell(out, f"n={n} {name}", got, want, ref.TABLE_TOL)
        if not ok and status == EXIT_OK:
            status = EXIT_FAIL
    return status


def cmd_admissible(args, out) -> int:
    n = args.n
    adm = admissible_set(n, args.tol)
    central = central_interval(n, args.tol)
    c = math.cos(math.pi / n)
    conv = convexity_window(n)
    if out.format == "json":
        out.document({"n": n, "admissible": [[iv.lo, iv.hi, iv.label] for iv in adm],
                      "central": [central.lo, central.hi], "cos_pi_n": c,
                      "convexity_window": [conv[0].lo, conv[0].hi]})
    else:
        rows = [[iv.label, iv.lo, iv.hi] for iv in adm]
        rows.append(["convexity-window", conv[0].lo, conv[0].hi])
        out.table(["component", "lo", "hi"], rows)
        out.line(f"central admissible interval: {central}")
        out.line(f"cos(pi/n): {fmt(c)}")
    if not args.check:
        return EXIT_OK
    if n not in ref.CENTRAL:
        out.stream.write(f"SKIP  n={n}: no reference value\n")
        return EXIT_OK
    (lo, hi), cos_ref = ref.CENTRAL[n]
    ok = _check_cell(out, f"n={n} central lo", central.lo, lo, ref.TABLE_TOL)
    ok &= _check_cell(out, f"n={n} central hi", central.hi, hi, ref.TABLE_TOL)
    ok &= _check_cell(out, f"n={n} cos(pi/n)", c, cos_ref, ref.TABLE_TOL)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_solve(args, out) -> int:
    sset = solve_for_mass(args.n, args.mass, args.tol)
    if out.format == "json":
        out.document(sset.to_dict())
        return EXIT_OK
    rows = [[s.a, s.interval_label, s.convex, s.residual,
             s.report.lambda_fit if s.report else None] for s in sset.solutions]
    out.table(["a", "interval", "convex", "residual", "lambda"], rows)
    out.line(f"distinct crowns: {sset.count_deduplicated}")
    return EXIT_OK


def cmd_count(args, out) -> int:
    res = count_configurations(args.n, args.mass, args.tol)
    if out.format == "json":
        out.document({"n": res.n, "mass_ratio": res.mass_ratio, "count": res.count,
                      "expected": res.expected, "clause": res.clause,
                      "boundary": res.boundary})
    else:
        out.table(["n", "m", "count", "expected"],
                  [[res.n, res.mass_ratio, res.count, res.expected]])
        out.line(res.clause)
    return EXIT_OK


def cmd_bifurcation(args, out) -> int:
    if args.n != 3:
        raise DomainError("bifurcation values are defined for n = 3 only")
    bif = bifurcation_n3(args.tol)
    out.table(["point", "a", "m"],
              [["max", bif.a_star, bif.m_star], ["min", bif.a_star_star, bif.m_star_star]],
              records=[{"a_star": bif.a_star, "m_star": bif.m_star,
                        "a_star_star": bif.a_star_star, "m_star_star": bif.m_star_star}])
    if not args.check:
        return EXIT_OK
    ok = _check_cell(out, "m*", bif.m_star, ref.M_STAR, ref.BIFURCATION_TOL)
    ok &= _check_cell(out, "m**", bif.m_star_star, ref.M_STAR_STAR, ref.BIFURCATION_TOL)
    ok &= _check_cell(out, "m_bar (n=4)", convex_threshold_mass(4), ref.M_BAR,
                      ref.BIFURCATION_TOL)
    return EXIT_OK if ok else EXIT_FAIL


def sweep_rows(n: int, a_min: float, a_max: float, steps: int, tol: float) -> list[list]:
    """Rows (a, F, G, H or None, admissible, convex) on a geometric grid."""
    ctx = context(n)
    grid = geometric_grid(a_min, a_max, steps)
    v = ctx.grid(grid, full=False)
    adm = admissible_set(n, tol)
    conv = convexity_window(n)
    rows = []
    for a, f, g, c12 in zip(grid, v["F"], v["G"], v["C12"]):
        a, f, g = float(a), float(f), float(g)
        pole = abs(g) < POLE_RTOL * max(ctx.sn, abs(a ** 3 * c12))
        h = None if pole else a * a * f / g
        rows.append([a, f, g, h, (not pole) and a in adm, a in conv])
    return rows


def cmd_sweep(args, out) -> int:
    rows = sweep_rows(args.n, args.a_min, args.a_max, args.steps, args.tol)
    header = ["a", "F", "G", "H", "admissible", "convex"]
    if args.out is None:
        Output("csv" if out.format == "text" else out.format, out.stream).table(header, rows)
        return EXIT_OK
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        Output("csv" if out.format == "text" else out.format, fh).table(header, rows)
    return EXIT_OK


def cmd_delta(args, out) -> int:
    if args.n_list is not None:
        ns = args.n_list
    else:
        lo, hi = args.n_min, args.n_max
        if lo < 5 or hi < lo:
            raise DomainError("need 5 <= n-min <= n-max")
        if hi == lo:
            ns = [lo]
        else:
            ns = sorted({int(round(x)) for x in geometric_grid(lo, hi, args.steps)})
    rows, status = [], EXIT_OK
    for n in ns:
        try:
            d = zeros_of_F(n, args.tol).z1 - math.cos(math.pi / n)
        except ConjectureViolation:
            rows.append([n, None, "conjecture-violation"])
            status = EXIT_CONJECTURE
            continue
        rows.append([n, d, d > 0])
    out.table(["n", "delta", "positive"], rows)
    if args.check and status == EXIT_OK and not all(r[2] is True for r in rows):
        status = EXIT_FAIL
    return status


def _json_error_context(path: Path, exc: json.JSONDecodeError) -> str:
    lines = exc.doc.splitlines()
    text = lines[exc.lineno - 1] if 0 < exc.lineno <= len(lines) else ""
    return (f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}\n"
            f"    {text}\n    {' ' * (exc.colno - 1)}^")


def cmd_validate(args, out) -> int:
    path = Path(args.path)
    try:
        crown = load_crown(path)
    except json.JSONDecodeError as exc:
        sys.stderr.write("parse error: " + _json_error_context(path, exc) + "\n")
        return EXIT_USAGE
    except OSError as exc:
        sys.stderr.write(f"cannot read {path}: {exc.strerror}\n")
        return EXIT_USAGE
    except ValueError as exc:
        sys.stderr.write(f"invalid crown document {path}: {exc}\n")
        return EXIT_USAGE
    try:
        rep = full_gradient_residual(crown, args.tol_pass)
    except SingularityError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    if out.format == "json":
        out.document(rep.to_dict())
    else:
        rows = [["max_gradient_residual", rep.max_gradient_residual],
                ["max_imag_residual", rep.max_imag_residual],
                ["lambda_fit", rep.lambda_fit],
                ["lambda_spread", rep.lambda_spread]]
        rows += [[f"lambda_ring_{j + 1}", lam] for j, lam in enumerate(rep.lambda_per_ring)]
        out.table(["quantity", "value"], rows)
        out.line(f"{'PASS' if rep.passes else 'FAIL'} (tolerance {fmt(rep.tol)})")
    return EXIT_OK if rep.passes else EXIT_FAIL


# ---------------------------------------------------------------------------
# argument parsing


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"n must be >= 2, got {v}")
    return v


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not (v > 0 and math.isfinite(v)):
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                        help="relative root refinement tolerance (default %(default)g)")

    p = argparse.ArgumentParser(prog="crowns", description="Twisted (2,n)-crown computations.",
                                epilog="exit status: 0 ok, 1 check or validation failed, "
                                       "2 usage or input error, 3 more than two zeros of F")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("zeros", cmd_table, "zeros z1 < 1 < z2 of F for one n")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--check", action="store_true", help="compare with published values")
    sp.set_defaults(n_list=None)

    sp = add("table", cmd_table, "zeros of F for a list of n")
    sp.add_argument("--n-list", type=parse_n_list, default=parse_n_list("3-10,100,500,1000,5000"),
                    help="e.g. '3-10,100,500' (default: the published rows)")
    sp.add_argument("--check", action="store_true", help="compare with published values")
    sp.set_defaults(n=None)

    sp = add("admissible", cmd_admissible,
             "admissible radii, central interval and convexity window")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--check", action="store_true", help="compare with published values")

    sp = add("solve", cmd_solve, "all radii a with H(a) = m, each checked by the oracle")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--mass", type=_positive_float, required=True)

    sp = add("count", cmd_count, "number of distinct twisted crowns for mass ratio m")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--mass", type=_positive_float, required=True)

    sp = add("bifurcation", cmd_bifurcation, "local extrema (a*, m*) and (a**, m**) of H for n = 3")
    sp.add_argument("--n", type=_positive_int, default=3)
    sp.add_argument("--check", action="store_true", help="compare with published values")

    sp = add("sweep", cmd_sweep, "CSV samples of F, G and H on a geometric grid")
    sp.add_argument("--n", type=_positive_int, required=True)
    sp.add_argument("--a-min", type=_positive_float, default=0.1)
    sp.add_argument("--a-max", type=_positive_float, default=10.0)
    sp.add_argument("--steps", type=int, default=1001)
    sp.add_argument("--out", help="output file (default stdout)")

    sp = add("delta", cmd_delta, "z1 - cos(pi/n) over a range of n")
    sp.add_argument("--n-min", type=int, default=5)
    sp.add_argument("--n-max", type=int, default=5000)
    sp.add_argument("--steps", type=int, default=50, help="number of sampled n (geometric)")
    sp.add_argument("--n-list", type=parse_n_list, default=None)
    sp.add_argument("--check", action="store_true", help="fail unless every delta is positive")

    sp = add("validate", cmd_validate, "check a crown JSON document with the Cartesian oracle")
    sp.add_argument("path")
    sp.add_argument("--pass-tol", dest="tol_pass", type=_positive_float, default=1e-9,
                    help="relative residual threshold (default %(default)g)")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 2) < 2:
        parser.error("--steps must be >= 2")
    if getattr(args, "a_min", 0) and args.a_min >= args.a_max:
        parser.error("--a-min must be below --a-max")
    out = Output(args.format, sys.stdout)
    try:
        return args.func(args, out)
    except ConjectureViolation as exc:
        sys.stderr.write(f"conjecture violation: {exc}\n")
        return EXIT_CONJECTURE
    except OSError as exc:
        sys.stderr.write(f"I/O error: {exc}\n")
        return EXIT_USAGE
    except (DomainError, CrownError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE if isinstance(exc, DomainError) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
