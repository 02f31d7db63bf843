"""Command-line front end: verification suites, integral tables, b-scan, flat Pohozaev check."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, suite
from .moments import ISymbol, canonical_I, i_numeric
from .named import NAMES, PARAM_NAMES, ExcludedCombination, build_named
from .profiles import dump_profile
from .quadrature import QuadratureSpec
from .report import EXIT_USAGE, ReportDocument, emit, exit_code, rows_to_csv
from .suite import (DEFAULT_DELTAS, PDE_LEMMAS, PohozaevFlatCase, VerificationReport, pohozaev_flat_check,
                    scan_b, scan_report)

N7_IDS = ("AdA-1", "A2-1", "35A-1", "stimafinalegamma", "poho1-n7", "pohofinale7")
N8_IDS = ("AdA8", "AA8", "finale8", "bracket8", "stimafinalegamma8", "poho1-n8", "pohofinale8")
N6_IDS = ("A1-1", "A2+A3-1", "A4-1", "R(UU)", "Rdiv-cancellation", "R(udelta)", "pohofinale6", "logfit-n6")
STRUCTURAL_IDS = ("gradvq", "Uvq", "dervq", "Phi1-cross")
OTHER_IDS = ("Phitilda1-printed", "Sym", "Iam", "poho", "scan-b")
LEMMA_IDS = tuple(PDE_LEMMAS) + OTHER_IDS + STRUCTURAL_IDS + N7_IDS + N8_IDS + N6_IDS


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _fraction_list(text: str) -> list[Fraction]:
    items = [x for x in text.split(",") if x.strip()]
    if not items:
        raise argparse.ArgumentTypeError("empty list")
    return [_fraction(x) for x in items]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}")


def _delta_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of numbers: {text!r}")
    if len(vals) < 2 or any(not 0 < v < 1 for v in vals):
        raise argparse.ArgumentTypeError("need at least two deltas in (0, 1)")
    return vals


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _param(text: str) -> tuple[str, Fraction]:
    name, sep, value = text.partition("=")
    if not sep or name not in PARAM_NAMES:
        raise argparse.ArgumentTypeError(f"expected NAME=VALUE with NAME in {', '.join(PARAM_NAMES)}")
    return name, _fraction(value)


def _add_output(p: argparse.ArgumentParser, formats: Sequence[str] = ("json", "csv", "text"), default="text"):
    p.add_argument("--format", choices=formats, default=default, help="output format (default %(default)s)")
    p.add_argument("--output", "-o", type=Path, help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="yamabe-check",
        description="Exact and numeric verification of the explicit expansion for the boundary Yamabe problem.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    which = v.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="every suite, in source order")
    which.add_argument("--lemma", choices=LEMMA_IDS, metavar="ID", help="one lemma id: " + ", ".join(LEMMA_IDS))
    v.add_argument("--n", type=_int_list, help="dimension filter, e.g. 7 or 6,7,8")
    v.add_argument("--b", type=_fraction, help="n = 8 parameter b (default -2)")
    v.add_argument("--delta", type=_delta_list, help="n = 6 truncation list (default 1e-2,1e-3,1e-4)")
    v.add_argument("--r", type=_positive, help="radius for the flat Pohozaev check")
    v.add_argument("--tol", type=_positive, default=1e-12, help="quadrature target tolerance (default %(default)g)")
    v.add_argument("--seed", type=int, default=0, help="first curvature sample seed (default 0)")
    v.add_argument("--figures", type=Path, help="directory for the scan-b and n = 6 log-fit figures")
    v.add_argument("--dump-profile", action="store_true", help="append the profiles under test to PDE report notes")
    _add_output(v)

    t = sub.add_parser("table", help="tables of exact integral values")
    t.add_argument("--integrals", action="store_true", required=True, help="I_m^alpha table as CSV")
    t.add_argument("--m-max", type=int, default=12, help="largest m (default %(default)s)")
    t.add_argument("--alpha-max", type=int, default=12, help="largest alpha (default %(default)s)")
    t.add_argument("--half", action="store_true", help="include half-integer m")
    t.add_argument("--output", "-o", type=Path)

    s = sub.add_parser("scan-b", help="sign of the n = 8 bracket on a grid of b")
    s.add_argument("--grid", type=_fraction_list, required=True, help="comma-separated rationals, e.g. -3,-2,-1,0")
    s.add_argument("--figures", type=Path, help="directory for the scan figure")
    _add_output(s, ("text", "csv", "json"))

    p = sub.add_parser("pohozaev", help="flat Pohozaev identity for the bubble")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=_positive, required=True)
    _add_output(p)

    d = sub.add_parser("profile", help="print the serialized profile of a named function")
    d.add_argument("name", choices=NAMES)
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--param", type=_param, action="append", default=[], help="NAME=VALUE, repeatable")
    d.add_argument("--variant", choices=("printed", "corrected"), default="printed")
    return parser


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _dims(args, default: Sequence[int]) -> tuple[int, ...]:
    if not args.n:
        return tuple(default)
    return tuple(args.n)


def _config(args) -> dict:
    """Echo of the options that determine the report (paths excluded)."""
    keys = ("command", "all", "lemma", "n", "b", "delta", "r", "tol", "seed", "dump_profile", "grid")
    out = {}
    for k in keys:
        if not hasattr(args, k):
            continue
        v = getattr(args, k)
        if isinstance(v, Fraction):
            v = str(v)
        elif isinstance(v, list):
            v = [str(x) if isinstance(x, Fraction) else x for x in v]
        out[k] = v
    return out


def _profile_notes(rep: VerificationReport, lemma: str, n: int) -> VerificationReport:
    name = PDE_LEMMAS[lemma][0]
    funcs = [build_named(name, n)] if name else [build_named("PhiTilde1", n), build_named("PhiTilde2", n)]
    extra = tuple(f"profile {f.id} [{fac.name}]: {dump_profile(p)}" for f in funcs for fac, p in f.body)
    d = rep.to_dict()
    d["notes"] = list(rep.notes) + list(extra)
    return VerificationReport.from_dict(d)


def verify_lemma(lemma: str, args, spec: QuadratureSpec, extras: dict) -> list[VerificationReport]:
    b = args.b if args.b is not None else Fraction(-2)
    deltas = tuple(args.delta) if args.delta else DEFAULT_DELTAS
    if args.b is not None and lemma not in N8_IDS and lemma != "scan-b":
        raise UsageError("--b applies to the n = 8 lemmas only")
    if lemma in PDE_LEMMAS:
        plan = dict(suite.PDE_PLAN)[lemma]
        out = []
        for n in _dims(args, plan):
            rep = suite.verify_pde(lemma, n)
            if args.dump_profile:
                rep = _profile_notes(rep, lemma, n)
            out.append(rep)
        return out
    if lemma == "Phitilda1-printed":
        return [suite.verify_printed_phitilda1(n) for n in _dims(args, (5, 7, 8))]
    if lemma in STRUCTURAL_IDS:
        return [r for n in _dims(args, (5, 6, 7, 8)) for r in suite.structural_checks(n, args.seed, spec)
                if r.lemma_id == lemma]
    if lemma == "Sym":
        return [suite.symmetry_report(n, range(args.seed, args.seed + 10), spec) for n in _dims(args, (6, 7, 8))]
    if lemma == "Iam":
        return [suite.integral_engine_report()]
    if lemma == "poho":
        radii = (args.r,) if args.r else (1.0, 2.0)
        return [pohozaev_flat_check(PohozaevFlatCase(n, r)) for n in _dims(args, (6, 7, 8)) for r in radii]
    if lemma == "scan-b":
        res = scan_b(suite.SCAN_GRID)
        extras["scan"] = res
        return [scan_report(res)]
    if args.n and len(args.n) != 1:
        raise UsageError(f"{lemma} belongs to a single dimension")
    if lemma in N7_IDS:
        _check_dim(args, 7)
        return [r for r in suite.suite_n7(spec) if r.lemma_id == lemma]
    if lemma in N8_IDS:
        _check_dim(args, 8)
        return [r for r in suite.suite_n8(b, spec) if r.lemma_id == lemma]
    _check_dim(args, 6)
    reports, fits = suite.suite_n6(deltas, spec, fit=lemma == "logfit-n6")
    if fits:
        extras["logfit"] = fits
    return [r for r in reports if r.lemma_id == lemma]


def _check_dim(args, n: int) -> None:
    if args.n and args.n != [n]:
        raise UsageError(f"this lemma is an n = {n} statement")


def cmd_verify(args) -> tuple[ReportDocument, dict]:
    spec = QuadratureSpec(tol=args.tol)
    extras: dict = {}
    if args.all:
        dims = _dims(args, (5, 6, 7, 8))
        bad = [n for n in dims if n not in (5, 6, 7, 8)]
        if bad:
            raise UsageError(f"--n must be among 5, 6, 7, 8 (got {bad})")
        reports = suite.run_all(dims, args.b if args.b is not None else Fraction(-2),
                                tuple(args.delta) if args.delta else DEFAULT_DELTAS, args.seed, spec, extras)
    else:
        reports = verify_lemma(args.lemma, args, spec, extras)
    return ReportDocument(_config(args), reports), extras


def write_figures(extras: dict, directory: Path) -> list[Path]:
    from .plotting import plot_log_fit, plot_scan_b

    out = []
    if "scan" in extras:
        out.append(plot_scan_b(extras["scan"], directory / "scan_b.png"))
    if "logfit" in extras:
        out.append(plot_log_fit(extras["logfit"], directory / "logfit_n6.png"))
    return out


# ---------------------------------------------------------------------------
# other commands
# ---------------------------------------------------------------------------

def integral_rows(m_max: int = 12, alpha_max: int = 12, half: bool = False):
    step = 1 if half else 2
    for twice_m in range(step if half else 2, 2 * m_max + 1, step):
        for alpha in range(0, alpha_max + 1):
            sym = ISymbol(twice_m, alpha)
            if not sym.convergent:
                continue
            coeff, base = canonical_I(sym)
            yield (str(sym.m), alpha, str(coeff), str(base), repr(i_numeric(sym)))


def scan_output(res, fmt: str) -> str:
    if fmt == "csv":
        return rows_to_csv(("b", "value", "value_float", "sign"),
                           ((str(b), str(v), repr(float(v)), s) for b, v, s in res.rows))
    if fmt == "json":
        import json

        d = {
            "bracket": [str(c) for c in res.coeffs],
            "rows": [{"b": str(b), "value": str(v), "sign": s} for b, v, s in res.rows],
            "vertex": str(res.vertex),
            "vertex_value": str(res.vertex_value),
            "value_at_minus2": str(res.value_at_minus2),
            "roots_exact": list(res.roots_exact),
            "roots": [repr(r) for r in res.roots],
        }
        return json.dumps(d, indent=2) + "\n"
    c0, c1, c2 = res.coeffs
    lines = [f"bracket(b) = {suite.quad_poly(res.coeffs)}  (units w6 * I(8,10))", "",
             f"{'b':>8} {'value':>14} {'float':>12} sign"]
    for b, v, s in res.rows:
        lines.append(f"{str(b):>8} {str(v):>14} {float(v):>12.6f} {s}")
    lines += ["", f"vertex b* = {res.vertex} ({float(res.vertex):.6f}), value {res.vertex_value} > 0",
              f"value at b = -2: {res.value_at_minus2}"]
    if res.roots_exact:
        lines.append(f"positive for {res.roots_exact[0]} < b < {res.roots_exact[1]}  "
                     f"({res.roots[0]:.6f} < b < {res.roots[1]:.6f})")
    return "\n".join(lines) + "\n"


def _write(text: str | bytes, path: Optional[Path]) -> None:
    data = text.encode("utf-8") if isinstance(text, str) else text
    if path is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(data)


def _join_negative_values(argv: Sequence[str]) -> list[str]:
    """Let '--grid -3,-2' and '--b -2' through: argparse reads a leading '-' as a flag."""
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a in ("--grid", "--b"):
            nxt = next(it, None)
            if nxt is None:
                out.append(a)
            elif nxt[:1] == "-" and nxt[1:2].isdigit():
                out.append(f"{a}={nxt}")
            else:
                out += [a, nxt]
        else:
            out.append(a)
    return out


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse: 2 on malformed flags, 0 for --help
        return int(exc.code or 0)
    try:
        if args.command == "verify":
            doc, extras = cmd_verify(args)
            _write(emit(doc, args.format), args.output)
            if args.figures:
                for path in write_figures(extras, args.figures):
                    print(f"figure: {path}", file=sys.stderr)
            return doc.exit_code
        if args.command == "table":
            rows = integral_rows(args.m_max, args.alpha_max, args.half)
            _write(rows_to_csv(("m", "alpha", "canonical_coeff", "canonical_base", "numeric_value"), rows),
                   args.output)
            return 0
        if args.command == "scan-b":
            res = scan_b(args.grid)
            _write(scan_output(res, args.format), args.output)
            if args.figures:
                from .plotting import plot_scan_b

                print(f"figure: {plot_scan_b(res, args.figures / 'scan_b.png')}", file=sys.stderr)
            return 0
        if args.command == "pohozaev":
            doc = ReportDocument(_config(args), [pohozaev_flat_check(PohozaevFlatCase(args.n, args.r))])
            _write(emit(doc, args.format), args.output)
            return doc.exit_code
        if args.command == "profile":
            f = build_named(args.name, args.n, dict(args.param), variant=args.variant)
            lines = [f"{f.id} n={f.n} {dict((k, str(v)) for k, v in f.params)} ({f.variant})"]
            for (fac, p), (_, rhs) in zip(f.body, f.rhs):
                lines.append(f"  [{fac.name}] body: {dump_profile(p)}")
                lines.append(f"  [{fac.name}] rhs:  {dump_profile(rhs)}")
            lines += [f"  note: {x}" for x in f.notes]
            _write("\n".join(lines) + "\n", None)
            return 0
    except (UsageError, ExcludedCombination, ValueError) as exc:
        print(f"yamabe-check: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"yamabe-check: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
