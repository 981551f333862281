"""Command-line entry point: ``weylspectrum <subcommand> ...``.

Exit codes: 0 success, 1 a computational finding of failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import jsonio
from .charpoly import char_poly_of
from .enumerator import enumerate_Md, truncations
from .jsonio import InputError, dumps, matrix_to_json, poly_to_json
from .lattice import LatticeError
from .orbit import OrbitData, OrbitDataError
from .poly import IntPolynomial
from .polyarith import classify
from .realizer import DEFAULT_K, RealizerError, solve_full_cycle, solve_truncated
from .spectrum import (
    ScanAborted,
    limit_scan,
    monotonicity_check,
    pisot_catalog,
    scan_one,
    scan_sources,
)
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FINDING, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"environment variable {name} must be an integer") from None


def _eps(args) -> Fraction:
    eps = args.eps if args.eps else Fraction(1, 10**12)
    if eps <= 0 or eps < Fraction(1, 2**200):
        raise UsageError("eps must lie in [2^-200, oo)")
    return eps


def _emit(out, record):
    out.write(dumps(record) + "\n")


# ---------------------------------------------------------------- subcommands

def cmd_enumerate(args, out):
    if args.degree < 2:
        raise UsageError("--degree must be >= 2")
    cat = enumerate_Md(args.degree, args.max_matrices)
    class_of = {}
    for key, members in cat.orbit_classes.items():
        for m in members:
            class_of[m] = matrix_to_json(key)
    for i, M in enumerate(cat.representatives):
        prov = cat.provenance.get(M)
        rec = {"kind": "matrix", "degree": args.degree, "index": i, "M": matrix_to_json(M),
               "orbit_class": class_of[M]}
        if prov and prov[0] != "base":
            rec["provenance"] = {"parent": matrix_to_json(prov[0]), "s": prov[1]}
        elif prov is None:
            rec["provenance"] = {"closure": "column permutation"}
        if args.full_orbits:
            rec["orbit"] = [matrix_to_json(x) for x in cat.expand_orbit(M)]
        _emit(out, rec)
    if args.truncations:
        tc = truncations(cat)
        for i, (M, (parent, keep)) in enumerate(tc.members.items()):
            _emit(out, {"kind": "truncation", "degree": args.degree, "index": i,
                        "M": matrix_to_json(M), "parent": matrix_to_json(parent),
                        "kept": list(keep)})
    for dg in cat.diagnostics:
        _emit(out, {"kind": "diagnostic", "parent": matrix_to_json(dg.parent),
                    "triple": list(dg.triple), "s": dg.s, "reason": dg.reason})
    _emit(out, {"kind": "summary", "representatives": len(cat),
                "orbit_classes": len(cat.orbit_classes), "diagnostics": len(cat.diagnostics)})
    return EXIT_OK


def _classification_record(p: IntPolynomial, eps) -> dict:
    c = classify(p, eps)
    rec = {"char_poly": poly_to_json(p), "char_poly_text": str(p)}
    rec.update(c.to_json())
    rec["t_power"] = c.t_power
    return rec


def cmd_charpoly(args, out):
    od = jsonio.orbit_data_from_json(jsonio.load_json_arg(args.data))
    _emit(out, _classification_record(char_poly_of(od.M, od.n), _eps(args)))
    return EXIT_OK


def cmd_classify(args, out):
    try:
        p = IntPolynomial.parse(args.poly)
    except ValueError as exc:
        raise UsageError(f"cannot parse polynomial: {exc}") from None
    if p.degree < 1:
        raise UsageError("polynomial must have positive degree")
    _emit(out, _classification_record(p, _eps(args)))
    return EXIT_OK


def _scan_task(task):
    M, prov, max_len, truncated, eps = task
    return [(e.to_json(), e.consistent) for e in scan_one(M, prov, max_len, truncated, eps)]


def _scan_rows(args, eps):
    """Entries in scan order; worker results are concatenated in source order."""
    truncated = args.mode == "pisot"
    tasks = [(M, prov, args.max_length, truncated, eps)
             for M, prov in scan_sources(args.degree, args.mode)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as ex:
            chunks = list(ex.map(_scan_task, tasks, chunksize=4))
    else:
        chunks = map(_scan_task, tasks)
    rows = []
    for chunk in chunks:
        for rec, ok in chunk:
            if args.max_entries is not None and len(rows) >= args.max_entries:
                raise ScanAborted(len(rows))
            rec["index"] = len(rows)
            rows.append((rec, ok))
    return rows


CSV_FIELDS = ["index", "n", "truncated", "class", "radius_lo", "radius_hi", "minimal_factor"]


def cmd_scan(args, out):
    eps = _eps(args)
    if args.max_length < 1:
        raise UsageError("--max-length must be positive")
    if args.mode == "limits":
        return _run_limits(args.degree, args.max_length, args.witness, eps, out)
    try:
        rows = _scan_rows(args, eps)
    except ScanAborted as exc:
        _emit(out, {"kind": "partial", "emitted": exc.emitted})
        return EXIT_FINDING
    bad = 0
    writer = None
    if args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
    for rec, ok in rows:
        bad += not ok
        if writer:
            writer.writerow([rec["index"], " ".join(map(str, rec["n"])), rec["truncated"],
                             rec["class"], rec["radius"]["lo"], rec["radius"]["hi"],
                             " ".join(rec["minimal_factor"])])
        else:
            rec["kind"] = "entry"
            rec["dichotomy_ok"] = ok
            _emit(out, rec)
    if not writer:
        _emit(out, {"kind": "summary", "entries": len(rows), "dichotomy_violations": bad})
    return EXIT_FINDING if bad else EXIT_OK


def _run_limits(d, bound, witness, eps, out):
    bad = 0
    count = 0
    for entry in limit_scan(d, bound, witness, eps):
        rec = entry.to_json()
        rec["kind"] = "limit"
        _emit(out, rec)
        count += 1
        bad += not entry.ok
    _emit(out, {"kind": "summary", "entries": count, "failures": bad})
    return EXIT_FINDING if bad else EXIT_OK


def cmd_limits(args, out):
    return _run_limits(args.degree, args.bound, args.witness, _eps(args), out)


def cmd_monotone(args, out):
    M = jsonio.matrix_from_json(jsonio.load_json_arg(args.matrix))
    n1 = jsonio.parse_lengths(args.from_)
    n2 = jsonio.parse_lengths(args.to)
    try:
        v = monotonicity_check(M, n1, n2, args.truncated, _eps(args))
    except ValueError as exc:
        if isinstance(exc, (OrbitDataError, LatticeError)):
            raise
        raise UsageError(str(exc)) from None
    rec = v.to_json()
    _emit(out, rec)
    return EXIT_OK if v.increasing else EXIT_FINDING


def cmd_catalog(args, out):
    if args.upto < 1:
        raise UsageError("--upto must be >= 1")
    for m in range(1, args.upto + 1):
        _emit(out, pisot_catalog(m, _eps(args)).to_json())
    return EXIT_OK


def cmd_realize(args, out):
    prec = args.prec or _env_int("WEYLSPECTRUM_PREC", 256)
    lengths = jsonio.parse_lengths(args.lengths)
    try:
        if args.system == "cycle":
            a = args.a if args.a == "chi-root" else _parse_number(args.a)
            report = solve_full_cycle(lengths, a, prec)
        else:
            if args.a == "chi-root":
                raise UsageError("chi-root is only available for --system cycle")
            report = solve_truncated(args.system, lengths, _parse_number(args.a), args.K, prec)
    except RealizerError as exc:
        raise UsageError(str(exc)) from None
    _emit(out, report.to_json())
    return EXIT_OK if report.solved else EXIT_FINDING


def _parse_number(text: str):
    import mpmath

    try:
        return mpmath.mpmathify(text.replace("i", "j"))
    except (ValueError, TypeError):
        raise UsageError(f"cannot parse number {text!r}") from None


def cmd_reproduce(args, out):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    ok = True
    for name in names:
        r = run_suite(name)
        rec = r.to_json()
        rec["failures"] = [str(x) for x in rec["failures"]]
        _emit(out, rec)
        ok &= r.passed
    return EXIT_OK if ok else EXIT_FINDING


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weylspectrum", description=__doc__.splitlines()[0])
    p.add_argument("--eps", help="root enclosure width, a fraction like 1/10^12 or 1e-12")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="catalog M_d as NDJSON")
    e.add_argument("--degree", type=int, required=True)
    e.add_argument("--full-orbits", action="store_true", help="attach column-permutation orbits")
    e.add_argument("--truncations", action="store_true", help="also emit principal sub-matrices")
    e.add_argument("--max-matrices", type=int, default=None,
                   help="hard cap per catalog (env WEYLSPECTRUM_MAX_MATRICES)")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("charpoly", help="characteristic polynomial of orbit data")
    c.add_argument("data", help='inline JSON {"M": [[...]], "n": [...]} or a file path')
    c.set_defaults(func=cmd_charpoly)

    k = sub.add_parser("classify", help="classify the largest root of a polynomial")
    k.add_argument("poly", help='e.g. "t^3 - t - 1"')
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("scan", help="scan catalogs over orbit lengths")
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--mode", choices=["salem", "pisot", "limits"], default="salem")
    s.add_argument("--max-length", type=int, required=True, help="bound on the total length")
    s.add_argument("--format", choices=["ndjson", "csv"], default="ndjson")
    s.add_argument("--max-entries", type=int, default=None)
    s.add_argument("--witness", type=int, default=6, help="witness terms in limits mode")
    s.set_defaults(func=cmd_scan)

    li = sub.add_parser("limits", help="Pisot limits of increasing Salem sequences")
    li.add_argument("--degree", type=int, required=True)
    li.add_argument("--bound", type=int, default=4)
    li.add_argument("--witness", type=int, default=6)
    li.set_defaults(func=cmd_limits)

    mo = sub.add_parser("monotone", help="certify radius(n) < radius(n')")
    mo.add_argument("--matrix", required=True, help="JSON matrix or file path")
    mo.add_argument("--from", dest="from_", required=True)
    mo.add_argument("--to", required=True)
    mo.add_argument("--truncated", action="store_true")
    mo.set_defaults(func=cmd_monotone)

    ca = sub.add_parser("catalog", help="the small Pisot numbers P_m")
    ca.add_argument("which", choices=["pisot"])
    ca.add_argument("--upto", type=int, default=9)
    ca.set_defaults(func=cmd_catalog)

    r = sub.add_parser("realize", help="solve a cubic-curve parameter system")
    r.add_argument("--system", choices=["f3", "f2", "f", "cycle"], required=True)
    r.add_argument("--lengths", required=True, help="e.g. 1,1")
    r.add_argument("--a", default="2", help="number, or chi-root for the cycle system")
    r.add_argument("--K", type=int, default=DEFAULT_K)
    r.add_argument("--prec", type=int, default=None, help="binary precision (env WEYLSPECTRUM_PREC)")
    r.set_defaults(func=cmd_realize)

    rp = sub.add_parser("reproduce", help="run a named acceptance suite")
    rp.add_argument("suite", help=f"one of {', '.join(SUITES)}, or all")
    rp.set_defaults(func=cmd_reproduce)
    return p


def _parse_eps(text):
    text = text.strip()
    if "^" in text:
        num, _, den = text.partition("/")
        base, _, exp = den.partition("^")
        return Fraction(int(num), int(base) ** int(exp))
    return Fraction(text)


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.eps:
            args.eps = _parse_eps(args.eps)
            if not Fraction(1, 2**200) <= args.eps < 1:
                raise UsageError("--eps must lie in [2^-200, 1)")
        if getattr(args, "max_matrices", None) is None and args.command == "enumerate":
            args.max_matrices = _env_int("WEYLSPECTRUM_MAX_MATRICES", None)
        if args.jobs < 1:
            raise UsageError("--jobs must be >= 1")
        return args.func(args, out)
    except (UsageError, InputError, OrbitDataError, LatticeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FINDING
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error here
        sys.stderr.close()
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
