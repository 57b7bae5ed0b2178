"""Command-line front end.

Exit codes: 0 success, 2 inconclusive certificate verdict, 3 table or
certificate mismatch, 64 bad input.  Output ordering is deterministic
(solution sets and tables sort lexicographically) so runs are diffable.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__, diophantine as dio
from .arith import ArithError, primes_below
from .certifier import (CertifyError, Constraint, certify_value,
                        reproduce_theorem, verify_certificate, witness_search)
from .elliptic import CurveError, CurveQ, a_E, a_lambda, integral_model
from .lucas import LucasError, defect_scan, make_pair, terms
from .newform import SeriesError, eta_product_series, parse_eta_spec

EXIT_OK = 0
EXIT_INCONCLUSIVE = 2
EXIT_MISMATCH = 3
EXIT_USAGE = 64


def _emit_rows(rows, header, fmt, out):
    if fmt == "json":
        out.write(json.dumps([dict(zip(header, r)) for r in rows], indent=1) + "\n")
    elif fmt == "csv":
        out.write(",".join(header) + "\n")
        for r in rows:
            out.write(",".join(str(v) for v in r) + "\n")
    else:
        widths = [max(len(h), *(len(str(r[i])) for r in rows)) if rows else len(h)
                  for i, h in enumerate(header)]
        out.write("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip() + "\n")
        for r in rows:
            out.write("  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() + "\n")


def _cmd_lucas(args, out):
    pair = make_pair(args.A, args.B)
    us = terms(pair, args.n)
    _emit_rows(list(enumerate(us, start=1)), ["n", "u_n"], args.format, out)
    records = defect_scan(pair, min(args.n, 30))
    flagged = [(r.index, r.value, r.classification, r.row) for r in records if r.classification != "none"]
    if flagged:
        out.write("# defective indices\n")
        _emit_rows(flagged, ["n", "u_n", "class", "row"], args.format, out)
    else:
        out.write("# no defective indices up to 30\n")
    return EXIT_OK


def _cmd_eta(args, out):
    product = parse_eta_spec(args.spec)
    series = eta_product_series(product, args.n_terms)
    rows = [(n, series.a(n)) for n in range(1, args.n_terms + 1)]
    _emit_rows(rows, ["n", "a_n"], args.format, out)
    return EXIT_OK


def _parse_lambda(text: str) -> Fraction:
    return Fraction(text)


def _cmd_ec(args, out):
    ps = [p for p in primes_below(args.pmax + 1) if p > 2]
    if args.curve[0].startswith("lambda="):
        lam = _parse_lambda(args.curve[0].split("=", 1)[1])
        lc = integral_model(lam)
        rows = []
        for p in ps:
            if p in lc.bad_primes:
                continue
            rows.append((p, a_E(lc.curve, p), a_lambda(lam, p)))
        _emit_rows(rows, ["p", "a_E", "a_lambda"], args.format, out)
    else:
        if len(args.curve) != 3:
            raise CurveError("expected lambda=<rational> or three integers a2 a4 a6")
        a2, a4, a6 = (int(t) for t in args.curve)
        curve = CurveQ(a2, a4, a6)
        rows = [(p, a_E(curve, p)) for p in ps if curve.cubic_disc() % p != 0]
        _emit_rows(rows, ["p", "a_E"], args.format, out)
    return EXIT_OK


def _cmd_solve(args, out):
    kind = args.what[0]
    if kind == "f":
        two_m, target = int(args.what[1]), int(args.what[2])
        sols = dio.solve_f(two_m, target, args.radius or dio.DEFAULT_F_RADIUS)
    elif kind == "c2":
        sols = dio.solve_c2(1 if args.what[1] == "+" else -1, int(args.what[2]))
    elif kind == "c4":
        sols = dio.solve_c4(1 if args.what[1] == "+" else -1, int(args.what[2]),
                            args.radius or dio.DEFAULT_C4_RADIUS)
    elif kind == "w2q":
        sols = dio.solve_w2_quartic(int(args.what[1]), args.radius or dio.DEFAULT_W2Q_RADIUS)
    else:
        raise dio.SolveError(f"unknown equation family {kind!r}")
    out.write(f"# {sols.equation}  [{sols.completeness}]\n")
    _emit_rows([list(p) for p in sols.pairs], ["x", "y"], args.format, out)
    return EXIT_OK


def _cmd_certify(args, out):
    if args.weight == 2:
        cx = Constraint(2, torsion=args.torsion, grh=args.grh)
    else:
        lam = None if args.lam in (None, "all") else _parse_lambda(args.lam)
        cx = Constraint(3, lam=lam, grh=args.grh)
    cert = certify_value(args.alpha, cx)
    doc = cert.to_json()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(doc + "\n")
    if args.format == "json":
        out.write(doc + "\n")
    else:
        verdict = cert.verdict
        detail = ""
        if verdict["status"] == "witness":
            detail = f" at n = {verdict['n']}"
        elif verdict["status"] == "inconclusive":
            detail = ": " + "; ".join(verdict.get("reasons", []))
        out.write(f"{args.alpha}: {verdict['status']}{detail}\n")
    return EXIT_OK if cert.verdict["status"] != "inconclusive" else EXIT_INCONCLUSIVE


def _cmd_witness(args, out):
    hits = witness_search(args.alpha, _parse_lambda(args.lam), args.n_terms)
    _emit_rows([(n,) for n in hits], ["n"], args.format, out)
    return EXIT_OK


def _cmd_tables(args, out):
    if args.action != "verify":
        raise dio.SolveError("supported action: verify")
    mismatches = dio.verify_tables()
    if mismatches:
        for m in mismatches:
            out.write(f"MISMATCH: {m}\n")
        return EXIT_MISMATCH
    out.write("all embedded solution tables recompute exactly\n")
    return EXIT_OK


def _cmd_reproduce(args, out):
    report = reproduce_theorem(args.case, grh=args.grh)
    if args.format == "json":
        out.write(json.dumps(report, indent=1) + "\n")
    else:
        for v in report["values"]:
            note = ""
            if "documented_divergence" in v:
                note = f"  [documented divergence: {v['documented_divergence']}]"
            out.write(f"{v['alpha']:>5}: {v['verdict']}"
                      f"{' (reproduced)' if v['reproduced'] else ' (NOT reproduced)'}{note}\n")
        for w in report["witnesses"]:
            note = f"  [published value diverges: {w['divergence']}]" if "divergence" in w else ""
            out.write(f"witness {w['value']} at n={w['n']}: "
                      f"{'confirmed' if w['confirmed'] else 'MISSING'} (positions {w['positions']}){note}\n")
        out.write(f"case {report['case']} grh={report['grh']}: {'ok' if report['ok'] else 'FAILED'}\n")
    return EXIT_OK if report["ok"] else EXIT_MISMATCH


def _cmd_verify_certificate(args, out):
    with open(args.path, encoding="utf-8") as fh:
        doc = json.load(fh)
    ok, msg = verify_certificate(doc)
    out.write(msg + "\n")
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="nfcert", description=__doc__)
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def add_fmt(p):
        p.add_argument("--format", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("lucas", help="sequence terms and defect scan for a pair")
    p.add_argument("A", type=int)
    p.add_argument("B", type=int)
    p.add_argument("n", type=int)
    add_fmt(p)
    p.set_defaults(run=_cmd_lucas)

    p = sub.add_parser("eta", help="eta-product q-expansion")
    p.add_argument("spec", help='e.g. "eta(4)^6" or "eta(1)^2*eta(2)*eta(4)*eta(8)^2 % -4"')
    p.add_argument("n_terms", type=int)
    add_fmt(p)
    p.set_defaults(run=_cmd_eta)

    p = sub.add_parser("ec", help="trace table for a curve or the lambda family")
    p.add_argument("curve", nargs="+", help="lambda=<rational> | a2 a4 a6")
    p.add_argument("pmax", type=int)
    add_fmt(p)
    p.set_defaults(run=_cmd_ec)

    p = sub.add_parser("solve", help="equation solvers: f 2m D | c2 +|- ell | c4 +|- ell | w2q ell")
    p.add_argument("what", nargs="+")
    p.add_argument("--radius", type=int)
    add_fmt(p)
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("certify", help="certify an odd target value")
    p.add_argument("alpha", type=int)
    p.add_argument("--weight", type=int, choices=(2, 3), required=True)
    p.add_argument("--torsion", type=int, choices=(3, 5))
    p.add_argument("--lambda", dest="lam", help="a singular rational or 'all'")
    p.add_argument("--grh", action="store_true")
    p.add_argument("--output", help="write the certificate JSON to a file")
    add_fmt(p)
    p.set_defaults(run=_cmd_certify)

    p = sub.add_parser("witness", help="scan an expansion for a value")
    p.add_argument("alpha", type=int)
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--n-terms", type=int, default=1400)
    add_fmt(p)
    p.set_defaults(run=_cmd_witness)

    p = sub.add_parser("tables", help="recompute the embedded solution tables")
    p.add_argument("action", choices=("verify",))
    add_fmt(p)
    p.set_defaults(run=_cmd_tables)

    p = sub.add_parser("reproduce", help="rerun a claimed exclusion list")
    p.add_argument("case", help="1.1-1 | 1.1-2 | 1.2-l1 | 1.2-l8 | 1.2-l-4 | 1.2-l-64 | 1.3")
    p.add_argument("--grh", action="store_true")
    add_fmt(p)
    p.set_defaults(run=_cmd_reproduce)

    p = sub.add_parser("verify-certificate", help="replay a stored certificate")
    p.add_argument("path")
    add_fmt(p)
    p.set_defaults(run=_cmd_verify_certificate)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.run(args, sys.stdout)
    except (ArithError, LucasError, SeriesError, CurveError, dio.SolveError,
            CertifyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except dio.TableMismatchError as exc:
        print(f"table mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
