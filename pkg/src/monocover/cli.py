"""Command-line front end.

Exit status: 0 when every verification flag is true, 1 on a mathematical
failure, 2 on a usage error, 3 when a search stopped at its budget with an
interval instead of a value.
"""
from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from . import report
from .certificate import CHECK_NAMES, certify_a5wrc2
from .covers import (DEFAULT_BUDGET, SMALL_GROUPS, build_target, build_theorem_cover, certify_odd_n5,
                     check_unbeatable, covers_check, sigma_small_group, unbeatable_family_n5)
from .inequalities import (FAILS, HOLDS, INEQUALITIES, SPOT_CHECKS, ParameterError, UnsupportedCaseError,
                           compare_exact, sigma_formula, sweep)
from .monolith import Case, GroupSpec, enumerate_group
from .subgroups import enumerate_maximals_G, expand

OK, MATH_FAIL, USAGE, INTERVAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


def progress(msg: str) -> None:
    print(f"[{time.strftime('%H:%M:%S')}] {msg}", file=sys.stderr, flush=True)


def parse_range(text: str) -> list[int]:
    """'12', '8..64' or '5,7,9'."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"bad range {text!r}; use N, A..B or a comma list") from None


def _spec(args) -> GroupSpec:
    if args.n is None or args.m is None:
        raise UsageError("--n and --m are required")
    try:
        return GroupSpec(args.n, args.m, Case.parse(args.case))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _flags(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k != "func"}


def _emit(args, command: str, result, text: str) -> None:
    if args.format == "json":
        report.write(report.dumps(report.envelope(command, _flags(args), result)), args.output)
    else:
        report.write(text, args.output)


# -- verbs ----------------------------------------------------------------------------------

def cmd_sigma(args) -> int:
    if args.mode == "formula":
        try:
            val = sigma_formula(args.n, args.m, args.case)
        except UnsupportedCaseError as exc:
            raise UsageError(str(exc)) from None
        _emit(args, "sigma formula", val.to_dict(), f"{val}\n")
        return OK
    if args.mode == "exact":
        if not args.group:
            raise UsageError(f"--group is required; one of {sorted(SMALL_GROUPS)}")
        res = sigma_small_group(args.group, args.budget)
        text = f"{res.lo}\n" if res.status == "exact" else f"interval [{res.lo}, {res.hi}]\n"
        _emit(args, "sigma exact", {"group": args.group, "status": res.status, "lo": res.lo, "hi": res.hi,
                                    "nodes": res.nodes}, text)
        return OK if res.status == "exact" else INTERVAL
    # certify
    spec = _spec(args)
    if spec.case is Case.EVEN:
        if (spec.n, spec.m) != (5, 2):
            raise UsageError("even-case certificates exist only at n=5, m=2")
        cert = certify_a5wrc2(progress=progress)
        _emit(args, "sigma certify", cert.to_dict(), cert.summary_line() + "\n")
        return OK if cert.status == "certified" else MATH_FAIL
    if spec.n != 5 or not spec.enumerable():
        raise UsageError("odd-case certificates are implemented for n=5 at enumerable m")
    progress(f"certifying {spec}")
    cert = certify_odd_n5(spec, args.budget)
    lo, hi = cert.interval
    if cert.exact:
        text = f"sigma = {lo} (certified)\n"
    else:
        text = f"sigma in [{lo}, {hi}]\n"
    _emit(args, "sigma certify", cert.to_dict(), text)
    if not cert.upper_verified:
        return MATH_FAIL
    return OK if cert.exact else INTERVAL


def cmd_cover(args) -> int:
    spec = _spec(args)
    cover = build_theorem_cover(spec, verify=True)
    result = {"spec": str(spec), "size": len(cover), "verified": cover.verified, "method": cover.method,
              "descriptors": [D.text() for D in cover.descriptors], "detail": cover.detail}
    targets = args.target or []
    if targets and spec.enumerable():
        G = enumerate_group(spec)
        bits = [expand(G, D) for D in cover.descriptors]
        result["targets"] = {}
        for name in targets:
            t = build_target(spec, name)
            ok, wit = covers_check(bits, t.bits)
            result["targets"][name] = {"size": t.count, "covered": ok,
                                       "witness": None if wit is None else str(G.element(wit))}
            if not ok:
                cover.verified = False
    elif targets:
        raise UsageError("target checks need an enumerable spec")
    text = f"cover of size {len(cover)} ({cover.method}): {'verified' if cover.verified else 'NOT covering'}\n"
    if cover.witness is not None:
        text += f"uncovered: {enumerate_group(spec).element(cover.witness)}\n"
    for name, row in result.get("targets", {}).items():
        text += f"  {name}: {row['size']} elements, {'covered' if row['covered'] else 'not covered'}\n"
    _emit(args, "cover", result, text)
    return OK if cover.verified else MATH_FAIL


def cmd_unbeatable(args) -> int:
    spec = _spec(args)
    if not spec.enumerable():
        raise UsageError("unbeatability checks need an enumerable spec")
    G = enumerate_group(spec)
    maxes = enumerate_maximals_G(spec)
    fam, _ = unbeatable_family_n5(spec)
    target = build_target(spec, args.target or "Omega")
    rep = check_unbeatable([expand(G, D) for D in fam], target.bits, maxes.bits, complete=maxes.complete)
    text = f"family of {rep.family_size} on {target.name} ({target.count} elements)\n"
    for k, v in rep.conditions.items():
        text += f"  {k}: {'pass' if v else 'FAIL'}\n"
    text += f"  min inside {rep.min_inside}, max outside {rep.max_outside}\n"
    _emit(args, "unbeatable", rep.to_dict(), text)
    return OK if rep.passed else MATH_FAIL


def cmd_lemma(args) -> int:
    if args.action == "spot":
        rows = [(lhs, rhs, compare_exact(lhs, rhs)) for lhs, rhs in SPOT_CHECKS]
        text = report.text_table(["lhs", "rhs", ">="], rows)
        _emit(args, "lemma spot", [{"lhs": a, "rhs": b, "status": s} for a, b, s in rows], text)
        return OK if all(s == HOLDS for *_, s in rows) else MATH_FAIL
    if not args.name or args.name not in INEQUALITIES:
        raise UsageError(f"--name must be one of {sorted(INEQUALITIES)}")
    if not args.n:
        raise UsageError("--n is required (N, A..B or a comma list)")
    extra = {"case": args.case_kind}
    if args.a is not None:
        extra["a"] = args.a
    if args.b is not None:
        extra["b"] = args.b
    if args.variant:
        extra["variant"] = args.variant
    try:
        results = list(sweep(args.name, parse_range(args.n), **extra))
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    payload = [r.to_dict() for r in results]
    if args.emit == "json":
        report.write(report.dumps(report.envelope("lemma check", _flags(args), payload)), args.output)
    else:
        rows = [[" ".join(f"{k}={v}" for k, v in r.params.items()), r.hypothesis or "-", r.conclusion]
                for r in results]
        report.write(report.text_table(["params", "hypothesis", "conclusion"], rows), args.output)
    statuses = {r.conclusion for r in results}
    if FAILS in statuses:
        return MATH_FAIL
    return OK if statuses <= {HOLDS} else INTERVAL


def cmd_certificate(args) -> int:
    if args.which != "a5wrc2":
        raise UsageError("the only certificate is a5wrc2")
    skip = tuple(args.skip or ())
    bad = set(skip) - set(CHECK_NAMES)
    if bad:
        raise UsageError(f"unknown checks {sorted(bad)}; choose from {list(CHECK_NAMES)}")
    cert = certify_a5wrc2(skip, progress=progress)
    if args.emit:
        report.write(cert.to_json() + "\n", args.emit)
    lines = [f"{c.name}: {c.status}" for c in cert.checks]
    lines.append(f"survivors: {[list(s) for s in cert.log.survivors]}")
    lines.append(cert.summary_line())
    print("\n".join(lines))
    return OK if cert.status == "certified" else MATH_FAIL


def cmd_census(args) -> int:
    spec = _spec(args)
    if not spec.enumerable() or spec.m > 2:
        raise UsageError("census needs an enumerable spec with m <= 2")
    progress(f"enumerating maximal subgroups of {spec}")
    headers, rows = report.census_rows(spec)
    fam = enumerate_maximals_G(spec)
    result = {"spec": str(spec), "complete": fam.complete, "total": len(fam),
              "rows": [dict(zip(headers, r)) for r in rows]}
    text = report.text_table(headers, rows) + f"total {len(fam)}" + ("" if fam.complete else " (completeness not certified)") + "\n"
    _emit(args, "census", result, text)
    return OK


# -- parser -------------------------------------------------------------------------------------

def _add_spec(p, required: bool = False) -> None:
    p.add_argument("--n", type=int, required=required)
    p.add_argument("--m", type=int, required=required)
    p.add_argument("--case", default="odd", choices=["odd", "even"])


def _add_output(p) -> None:
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--output", "-o", default=None, help="write to this path instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monocover", description="Covering numbers of monolithic groups.")
    parser.add_argument("--version", action="version", version=f"monocover {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("sigma", help="closed forms, exact small-group values, certificates")
    p.add_argument("mode", choices=["formula", "exact", "certify"])
    _add_spec(p)
    p.add_argument("--group", choices=sorted(SMALL_GROUPS))
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    _add_output(p)
    p.set_defaults(func=cmd_sigma)

    p = sub.add_parser("cover", help="build and verify the explicit cover")
    _add_spec(p, required=True)
    p.add_argument("--target", action="append", help="also check a target set (Pi, Omega, Omega_2, ...)")
    _add_output(p)
    p.set_defaults(func=cmd_cover)

    p = sub.add_parser("unbeatable", help="definite unbeatability of the n=5 family")
    _add_spec(p, required=True)
    p.add_argument("--target", default=None)
    _add_output(p)
    p.set_defaults(func=cmd_unbeatable)

    p = sub.add_parser("lemma", help="inequality checks")
    p.add_argument("action", choices=["check", "spot"])
    p.add_argument("--name")
    p.add_argument("--n")
    p.add_argument("--a", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--case", dest="case_kind", default="odd", choices=["odd", "even"])
    p.add_argument("--variant", choices=["literal", "bounded"])
    p.add_argument("--emit", default="text", choices=["text", "json"])
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_lemma)

    p = sub.add_parser("certificate", help="replay the lower-bound argument")
    p.add_argument("which", choices=["a5wrc2"])
    p.add_argument("--emit", default=None, help="write the JSON report here")
    p.add_argument("--skip", action="append", choices=list(CHECK_NAMES))
    p.set_defaults(func=cmd_certificate)

    p = sub.add_parser("census", help="maximal subgroups by type")
    _add_spec(p, required=True)
    _add_output(p)
    p.set_defaults(func=cmd_census)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"monocover: error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
