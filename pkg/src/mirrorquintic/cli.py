"""Command line front end.

Exit codes: 0 success, 1 verification or integrality failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from fractions import Fraction
from importlib.metadata import PackageNotFoundError, version

from .cache import cached_expand
from .frobenius import Z_SCALE, mirror_map
from .group import GroupElementG, action_on_t, derived_t
from .periods import PrecisionError, assemble_period_matrix, quadratic_relations_residual
from .reference import ROW_LABELS
from .verify import SUITES, VerifyConfig, run_suites
from .yukawa import IntegralityError, extract_instantons, lambert_from_periods, reconcile_normalization, yukawa_bracket

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _fraction(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {s!r}")


def _fraction_list(n: int):
    def parse(s: str) -> tuple[Fraction, ...]:
        parts = [p for p in s.replace(" ", "").split(",") if p]
        if len(parts) != n:
            raise argparse.ArgumentTypeError(f"expected {n} comma-separated rationals, got {len(parts)}")
        return tuple(_fraction(p) for p in parts)
    return parse


def _meta() -> dict:
    try:
        v = version("artifact")
    except PackageNotFoundError:
        v = "unknown"
    return {"generated": datetime.now(timezone.utc).isoformat(timespec="seconds"), "version": v}


def _emit(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(args, doc: dict) -> None:
    if not getattr(args, "no_meta", False):
        doc = {**doc, "meta": _meta()}
    _emit(args, json.dumps(doc, indent=2) + "\n")


def _sample_point(parser, args) -> Fraction:
    z = args.ztilde * Z_SCALE if args.ztilde is not None else args.z
    if not 0 < z < 1:
        parser.error(f"sample point z = {z} must satisfy 0 < z < 1 (z~ = z/3125)")
    return z


# -- commands -----------------------------------------------------------------------

def cmd_expand(parser, args) -> int:
    if args.order < 1:
        parser.error("--order must be at least 1")
    sv = cached_expand(args.order, args.cache_dir).with_derived()
    rows = sv.rows(table_scaled=args.scaled_like_paper)
    labels = ROW_LABELS if args.scaled_like_paper else tuple(f"h{i}" for i in range(10))
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["row"] + [f"q^{n}" for n in range(args.order + 1)])
        for label, row in zip(labels, rows):
            w.writerow([label] + [str(c) for c in row])
        _emit(args, buf.getvalue())
    else:
        series = {
            label: {"var": "q", "order": args.order, "coeffs": [str(c) for c in row]}
            for label, row in zip(labels, rows)
        }
        _dump(args, {"order": args.order, "table_scaled": args.scaled_like_paper, "series": series})
    return EXIT_OK


def cmd_instantons(parser, args) -> int:
    D = args.max_degree
    if D < 1:
        parser.error("--max-degree must be at least 1")
    N = max(D, 2)
    lam = lambert_from_periods(N)
    try:
        ns = extract_instantons(lam, D)
    except IntegralityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    kappa, checks = reconcile_normalization(yukawa_bracket(cached_expand(N, args.cache_dir)), lam)
    if args.format == "csv":
        _emit(args, "d,n_d\n" + "".join(f"{d},{n}\n" for d, n in enumerate(ns, start=1)))
    else:
        _dump(args, {"n": {str(d): str(n) for d, n in enumerate(ns, start=1)}, "kappa": str(kappa),
                     "kappa_constant": checks[0].passed})
    return EXIT_OK if checks[0].passed else EXIT_FAIL


def cmd_mirror_map(parser, args) -> int:
    if args.order < 2:
        parser.error("--order must be at least 2")
    mm = mirror_map(args.order)
    _dump(args, {"q_of_ztilde": mm.q_of_z.to_dict(), "ztilde_of_q": mm.z_of_q.to_dict()})
    return EXIT_OK


def cmd_periods(parser, args) -> int:
    if args.prec < 64:
        parser.error("--prec must be at least 64")
    z = _sample_point(parser, args)
    try:
        P = assemble_period_matrix(z, args.prec)
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    import mpmath

    doc = P.to_dict()
    res = quadratic_relations_residual(P)
    doc["residuals"] = {k: mpmath.nstr(abs(v + (1 if k == "det" else 0)), 5) for k, v in res.items()}
    doc["residuals"]["det+1"] = doc["residuals"].pop("det")
    _dump(args, doc)
    return EXIT_OK


def cmd_verify(parser, args) -> int:
    z = _sample_point(parser, args)
    names = args.suite or ["all"]
    try:
        cfg = VerifyConfig(order=args.order, prec=args.prec, z=z, cache_dir=args.cache_dir)
    except ValueError as exc:
        parser.error(str(exc))
    reports = run_suites(names, cfg)
    ok = all(r.passed for r in reports)
    config = {"order": cfg.order, "prec_bits": cfg.prec, "z": str(cfg.z), "ztilde": str(cfg.ztilde)}
    if len(reports) == 1:
        doc = {**reports[0].to_dict(), "config": config}
    else:
        doc = {"status": "pass" if ok else "fail", "config": config, "suites": [r.to_dict() for r in reports]}
    _dump(args, doc)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_group(parser, args) -> int:
    def out(g: GroupElementG):
        return [str(x) for x in g.g]

    try:
        if args.op == "inv":
            doc = {"inverse": out(GroupElementG(args.g).inv())}
        elif args.op == "mul":
            doc = {"product": out(GroupElementG(args.g) * GroupElementG(args.h))}
        elif args.op == "matrix":
            doc = {"matrix": [[str(Fraction(x)) for x in row] for row in GroupElementG(args.g).matrix()]}
        else:
            g = GroupElementG(args.g)
            moved = action_on_t(args.t, g)
            doc = {"t": [str(x) for x in moved]}
            try:
                doc["t7_t10"] = [str(x) for x in derived_t(moved)]
            except ZeroDivisionError:
                pass
    except ZeroDivisionError:
        parser.error("g1 and g2 must be nonzero (and t5 != 0, t4 != t0^5 for act)")
    _dump(args, doc)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mirrorquintic", description=(
        "Exact q-expansions, instanton numbers and period checks for the mirror quintic."))
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, fmt=("json",)):
        sp.add_argument("--format", choices=fmt, default=fmt[0])
        sp.add_argument("--output", "-o", help="write to this file instead of stdout")
        sp.add_argument("--no-meta", action="store_true", help="omit timestamp/version metadata")
        sp.add_argument("--cache-dir", help="series cache directory (default: $MIRRORQUINTIC_CACHE)")

    def point(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--z", type=_fraction, default=Fraction(1, 10),
                       help="sample point in the Picard-Fuchs coordinate z (default 1/10)")
        g.add_argument("--ztilde", type=_fraction, help="sample point as z~ = z/3125")
        sp.add_argument("--prec", type=int, default=256, help="working precision in bits")

    sp = sub.add_parser("expand", help="q-expansions of h0..h9")
    sp.add_argument("--order", type=int, default=30)
    sp.add_argument("--scaled-like-paper", action="store_true", help="apply the reference-table row scalings")
    common(sp, ("json", "csv"))
    sp.set_defaults(func=cmd_expand)

    sp = sub.add_parser("instantons", help="instanton numbers n_1..n_D and kappa")
    sp.add_argument("--max-degree", type=int, default=10)
    common(sp, ("json", "csv"))
    sp.set_defaults(func=cmd_instantons)

    sp = sub.add_parser("mirror-map", help="q(z~) and its inverse")
    sp.add_argument("--order", type=int, default=30)
    common(sp)
    sp.set_defaults(func=cmd_mirror_map)

    sp = sub.add_parser("periods", help="numeric period matrix at a point")
    point(sp)
    common(sp)
    sp.set_defaults(func=cmd_periods)

    sp = sub.add_parser("verify", help="run verification suites")
    sp.add_argument("--suite", action="append", choices=list(SUITES) + ["all"],
                    help="suite to run (repeatable; default all)")
    sp.add_argument("--order", type=int, default=30)
    point(sp)
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("group", help="arithmetic in the group G")
    gsub = sp.add_subparsers(dest="op", required=True)
    for op, extra in (("inv", ()), ("mul", ("h",)), ("matrix", ()), ("act", ("t",))):
        gp = gsub.add_parser(op)
        gp.add_argument("g", type=_fraction_list(6), help="g1,...,g6")
        if "h" in extra:
            gp.add_argument("h", type=_fraction_list(6), help="h1,...,h6")
        if "t" in extra:
            gp.add_argument("--t", type=_fraction_list(7), required=True, help="t0,...,t6")
        common(gp)
        gp.set_defaults(func=cmd_group)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(parser, args)


if __name__ == "__main__":
    sys.exit(main())
