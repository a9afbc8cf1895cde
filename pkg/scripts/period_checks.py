"""Numeric period checks over a range of precisions and sample points.

Prints the worst quadratic-relation residual and the worst cocycle residual
for each (z, prec) pair, next to the tolerance 2^(-prec/2).
"""
import argparse
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from mirrorquintic import cocycle
from mirrorquintic.periods import assemble_period_matrix, quadratic_relations_residual, residual_tolerance


@dataclass
class PeriodSweep:
    points: list = field(default_factory=lambda: [Fraction(1, 10), Fraction(1, 3), Fraction(1, 100)])
    precisions: list = field(default_factory=lambda: [128, 256, 512])


def run(cfg: PeriodSweep) -> bool:
    ok = True
    print(f"{'z':>8} {'bits':>5} {'terms':>6} {'quadratic':>12} {'cocycle':>12} {'tol':>12}")
    for z in cfg.points:
        for prec in cfg.precisions:
            P = assemble_period_matrix(z, prec)
            res = quadratic_relations_residual(P)
            quad = max(abs(v) for k, v in res.items() if k != "det")
            quad = max(quad, abs(res["det"] + 1))
            checks = cocycle.special_form_check(P) + cocycle.m1_cocycle_check(P) + cocycle.m0_cocycle_check(P)
            coc = max(mpmath.mpf(c.residual) for c in checks)
            tol = residual_tolerance(prec)
            ok &= quad < tol and all(c.passed for c in checks)
            print(f"{str(z):>8} {prec:>5} {P.n_terms:>6} {mpmath.nstr(quad, 3):>12} "
                  f"{mpmath.nstr(coc, 3):>12} {mpmath.nstr(tol, 3):>12}")
    return ok


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=Fraction, action="append")
    ap.add_argument("--prec", type=int, action="append")
    args = ap.parse_args()
    cfg = PeriodSweep()
    if args.z:
        cfg.points = args.z
    if args.prec:
        cfg.precisions = args.prec
    raise SystemExit(0 if run(cfg) else 1)
