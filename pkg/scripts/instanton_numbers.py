"""Instanton numbers from both Lambert routes, plus the Yukawa normalization constant."""
import argparse
from dataclasses import dataclass

from mirrorquintic.frobenius import frobenius_components, mirror_map
from mirrorquintic.ramanujan import expand
from mirrorquintic.yukawa import (
    extract_instantons, lambert_from_cubic, lambert_from_periods, reconcile_normalization, yukawa_bracket,
)


@dataclass(frozen=True)
class InstantonRun:
    max_degree: int = 10
    order: int = 30


def run(cfg: InstantonRun) -> None:
    N = max(cfg.order, cfg.max_degree)
    basis = frobenius_components(N)
    mm = mirror_map(N, basis)
    lam = lambert_from_periods(N, basis, mm)
    same = lam == lambert_from_cubic(N, basis, mm)
    for d, n in enumerate(extract_instantons(lam, cfg.max_degree), 1):
        print(f"n_{d} = {n}")
    kappa, checks = reconcile_normalization(yukawa_bracket(expand(N)), lam)
    print(f"psi_2 / psi_3 routes agree: {same}")
    print(f"kappa = {kappa}  [{checks[0].detail}]")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-degree", type=int, default=10)
    ap.add_argument("--order", type=int, default=30)
    args = ap.parse_args()
    run(InstantonRun(args.max_degree, args.order))
