"""Verification suites.  Each suite returns a SuiteReport of pass/fail checks."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp

from . import cocycle
from .frobenius import (
    Z_SCALE, frobenius_components, picard_fuchs_apply, psi0_closed_form, psi1_tilde_closed_form,
    period_route_h,
)
from .group import check_monodromy_identities, group_law_checks, reduce_to_special_form
from .periods import GUARD_BITS, assemble_period_matrix, quadratic_relations_residual, residual_tolerance
from .ramanujan import (
    initial_data_checks, verify_alt_system, verify_modulispace_relations, verify_polynomial_system,
)
from .cache import cached_expand
from .reference import TABLE_ORDER, compare_table
from .report import Check, SuiteReport
from .yukawa import (
    cubic_identity_check, extract_instantons, lambert_from_cubic, lambert_from_periods,
    reconcile_normalization, yukawa_bracket,
)

KNOWN_INSTANTONS = {1: 2875, 2: 609250}


@dataclass(frozen=True)
class VerifyConfig:
    order: int = 30
    prec: int = 256
    z: Fraction = Fraction(1, 10)  # Picard-Fuchs coordinate; z~ = z / 5^5
    cache_dir: str | None = None
    group_samples: int = 100
    seed: int = 0
    max_degree: int = 10

    def __post_init__(self):
        object.__setattr__(self, "z", Fraction(self.z))
        if self.order < 2:
            raise ValueError("order must be at least 2")
        if self.prec < 64:
            raise ValueError("precision must be at least 64 bits")
        if not 0 < self.z < 1:
            raise ValueError("sample point must satisfy 0 < z < 1")

    @property
    def ztilde(self) -> Fraction:
        return self.z / Z_SCALE


@lru_cache(maxsize=4)
def _periods(z: Fraction, prec: int):
    return assemble_period_matrix(z, prec)


def _first_mismatch(a, b, N):
    return next((n for n in range(N + 1) if a[n] != b[n]), None)


def suite_table(cfg: VerifyConfig) -> list[Check]:
    sv = cached_expand(TABLE_ORDER, cfg.cache_dir).with_derived()
    return initial_data_checks() + compare_table(sv.rows(table_scaled=True))


def suite_dual_route(cfg: VerifyConfig) -> list[Check]:
    N = cfg.order
    ode = cached_expand(N, cfg.cache_dir)
    per = period_route_h(N)
    out = []
    for i in range(7):
        bad = _first_mismatch(ode.h[i], per.h[i], N)
        out.append(Check.exact(f"h{i}: recursion = periods", bad is None,
                               f"orders 0..{N}" if bad is None else f"differs at q^{bad}"))
    return out + verify_polynomial_system(ode)


def suite_alt_system(cfg: VerifyConfig) -> list[Check]:
    return verify_alt_system(cached_expand(cfg.order, cfg.cache_dir))


def suite_moduli(cfg: VerifyConfig) -> list[Check]:
    return verify_modulispace_relations(cached_expand(cfg.order, cfg.cache_dir))


def picard_fuchs_checks(N: int) -> list[Check]:
    basis = frobenius_components(N)
    out = []
    for j in range(4):
        r = picard_fuchs_apply(basis.psi(j))
        bad = next(((k, n) for k, p in enumerate(r.parts) for n in range(N) if p[n] != 0), None)
        out.append(Check.exact(f"PF psi_{j} = 0", bad is None,
                               f"orders 0..{N - 1}" if bad is None else f"L^{bad[0]} z~^{bad[1]} nonzero"))
    out.append(Check.exact("u_0 = sum (5m)!/(m!)^5 z~^m", basis.u[0] == psi0_closed_form(N)))
    out.append(Check.exact("u_1 = 5 * harmonic-sum series", basis.u[1] == psi1_tilde_closed_form(N).scale(5)))
    return out


def suite_picard_fuchs(cfg: VerifyConfig) -> list[Check]:
    return picard_fuchs_checks(cfg.order)


def suite_monodromy(cfg: VerifyConfig) -> list[Check]:
    return check_monodromy_identities()


def suite_group(cfg: VerifyConfig) -> list[Check]:
    return group_law_checks(cfg.group_samples, cfg.seed)


def suite_cocycle(cfg: VerifyConfig) -> list[Check]:
    P = _periods(cfg.z, cfg.prec)
    return (cocycle.special_form_check(P) + cocycle.m1_cocycle_check(P) + cocycle.m0_cocycle_check(P)
            + cocycle.period_bridge_check(P) + cocycle.m0_continuation_check(cfg.z, cfg.prec))


def quadratic_checks(z: Fraction, prec: int) -> list[Check]:
    P = _periods(z, prec)
    tol = residual_tolerance(prec)
    res = quadratic_relations_residual(P)
    out = [Check.numeric(f"{name} at {prec} bits", abs(v), tol)
           for name, v in res.items() if name != "det"]
    with_det = abs(res["det"] + 1)
    out.append(Check.numeric(f"det + 1 at {prec} bits", with_det, tol))
    with mp.workprec(prec + GUARD_BITS):
        tau, _, _ = reduce_to_special_form(P.entries, tol)
        ratio = abs(tau.tau0 - P.entries[0][0] / P.entries[1][0])
    out.append(Check.numeric(f"tau0 = x11/x21 at {prec} bits", ratio, tol))
    return out


def suite_quadratic(cfg: VerifyConfig) -> list[Check]:
    return quadratic_checks(cfg.z, cfg.prec) + quadratic_checks(cfg.z, max(64, cfg.prec // 2))


def suite_yukawa(cfg: VerifyConfig) -> list[Check]:
    N = cfg.order
    basis = frobenius_components(N)
    lam = lambert_from_periods(N, basis)
    _, cubic = cubic_identity_check(N, basis)
    bad = _first_mismatch(lam, lambert_from_cubic(N, basis), N)
    out = cubic + [Check.exact("psi_2 and psi_3 Lambert routes agree", bad is None,
                               f"orders 0..{N}" if bad is None else f"differs at q^{bad}")]
    D = min(cfg.max_degree, N)
    try:
        ns = extract_instantons(lam, D)
    except ArithmeticError as exc:
        return out + [Check.exact("instanton numbers integral", False, str(exc))]
    out.append(Check.exact(f"n_1..n_{D} integral", True))
    for d, v in KNOWN_INSTANTONS.items():
        if d <= D:
            out.append(Check.exact(f"n_{d} = {v}", ns[d - 1] == v, str(ns[d - 1])))
    out.append(Check.exact(f"n_1..n_{D} positive", all(n > 0 for n in ns)))
    _, kap = reconcile_normalization(yukawa_bracket(cached_expand(N, cfg.cache_dir)), lam)
    return out + kap


SUITES = {
    "table": suite_table,
    "dual-route": suite_dual_route,
    "lovely1": suite_alt_system,
    "moduli-relations": suite_moduli,
    "picard-fuchs": suite_picard_fuchs,
    "monodromy": suite_monodromy,
    "group": suite_group,
    "cocycle": suite_cocycle,
    "quadratic-relations": suite_quadratic,
    "yukawa": suite_yukawa,
}


def run_suite(name: str, cfg: VerifyConfig | None = None) -> SuiteReport:
    cfg = cfg or VerifyConfig()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    try:
        checks = SUITES[name](cfg)
    except ArithmeticError as exc:
        checks = [Check.exact(f"{name} raised", False, f"{type(exc).__name__}: {exc}")]
    return SuiteReport(name, checks)


def run_suites(names, cfg: VerifyConfig | None = None) -> list[SuiteReport]:
    names = list(SUITES) if "all" in names else list(names)
    return [run_suite(n, cfg) for n in names]
