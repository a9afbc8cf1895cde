"""Yukawa coupling, Lambert coefficients and instanton numbers.

Two period-side routes produce the Lambert coefficients c_n = sum_{d|n} n_d d^3,
and the ODE side gives the bracket 5^8 (h_4 - h_0^5)^2 / h_5^3.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .frobenius import FrobeniusBasis, MirrorMap, frobenius_components, mirror_map
from .ramanujan import SeriesVector
from .report import Check
from .series import LogSeries, SeriesError, TruncSeries


class IntegralityError(ArithmeticError):
    pass


@dataclass(frozen=True)
class YukawaData:
    lambert: TruncSeries
    instantons: tuple[int, ...]
    bracket: TruncSeries
    kappa: Fraction


def _period_data(N: int, basis: FrobeniusBasis | None, mm: MirrorMap | None):
    basis = basis or frobenius_components(N)
    mm = mm or mirror_map(N, basis)
    return basis, mm


def _ratios(basis: FrobeniusBasis, N: int) -> list[LogSeries]:
    """psi_j / psi_0 for j = 1, 2, 3 (psi_0 is log-free)."""
    inv0 = LogSeries.of(basis.u[0].truncate(N).inverse())
    return [basis.psi(j) * inv0 for j in (1, 2, 3)]


def _log_free(s: LogSeries, what: str) -> TruncSeries:
    if not s.is_log_free():
        raise SeriesError(f"{what} keeps residual log terms")
    return s.parts[0]


def _reweight(s: TruncSeries, power: int, factor) -> TruncSeries:
    """c_n = factor * n^power * [q^n] s."""
    return TruncSeries("q", tuple(factor * n**power * c for n, c in enumerate(s.coeffs)))


def lambert_from_periods(N: int, basis: FrobeniusBasis | None = None,
                         mm: MirrorMap | None = None) -> TruncSeries:
    """c_n from psi_2/psi_0 - (psi_1/psi_0)^2 / 2 = (1/5) sum c_n q^n / n^2."""
    basis, mm = _period_data(N, basis, mm)
    r1, r2, _ = _ratios(basis, N)
    comb = _log_free(r2 - r1 * r1 * Fraction(1, 2), "psi_2 combination")
    return _reweight(comb.compose(mm.z_of_q), 2, 5)


def cubic_combination(N: int, basis: FrobeniusBasis | None = None,
                      mm: MirrorMap | None = None) -> TruncSeries:
    """r_1^3/3 - r_1 r_2 + r_3 with r_j = psi_j/psi_0, as a q-series."""
    basis, mm = _period_data(N, basis, mm)
    r1, r2, r3 = _ratios(basis, N)
    comb = _log_free(r1 * r1 * r1 * Fraction(1, 3) - r1 * r2 + r3, "psi_3 combination")
    return comb.compose(mm.z_of_q)


def cubic_identity_check(N: int, basis: FrobeniusBasis | None = None,
                         mm: MirrorMap | None = None) -> tuple[Fraction, list[Check]]:
    """Compare the cubic combination with sum c_n q^n / n^3.

    Returns the single constant sigma with cubic = sigma * sum c_n q^n/n^3 (the
    same sigma at every order, measured from q^1) and the checks.  The
    measured sigma is -2/5.
    """
    basis, mm = _period_data(N, basis, mm)
    cubic = cubic_combination(N, basis, mm)
    lam = lambert_from_periods(N, basis, mm)
    third = [Fraction(0)] + [lam[n] / n**3 for n in range(1, N + 1)]
    sigma = cubic[1] / third[1]
    bad = next((n for n in range(N + 1) if cubic[n] != sigma * third[n]), None)
    checks = [
        Check.exact("cubic combination = sigma sum c_n q^n/n^3", bad is None,
                    f"sigma = {sigma}, orders 0..{N}" if bad is None else f"fails at q^{bad}"),
        Check.exact("sigma = -2/5 (sign opposite to +2/5)", sigma == Fraction(-2, 5), f"sigma = {sigma}"),
    ]
    return sigma, checks


def lambert_from_cubic(N: int, basis: FrobeniusBasis | None = None,
                       mm: MirrorMap | None = None, sigma=Fraction(-2, 5)) -> TruncSeries:
    """c_n from the cubic combination: n^3 [q^n] / sigma."""
    return _reweight(cubic_combination(N, basis, mm), 3, 1 / Fraction(sigma))


def extract_instantons(lambert: TruncSeries, D: int) -> tuple[int, ...]:
    """n_1..n_D by divisor-sum inversion of c_n = sum_{d|n} n_d d^3."""
    if D < 1 or D > lambert.order:
        raise ValueError(f"need 1 <= D <= {lambert.order}")
    n: dict[int, int] = {}
    for d in range(1, D + 1):
        rest = lambert[d] - sum(n[e] * e**3 for e in range(1, d) if d % e == 0)
        val = Fraction(rest) / d**3
        if val.denominator != 1:
            raise IntegralityError(f"n_{d} = {val} is not an integer")
        n[d] = int(val)
    return tuple(n[d] for d in range(1, D + 1))


def lambert_from_instantons(ns, N: int) -> TruncSeries:
    """sum_d n_d d^3 q^d / (1 - q^d) to order N."""
    c = [Fraction(0)] * (N + 1)
    for d, nd in enumerate(ns, start=1):
        for m in range(d, N + 1, d):
            c[m] += nd * d**3
    return TruncSeries("q", tuple(c))


def yukawa_bracket(sv: SeriesVector) -> TruncSeries:
    """5^8 (h_4 - h_0^5)^2 / h_5^3."""
    h0, h4, h5 = sv.h[0], sv.h[4], sv.h[5]
    d = h4 - h0**5
    return d * d * 5**8 / (h5 * h5 * h5)


def reconcile_normalization(bracket: TruncSeries, lambert: TruncSeries) -> tuple[Fraction, list[Check]]:
    """Find kappa with kappa * bracket = 5 + sum c_n q^n at every common order."""
    N = min(bracket.order, lambert.order)
    target = TruncSeries("q", (Fraction(5),) + tuple(lambert.coeffs[1:])).truncate(N)
    if bracket[0] == 0:
        raise ArithmeticError("bracket has zero constant term")
    kappa = target[0] / bracket[0]
    bad = next((n for n in range(N + 1) if kappa * bracket[n] != target[n]), None)
    note = "" if kappa == 1 else "; the normalization kappa = 1 does not hold"
    checks = [
        Check.exact("kappa * bracket = 5 + sum c_n q^n", bad is None,
                    (f"kappa = {kappa}, orders 0..{N}" + note) if bad is None else f"fails at q^{bad}"),
    ]
    return kappa, checks


def yukawa_data(sv: SeriesVector, D: int) -> YukawaData:
    N = sv.order
    lam = lambert_from_periods(N)
    bracket = yukawa_bracket(sv)
    kappa, checks = reconcile_normalization(bracket, lam)
    if not checks[0].passed:
        raise ArithmeticError(f"no constant kappa fits: {checks[0].detail}")
    return YukawaData(lam, extract_instantons(lam, D), bracket, kappa)


__all__ = [
    "IntegralityError", "YukawaData", "cubic_combination", "cubic_identity_check",
    "extract_instantons", "lambert_from_cubic", "lambert_from_instantons", "lambert_from_periods",
    "reconcile_normalization", "yukawa_bracket", "yukawa_data",
]
