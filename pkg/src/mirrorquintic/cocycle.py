"""Numeric checks tying the period matrix to the group action.

All comparisons use the normalized matrix ``PeriodMatrix.entries`` unless
stated otherwise, and run at the matrix's working precision.
"""
from __future__ import annotations

from fractions import Fraction

import mpmath
from mpmath import mp

from .frobenius import closed_form_t
from .group import (
    M0, M1, GroupElementG, action_on_t, m1_cocycle_formula, matmul,
    reduce_to_special_form, reduction_inverse_coords, m1_functional_equations,
)
from .periods import GUARD_BITS, PeriodMatrix, pi, residual_tolerance, to_mpf
from .ramanujan import DEGREES, expand
from .report import Check


def base_point(z) -> tuple:
    """(t_0, ..., t_6) = (1, 0, 0, 0, z, 1, 0), in the scalar type of z."""
    zero = z - z
    one = zero + 1
    return (one, zero, zero, zero, z, one, zero)


def t_from_periods(x, z) -> tuple:
    """t = base . g where x g is in special form."""
    return action_on_t(base_point(z), reduction_inverse_coords(x).inv())


def _rel(a, b):
    """Largest componentwise |a - b| / max(1, |b|)."""
    return max(abs(u - v) / max(1, abs(v)) for u, v in zip(a, b))


def _zf(P: PeriodMatrix):
    return to_mpf(P.z)


def special_form_check(P: PeriodMatrix) -> list[Check]:
    tol = residual_tolerance(P.prec)
    with mp.workprec(P.prec + GUARD_BITS):
        _, _, res = reduce_to_special_form(P.entries)
    return [Check.numeric("x g has the special form", res, tol)]


def m1_cocycle_check(P: PeriodMatrix) -> list[Check]:
    """M_1 tau(w) = tau(M_1 w) g(M_1, w) against the closed-form cocycle, and
    the functional equations of t_0..t_6 under M_1."""
    tol = residual_tolerance(P.prec)
    with mp.workprec(P.prec + GUARD_BITS):
        x = P.entries
        tau, g_w, _ = reduce_to_special_form(x, tol)
        # reduce M_1 tau(w):  (M_1 tau) h = tau(M_1 w), so g(M_1, w) = h^{-1}
        tau_m, h, res_m = reduce_to_special_form(matmul(M1, tau.matrix()), tol)
        g_direct = h.inv()
        g_formula = m1_cocycle_formula(tau)
        res_g = max(abs(a - b) for a, b in zip(g_direct.g, g_formula.g))
        res_tau0 = abs(tau_m.tau0 - tau.tau0 / (tau.tau2 + 1))

        z = _zf(P)
        t_w = action_on_t(base_point(z), g_w)
        _, g_mw, _ = reduce_to_special_form(matmul(M1, x), tol)
        t_mw = action_on_t(base_point(z), g_mw)
        res_rhs = _rel(t_w, m1_functional_equations(t_mw, tau))
        res_act = _rel(t_w, action_on_t(t_mw, g_formula))
    return [
        Check.numeric("M1 tau(w) reduces to the special form", res_m, tol),
        Check.numeric("g(M1, w) matches the closed-form cocycle", res_g, tol),
        Check.numeric("M1 acts on tau0 as tau0/(tau2+1)", res_tau0, tol),
        Check.numeric("t(w) = M1 functional equations", res_rhs, tol),
        Check.numeric("t(w) = t(M1 w) . g(M1, w)", res_act, tol),
    ]


def m0_cocycle_check(P: PeriodMatrix) -> list[Check]:
    """M_0 maps the special form to itself with tau_0 -> tau_0 + 1."""
    tol = residual_tolerance(P.prec)
    with mp.workprec(P.prec + GUARD_BITS):
        tau, _, _ = reduce_to_special_form(P.entries, tol)
        tau_m, h, res_m = reduce_to_special_form(matmul(M0, tau.matrix()), tol)
        res_g = max(abs(a - b) for a, b in zip(h.g, GroupElementG.one().g))
        res_tau0 = abs(tau_m.tau0 - tau.tau0 - 1)
    return [
        Check.numeric("M0 tau(w) reduces to the special form", res_m, tol),
        Check.numeric("g(M0, w) = 1", res_g, tol),
        Check.numeric("M0 acts on tau0 as tau0 + 1", res_tau0, tol),
    ]


def m0_continuation_check(z, prec: int = 256) -> list[Check]:
    """Continuing once around z = 0 multiplies the theta-periods by M_0."""
    from .periods import assemble_period_matrix

    P = assemble_period_matrix(z, prec)
    Q = assemble_period_matrix(z, prec, log_shift=1)
    tol = residual_tolerance(prec)
    with mp.workprec(prec + GUARD_BITS):
        expected = matmul(M0, P.theta)
        res = max(abs(a - b) / max(1, abs(b)) for ra, rb in zip(Q.theta, expected) for a, b in zip(ra, rb))
    return [Check.numeric("log continuation = M0 x", res, tol)]


def closed_form_t_numeric(P: PeriodMatrix) -> tuple:
    """Closed forms of t_0..t_6 evaluated on the raw theta-periods."""
    with mp.workprec(P.prec + GUARD_BITS):
        x = P.theta
        return closed_form_t(x[0], x[1], _zf(P))


# h_i coefficients grow like R^n with R just below 2000
_Q_GROWTH = 2500


def _q_order(q_abs, prec: int) -> int:
    rate = -mpmath.log(_Q_GROWTH * q_abs, 2)
    if rate <= 1:
        raise ValueError("sample point too close to the conifold for the q-series route")
    return int(mpmath.ceil((prec + 20) / rate)) + 5


def period_bridge_check(P: PeriodMatrix, series_order: int | None = None) -> list[Check]:
    """Three routes to t at the sample point.

    * closed forms on the theta-periods against base . g(alpha);
    * the unnormalized t against the normalized one moved by the torus
      element (lam, lam, 0, 0, 0, 0);
    * the closed forms against (2 pi i / 5)^d_i h_i(q) with q = e^{2 pi i tau_0}.
    """
    tol = residual_tolerance(P.prec)
    z = P.z
    with mp.workprec(P.prec + GUARD_BITS):
        zf = _zf(P)
        closed = closed_form_t_numeric(P)
        t_alpha = t_from_periods(P.alpha, zf)
        t_norm = t_from_periods(P.entries, zf)
        lam = P.lam
        moved = action_on_t(t_norm, GroupElementG((lam, lam, 0, 0, 0, 0)))

        tau0 = P.entries[0][0] / P.entries[1][0]
        twopii = 2j * pi(P.prec + GUARD_BITS)
        q = mpmath.exp(twopii * tau0)
        series_order = series_order or _q_order(abs(q), P.prec)
        sv = expand(series_order)
        from_q = []
        for i, h in enumerate(sv.h):
            acc = mpmath.mpc(0)
            for c in reversed(h.coeffs):
                acc = acc * q + to_mpf(c)
            from_q.append((twopii / 5) ** DEGREES[i] * acc)
    out = [
        Check.numeric("closed forms = base . g(alpha)", _rel(closed, t_alpha), tol),
        Check.numeric("t(alpha) = t(alpha/lam) . (lam, lam, 0, 0, 0, 0)", _rel(t_alpha, moved), tol),
        Check.numeric("closed forms = (2 pi i/5)^d h(q)", _rel(closed, from_q), tol,
                      f"q-series order {series_order}, z = {Fraction(z)}"),
    ]
    return out


__all__ = [
    "base_point", "m0_continuation_check", "m0_cocycle_check", "m1_cocycle_check",
    "period_bridge_check", "special_form_check", "t_from_periods", "closed_form_t_numeric",
]
