"""Frobenius basis of the quintic Picard-Fuchs operator and the period route
to the q-expansions h_0 .. h_6.

Everything is done in ``z~ = z / 5^5`` so all coefficients stay rational:
``5^(-5 eps) z^eps = z~^eps``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .series import LogSeries, SeriesError, TruncSeries
from .ramanujan import DEGREES, SeriesVector

EPS_DEGREE = 3
Z_SCALE = 5**5  # z = Z_SCALE * z~


def pochhammer_eps(c, n: int, deg: int = EPS_DEGREE) -> TruncSeries:
    """``(c + eps)_n`` expanded modulo ``eps^(deg+1)``."""
    if deg > EPS_DEGREE:
        raise SeriesError("eps-series are truncated at degree 3")
    c = Fraction(c)
    out = TruncSeries.constant("eps", 1, deg)
    for k in range(n):
        out = out * TruncSeries.from_coeffs("eps", [c + k, 1], deg)
    return out


@dataclass(frozen=True)
class FrobeniusBasis:
    """Log-graded components u_0 .. u_3; psi_j = sum_k L^k/k! u_{j-k}."""

    u: tuple[TruncSeries, ...]

    @property
    def order(self) -> int:
        return self.u[0].order

    def psi(self, j: int) -> LogSeries:
        parts = [self.u[j - k].scale(Fraction(1, factorial(k))) for k in range(j + 1)]
        return LogSeries(tuple(parts))


def frobenius_components(N: int) -> FrobeniusBasis:
    if N < 1:
        raise ValueError("order must be at least 1")
    one = TruncSeries.constant("eps", 1, EPS_DEGREE)
    b = one
    cols = [b]
    for n in range(1, N + 1):
        num = one
        for j in range(1, 5):
            num = num * TruncSeries.from_coeffs("eps", [5 * (n - 1) + j, 5], EPS_DEGREE)
        den = TruncSeries.from_coeffs("eps", [n, 1], EPS_DEGREE) ** 4
        # 5^5 (j/5 + eps + n - 1) = 5 (5(n-1) + j + 5 eps), four factors -> 5^4 * 5
        b = b * num.scale(5) / den
        cols.append(b)
    u = tuple(
        TruncSeries("ztilde", tuple(col[j] for col in cols)) for j in range(EPS_DEGREE + 1)
    )
    return FrobeniusBasis(u)


def psi0_closed_form(N: int) -> TruncSeries:
    """sum (5m)!/(m!)^5 z~^m."""
    return TruncSeries.from_coeffs(
        "ztilde", [factorial(5 * m) // factorial(m) ** 5 for m in range(N + 1)]
    )


def psi1_tilde_closed_form(N: int) -> TruncSeries:
    """sum (5m)!/(m!)^5 (H_{5m} - H_m) z~^m, the log-free part of psi_1 over 5."""
    cs = [Fraction(0)]
    for m in range(1, N + 1):
        harm = sum(Fraction(1, k) for k in range(m + 1, 5 * m + 1))
        cs.append(factorial(5 * m) // factorial(m) ** 5 * harm)
    return TruncSeries.from_coeffs("ztilde", cs)


def picard_fuchs_apply(s: LogSeries) -> LogSeries:
    """theta^4 - 5 z~ (5 theta + 1)(5 theta + 2)(5 theta + 3)(5 theta + 4).

    This is theta^4 - z (theta + 1/5)...(theta + 4/5) with z = 5^5 z~.
    """
    lhs = s.theta().theta().theta().theta()
    w = s
    for k in range(1, 5):
        w = w.theta() * 5 + w * k
    return lhs - w.shift(1) * 5


@dataclass(frozen=True)
class MirrorMap:
    q_of_z: TruncSeries
    z_of_q: TruncSeries


def mirror_map(N: int, basis: FrobeniusBasis | None = None) -> MirrorMap:
    if N < 2:
        raise ValueError("mirror map needs order >= 2")
    basis = basis or frobenius_components(N)
    u0, u1 = basis.u[0].truncate(N), basis.u[1].truncate(N)
    # q = exp(psi_1/psi_0) = z~ exp(u_1/u_0)
    q_of_z = (u1 / u0).exp().shift(1)
    z_of_q = TruncSeries("q", q_of_z.coeffs).revert()
    return MirrorMap(q_of_z, z_of_q)


class _W:
    """A log-series carrying its stripped power of (2 pi i / 5)."""

    __slots__ = ("w", "s")

    def __init__(self, w: int, s):
        self.w, self.s = w, s

    def __add__(self, other: "_W") -> "_W":
        if self.w != other.w:
            raise SeriesError(f"inhomogeneous sum: powers {self.w} and {other.w}")
        return _W(self.w, self.s + other.s)

    def __sub__(self, other: "_W") -> "_W":
        return self + _W(other.w, -other.s)

    def __mul__(self, other):
        if isinstance(other, _W):
            return _W(self.w + other.w, self.s * other.s)
        return _W(self.w, self.s * other)

    __rmul__ = __mul__


def closed_form_t(x1, x2, z) -> tuple:
    """The closed forms t_0..t_6 in the periods x_1j, x_2j (j = 1..4) and z.

    Generic in the scalar type; the period factors are kept on the left so
    the same code runs on weighted log-series and on plain numbers.
    """
    x11, x12, x13, _ = x1
    x21, x22, x23, x24 = x2
    wr2 = x12 * x21 - x11 * x22
    wr3 = x13 * x21 - x11 * x23
    return (
        x21,
        5**4 * x21 * (x21 * (6 * z - 1) + x22 * (5 * (11 * z - 1)) + x23 * (25 * (6 * z - 1))
                      + x24 * (125 * (z - 1))),
        5**4 * x21 * x21 * (x21 * (2 * z - 7) + x22 * (15 * (z - 1)) + x23 * (25 * (z - 1))),
        5**4 * x21 * x21 * x21 * (x21 * (z - 6) + x22 * (5 * (z - 1))),
        x21 * x21 * x21 * x21 * x21 * z,
        x21 * x21 * wr2 * (5**5 * (z - 1)),
        x21 * (wr2 * 3 + wr3 * 5) * (5**5 * (z - 1)),
    )


def closed_form_t_ztilde(N: int, basis: FrobeniusBasis | None = None) -> tuple[TruncSeries, ...]:
    """h_0 .. h_6 as exact series in z~ (before substituting the mirror map).

    Raises if any combination keeps a log term or has the wrong power of
    (2 pi i / 5).
    """
    basis = basis or frobenius_components(N)
    a = LogSeries.of(basis.u[0].truncate(N)) * Fraction(1, 5)
    b = basis.psi(1) * Fraction(1, 25)
    x2, x1 = [], []
    for _ in range(4):
        x2.append(_W(3, a))
        x1.append(_W(2, b))
        a, b = a.theta(), b.theta()
    z = TruncSeries.gen("ztilde", N) * Z_SCALE
    out = []
    for i, ti in enumerate(closed_form_t(x1, x2, z)):
        if ti.w != DEGREES[i]:
            raise SeriesError(f"t_{i}: stripped power {ti.w}, expected {DEGREES[i]}")
        if not ti.s.is_log_free():
            raise SeriesError(f"t_{i} keeps residual log terms")
        out.append(ti.s.parts[0])
    return tuple(out)


def period_route_h(N: int) -> SeriesVector:
    """Period route: h_i(q) from the closed-form t_i and the mirror map."""
    if N < 2:
        raise ValueError("order must be at least 2")
    basis = frobenius_components(N)
    mm = mirror_map(N, basis)
    hz = closed_form_t_ztilde(N, basis)
    h = tuple(s.compose(mm.z_of_q) for s in hz)
    return SeriesVector(h)

