"""The Ramanujan-type vector field of the mirror quintic and its exact
q-expansion.

With ``t_i = (2 pi i/5)^{d_i} h_i(q)`` and ``d/d tau_0 = 2 pi i q d/dq`` the
system ``t_5 dt_i/dtau_0 = P_i(t)`` becomes ``5 q h_i' h_5 = P_i(h)``.  The
recursion below solves this order by order.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .report import Check
from .series import TruncSeries

DEGREES = (3, 6, 9, 12, 15, 11, 8)
DERIVED_DEGREES = (5, 4, 1)  # t_7, t_8, t_9
WEIGHTS = (1, 2, 3, 4, 5, 3, 2)  # exponent of k under g = (k,1,0,0,0,0)
DERIVED_WEIGHTS = (1, 2, 1)

T0 = tuple(Fraction(x) for x in ("1/5", -25, -35, -6, 0, -1, -15))
T1 = tuple(Fraction(x) for x in (24, -2250, -5350, -355, 1, 1875, 4675))

# row scalings of the reference coefficient table, rows h_0 .. h_9
TABLE_ROW_SCALES = tuple(
    Fraction(x) for x in ("1/24", "-1/750", "-1/50", "-1/5", -1, "1/125", "1/25", "1/125", "1/10", "1/10")
)


class RecursionError(ArithmeticError):
    pass


def vf_numerators(t: Sequence) -> tuple:
    """P_i = t_5 * Ra_i, the polynomial right-hand sides of the system."""
    t0, t1, t2, t3, t4, t5, t6 = t
    t0_2 = t0 * t0
    t0_3 = t0_2 * t0
    t0_4 = t0_3 * t0
    t0_5 = t0_4 * t0
    return (
        6 * 5**4 * t0_5 + t0 * t3 - 5**4 * t4,
        -(5**8) * t0_5 * t0 + 5**5 * t0_4 * t1 + 5**8 * t0 * t4 + t1 * t3,
        -3 * 5**9 * t0_5 * t0_2 - 5**4 * t0_5 * t1 + 2 * 5**5 * t0_4 * t2
        + 3 * 5**9 * t0_2 * t4 + 5**4 * t1 * t4 + 2 * t2 * t3,
        -(5**10) * t0_5 * t0_3 - 5**4 * t0_5 * t2 + 3 * 5**5 * t0_4 * t3
        + 5**10 * t0_3 * t4 + 5**4 * t2 * t4 + 3 * t3 * t3,
        5**6 * t0_4 * t4 + 5 * t3 * t4,
        -(5**4) * t0_5 * t6 + 3 * 5**5 * t0_4 * t5 + 2 * t3 * t5 + 5**4 * t4 * t6,
        3 * 5**5 * t0_4 * t6 - 5**5 * t0_3 * t5 - 2 * t2 * t5 + 3 * t3 * t6,
    )


@dataclass(frozen=True)
class Dual:
    """a + b*eps with eps^2 = 0; enough ring structure for vf_numerators."""

    a: Fraction
    b: Fraction = Fraction(0)

    def _lift(self, o):
        return o if isinstance(o, Dual) else Dual(Fraction(o))

    def __add__(self, o):
        o = self._lift(o)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-self._lift(o))

    def __rsub__(self, o):
        return self._lift(o) - self

    def __mul__(self, o):
        o = self._lift(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__


def jacobian(t: Sequence) -> list[list[Fraction]]:
    """Exact Jacobian of (P_0..P_6) at the rational point ``t``, by dual numbers."""
    cols = []
    for j in range(7):
        pt = [Dual(Fraction(x), Fraction(int(i == j))) for i, x in enumerate(t)]
        cols.append([p.b for p in vf_numerators(pt)])
    return [[cols[j][i] for j in range(7)] for i in range(7)]


def jacobian_A0() -> list[list[Fraction]]:
    return jacobian(T0)


def solve_exact(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Gauss-Jordan over Q; raises RecursionError when A is singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise RecursionError(f"singular system (column {c})")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


@dataclass(frozen=True)
class SeriesVector:
    """q-series h_0..h_6 and, optionally, the derived h_7, h_8, h_9."""

    h: tuple[TruncSeries, ...]
    derived: tuple[TruncSeries, ...] | None = None

    @property
    def order(self) -> int:
        return min(s.order for s in self.all())

    def all(self) -> tuple[TruncSeries, ...]:
        return self.h + (self.derived or ())

    def coefficient_vector(self, n: int) -> tuple[Fraction, ...]:
        return tuple(s[n] for s in self.h)

    def with_derived(self) -> "SeriesVector":
        if self.derived is not None:
            return self
        return SeriesVector(self.h, derived_t789(self))

    def truncate(self, N: int) -> "SeriesVector":
        der = tuple(s.truncate(N) for s in self.derived) if self.derived else None
        return SeriesVector(tuple(s.truncate(N) for s in self.h), der)

    def rows(self, table_scaled: bool = False) -> list[list[Fraction]]:
        out = []
        for i, s in enumerate(self.all()):
            k = TABLE_ROW_SCALES[i] if table_scaled else 1
            out.append([k * c for c in s.coeffs])
        return out


def expand(N: int) -> SeriesVector:
    """Exact q-expansion of h_0..h_6 to order N from T_0, T_1 and the
    (A_0 + 5n I) recursion."""
    if N < 1:
        raise ValueError("order must be at least 1")
    A0 = jacobian_A0()
    cols: list[list[Fraction]] = [list(T0), list(T1)]
    for n in range(2, N + 1):
        partial = [
            TruncSeries("q", tuple(cols[k][i] for k in range(n)) + (Fraction(0),)) for i in range(7)
        ]
        rhs = [p[n] for p in vf_numerators(partial)]
        # known part of [q^n] 5 q h_i' h_5; the k = n term is 5 n h_{i,n} h_{5,0}
        lhs = [sum(5 * k * cols[k][i] * cols[n - k][5] for k in range(1, n)) for i in range(7)]
        h50 = cols[0][5]
        # (5 n h_{5,0} I - A_0) T_n = [q^n]P(known) - known lhs
        M = [[(5 * n * h50 if i == j else 0) - A0[i][j] for j in range(7)] for i in range(7)]
        cols.append(solve_exact(M, [r - l for r, l in zip(rhs, lhs)]))
    cols = cols[: N + 1]
    h = tuple(TruncSeries("q", tuple(c[i] for c in cols)) for i in range(7))
    return SeriesVector(h)


def initial_data_checks() -> list[Check]:
    """T_0 and T_1 solve the q^0 and q^1 coefficient equations."""
    p0 = vf_numerators(T0)
    A0 = jacobian_A0()
    # q^1: 5 h_{i,1} h_{5,0} = sum_j A0_ij h_{j,1}
    r1 = [5 * T1[i] * T0[5] - sum(A0[i][j] * T1[j] for j in range(7)) for i in range(7)]
    return [
        Check.exact("P(T0) = 0", all(x == 0 for x in p0)),
        Check.exact("q^1 equation holds for T1", all(x == 0 for x in r1)),
        Check.exact("h00 = 1/5, h01 = 24, h40 = 0, h50 != 0",
                    (T0[0], T1[0], T0[4]) == (Fraction(1, 5), 24, 0) and T0[5] != 0),
    ]


def derived_t789(sv: SeriesVector) -> tuple[TruncSeries, TruncSeries, TruncSeries]:
    """h_7, h_8, h_9 from the closed-form t_7, t_8, t_9 (powers 5, 4, 1)."""
    h0, _, h2, h3, h4, h5, h6 = sv.h
    h0_3 = h0 * h0 * h0
    h0_4 = h0_3 * h0
    h0_5 = h0_4 * h0
    h7 = ((h0_4 * 5**5 + h3) * h6 - (h0_3 * 5**5 + h2) * h5) / ((h4 - h0_5) * 5**4)
    h8 = (h0_5 - h4) * 5**4 / h5
    h9 = (-(h0_4 * 5**5) - h3) / h5
    return h7, h8, h9


def dot(s: TruncSeries) -> TruncSeries:
    """5 q d/dq."""
    return s.theta().scale(5)


def alt_system_residuals(sv: SeriesVector) -> list[TruncSeries]:
    """Left minus right side of the ten-equation form in t_0..t_9."""
    sv = sv.with_derived()
    t0, t1, t2, t3, t4, t5, t6, t7, t8, t9 = sv.all()
    c = t8 * t8 / t5
    rhs = [
        t8 - t0 * t9,
        -(t1 * t9) - t0 * t8 * 5**4,
        -(t1 * t8) - t2 * t9 * 2 - t0 * t0 * t8 * (3 * 5**5),
        t2 * t8 * 4 - t3 * t9 * 3 - (t7 * t8 - t9 * t6) * t8 * 5,
        -(t4 * t9) * 5,
        -(t6 * t8) - t5 * t9 * 3 - t3,
        -(t6 * t9) * 2 - t2 - t7 * t8,
        -(t7 * t9) - t1,
        c * t6 - t8 * t9 * 3,
        c * t7 - t9 * t9,
    ]
    return [dot(t) - r for t, r in zip(sv.all(), rhs)]


def verify_alt_system(sv: SeriesVector) -> list[Check]:
    N = sv.order
    out = []
    for i, res in enumerate(alt_system_residuals(sv)):
        bad = next((n for n in range(N) if res[n] != 0), None)
        detail = f"orders 0..{N - 1}" if bad is None else f"fails at q^{bad}"
        out.append(Check.exact(f"alternative system eq {i}", bad is None, detail))
    return out


def verify_polynomial_system(sv: SeriesVector) -> list[Check]:
    """Re-substitute: 5 q h_i' h_5 - P_i(h) vanishes through order N."""
    P = vf_numerators(sv.h)
    out = []
    for i in range(7):
        res = dot(sv.h[i]) * sv.h[5] - P[i]
        bad = next((n for n in range(res.order + 1) if res[n] != 0), None)
        out.append(Check.exact(f"Ra eq {i}", bad is None, "" if bad is None else f"fails at q^{bad}"))
    return out


def verify_modulispace_relations(sv: SeriesVector) -> list[Check]:
    sv = sv.with_derived()
    t0, _, t2, t3, t4, t5, t6, t7, t8, t9 = sv.all()
    t0_3 = t0 * t0 * t0
    t10_a = -(t8 * t5)
    t10_b = (t4 - t0_3 * t0 * t0) * 625
    rels = {
        "t7 t8 - t6 t9 = 3125 t0^3 + t2": t7 * t8 - t6 * t9 - (t0_3 * 3125 + t2),
        "t5 t9 = -3125 t0^4 - t3": t5 * t9 + t0_3 * t0 * 3125 + t3,
        "-t8 t5 = 625 (t4 - t0^5)": t10_a - t10_b,
    }
    return [Check.exact(name, r.is_zero()) for name, r in rels.items()]
