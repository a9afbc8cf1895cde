"""Monodromy matrices, the Borel group G and its action on t, and the
reduction of period matrices to the special form.

Matrix helpers are written for any field-like scalar type (Fraction, mpmath
numbers, sympy expressions).
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .report import Check

Matrix = list[list]

M0 = [[1, 1, 0, 0], [0, 1, 0, 0], [5, 5, 1, 0], [0, -5, -1, 1]]
M1 = [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, 1]]
PSI = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
PHI = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [-1, 0, 0, 0]]


def _lift(x):
    """Plain ints become Fractions so that divisions stay exact."""
    return Fraction(x) if isinstance(x, int) else x


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))] for i in range(len(a))]


def transpose(a: Matrix) -> Matrix:
    return [list(r) for r in zip(*a)]


def identity(n: int = 4) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matpow(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def det(a: Matrix):
    """Laplace expansion along the first row (fine for 4x4, any ring)."""
    n = len(a)
    if n == 1:
        return a[0][0]
    total = 0
    for j in range(n):
        if a[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = a[0][j] * det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def check_monodromy_identities() -> list[Check]:
    def symplectic(m):
        return matmul(matmul(transpose(m), PSI), m) == PSI

    return [
        Check.exact("(M0 M1)^5 = I", matpow(matmul(M0, M1), 5) == identity()),
        Check.exact("M0^t Psi M0 = Psi", symplectic(M0)),
        Check.exact("M1^t Psi M1 = Psi", symplectic(M1)),
        Check.exact("Psi^2 = -I", matmul(PSI, PSI) == [[-x for x in r] for r in identity()]),
    ]


@dataclass(frozen=True)
class GroupElementG:
    """Element of G in the coordinates (g_1, ..., g_6)."""

    g: tuple

    def __post_init__(self):
        if len(self.g) != 6:
            raise ValueError("G has six coordinates")
        object.__setattr__(self, "g", tuple(_lift(x) for x in self.g))
        if self.g[0] == 0 or self.g[1] == 0:
            raise ZeroDivisionError("g_1 and g_2 must be nonzero")

    @classmethod
    def one(cls) -> "GroupElementG":
        return cls((1, 1, 0, 0, 0, 0))

    def matrix(self) -> Matrix:
        g1, g2, g3, g4, g5, g6 = self.g
        return [
            [1 / g1, -g3 / g1, (-g3 * g6 + g4) / g1, (-g3 * g4 + g5) / g1],
            [0, 1 / g2, g6 / g2, g4 / g2],
            [0, 0, g2, g2 * g3],
            [0, 0, 0, g1],
        ]

    @classmethod
    def from_matrix(cls, m: Matrix) -> "GroupElementG":
        g1, g2 = m[3][3], m[2][2]
        g3 = m[2][3] / g2
        g4 = m[1][3] * g2
        g6 = m[1][2] * g2
        g5 = m[0][3] * g1 + g3 * g4
        return cls((g1, g2, g3, g4, g5, g6))

    def __mul__(self, other: "GroupElementG") -> "GroupElementG":
        return GroupElementG.from_matrix(matmul(self.matrix(), other.matrix()))

    def inv(self) -> "GroupElementG":
        g1, g2, g3, g4, g5, g6 = self.g
        return GroupElementG((
            1 / g1,
            1 / g2,
            -g2 * g3 / g1,
            (g3 * g6 - g4) / (g1 * g2),
            (-g3 * g3 * g6 + 2 * g3 * g4 - g5) / (g1 * g1),
            -g6 / (g2 * g2),
        ))


def g_mul(a: GroupElementG, b: GroupElementG) -> GroupElementG:
    return a * b


def g_inv(a: GroupElementG) -> GroupElementG:
    return a.inv()


def g_to_matrix(a: GroupElementG) -> Matrix:
    return a.matrix()


def g_from_factors(g1, g2, g3, g4, g5, g6) -> Matrix:
    """The product of the two torus and four unipotent factors."""
    factors = [
        [[1 / g1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, g1]],
        [[1, 0, 0, 0], [0, 1 / g2, 0, 0], [0, 0, g2, 0], [0, 0, 0, 1]],
        [[1, -g3, 0, 0], [0, 1, 0, 0], [0, 0, 1, g3], [0, 0, 0, 1]],
        [[1, 0, g4, 0], [0, 1, 0, g4], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, g5], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, g6, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    ]
    out = factors[0]
    for f in factors[1:]:
        out = matmul(out, f)
    return out


def is_borel(m: Matrix) -> bool:
    lower_zero = all(m[i][j] == 0 for i in range(4) for j in range(i))
    return lower_zero and matmul(matmul(transpose(m), PHI), m) == PHI


# -- action on the t-space ------------------------------------------------------

def derived_t(t: Sequence) -> tuple:
    """(t_7, t_8, t_9, t_10) from t_0..t_6."""
    t0, _, t2, t3, t4, t5, t6 = (_lift(x) for x in t[:7])
    t0_3 = t0 * t0 * t0
    t0_4 = t0_3 * t0
    t0_5 = t0_4 * t0
    t7 = ((5**5 * t0_4 + t3) * t6 - (5**5 * t0_3 + t2) * t5) / (5**4 * (t4 - t0_5))
    t8 = 5**4 * (t0_5 - t4) / t5
    t9 = (-(5**5) * t0_4 - t3) / t5
    t10 = 625 * (t4 - t0_5)
    return t7, t8, t9, t10


def action_on_t(t: Sequence, g: GroupElementG) -> tuple:
    """Right action t -> t . g on (t_0, ..., t_6)."""
    g1, g2, g3, g4, g5, g6 = g.g
    t0, t1, t2, t3, t4, t5, t6 = (_lift(x) for x in t[:7])
    t7, t8, t9, _ = derived_t(t)
    return (
        t0 * g1,
        t1 * g1**2 + t7 * g1 * g2 * g3 + t9 * g1 / g2 * g4 - g3 * g4 + g5,
        t2 * g1**3 + t6 * g1**2 * g2 * g3 + t8 * g1**2 / g2 * g4,
        t3 * g1**4 + t5 * g1**3 * g2 * g3,
        t4 * g1**5,
        t5 * g1**3 * g2,
        t6 * g1**2 * g2 + t8 * g1**2 / g2 * g6,
    )


def action_on_derived(t: Sequence, g: GroupElementG) -> tuple:
    """(g.t_7, g.t_8, g.t_9, g.t_10) by the transformation formulas."""
    g1, g2, g3, g4, _, g6 = g.g
    t7, t8, t9, t10 = derived_t(t)
    return (
        t7 * g1 * g2 + t9 * g1 / g2 * g6 - g3 * g6 + g4,
        t8 * g1**2 / g2,
        t9 * g1 / g2 - g3,
        t10 * g1**5,
    )


def equivariance_t789(t: Sequence, g: GroupElementG) -> bool:
    """Closed forms of t_7..t_10 commute with the action (exact scalars)."""
    return tuple(derived_t(action_on_t(t, g))) == tuple(action_on_derived(t, g))


# -- special form -----------------------------------------------------------------

@dataclass(frozen=True)
class MirrorCoordinates:
    tau0: object
    tau1: object
    tau2: object
    tau3: object

    def __post_init__(self):
        for name in ("tau0", "tau1", "tau2", "tau3"):
            object.__setattr__(self, name, _lift(getattr(self, name)))

    def matrix(self) -> Matrix:
        t0, t1, t2, t3 = self.tau0, self.tau1, self.tau2, self.tau3
        return [
            [t0, 1, 0, 0],
            [1, 0, 0, 0],
            [t1, t3, 1, 0],
            [t2, -t0 * t3 + t1, -t0, 1],
        ]


class ReductionError(ArithmeticError):
    pass


def reduction_inverse_coords(x: Matrix) -> GroupElementG:
    """Coordinates of g^{-1} in terms of the period matrix x, where x g is special."""
    x = [[_lift(v) for v in row] for row in x]
    x11, x12, x13, _ = x[0]
    x21, x22, x23, x24 = x[1]
    w = x11 * x22 - x12 * x21
    return GroupElementG((
        1 / x21,
        -x21 / w,
        -x22 / x21,
        (-x12 * x23 + x13 * x22) / w,
        (x11 * x22 * x24 - x12 * x21 * x24 + x12 * x22 * x23 - x13 * x22 * x22) / (x21 * w),
        (x11 * x23 - x13 * x21) / w,
    ))


def reduce_to_special_form(x: Matrix, tol=None, absval=abs):
    """Return (tau, g, residual) with x g = tau in special form.

    ``residual`` is the largest deviation of x g from the special pattern.
    Raises ReductionError if x_21 or x_11 x_22 - x_12 x_21 vanishes (within
    ``tol``) or the pattern residual exceeds ``tol``.
    """
    x21 = x[1][0]
    w = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    if tol is None:
        if x21 == 0 or w == 0:
            raise ReductionError("x_21 = 0 or x_11 x_22 - x_12 x_21 = 0")
    elif absval(x21) < tol or absval(w) < tol:
        raise ReductionError("x_21 or x_11 x_22 - x_12 x_21 is numerically zero")
    g = reduction_inverse_coords(x).inv()
    y = matmul(x, g.matrix())
    tau = MirrorCoordinates(y[0][0], y[2][0], y[3][0], y[2][1])
    target = tau.matrix()
    diffs = [y[i][j] - target[i][j] for i in range(4) for j in range(4)]
    residual = max(absval(d) for d in diffs)
    if tol is not None and residual > tol:
        raise ReductionError(f"pattern residual {residual} exceeds tolerance")
    return tau, g, residual


def m1_cocycle_formula(tau: MirrorCoordinates) -> GroupElementG:
    t0, t1, t2, t3 = tau.tau0, tau.tau1, tau.tau2, tau.tau3
    den = t0 * t0 * t3 - t0 * t1 + t2 + 1
    return GroupElementG((
        1 / (t2 + 1),
        (t2 + 1) / den,
        (t0 * t3 - t1) / (t2 + 1),
        -t0 / den,
        1 / den,
        t0 * t0 / den,
    ))


def m1_functional_equations(t_image: Sequence, tau: MirrorCoordinates) -> tuple:
    """Right-hand sides of the M_1 functional equations for t_0..t_6.

    ``t_image`` are t_0..t_6 at M_1(w); tau are the coordinates at w.
    """
    t0, t1, t2, t3, t4, t5, t6 = (_lift(x) for x in t_image[:7])
    t7, t8, t9, _ = derived_t(t_image)
    a0, a1, a2, a3 = tau.tau0, tau.tau1, tau.tau2, tau.tau3
    s = a2 + 1
    den = a0 * a0 * a3 - a0 * a1 + a2 + 1
    c = a0 * a3 - a1
    return (
        t0 / s,
        t1 / s**2 + t7 * c / (s * den) + t9 * (-a0) / s**2 + 1 / s,
        t2 / s**3 + t6 * c / (s**2 * den) + t8 * (-a0) / s**3,
        t3 / s**4 + t5 * c / (s**3 * den),
        t4 / s**5,
        t5 / (s**2 * den),
        t6 / (s * den) + t8 * a0 * a0 / s**3,
    )


# -- randomized group-law checks ------------------------------------------------

def random_rational(rng, nonzero: bool = False, size: int = 9) -> Fraction:
    while True:
        x = Fraction(rng.randint(-size, size), rng.randint(1, size))
        if x or not nonzero:
            return x


def random_element(rng) -> GroupElementG:
    return GroupElementG(tuple(random_rational(rng, nonzero=i < 2) for i in range(6)))


def random_t(rng) -> tuple:
    """A rational t_0..t_6 where t_7..t_9 are defined (t_5 != 0, t_4 != t_0^5)."""
    while True:
        t = tuple(random_rational(rng) for _ in range(7))
        if t[5] != 0 and t[4] != t[0] ** 5:
            return t


def group_law_checks(samples: int = 100, seed: int = 0) -> list[Check]:
    rng = random.Random(seed)
    one = GroupElementG.one()
    counts = dict.fromkeys(
        ("inverse", "factors", "borel", "homomorphism", "right action", "equivariance"), 0)
    for _ in range(samples):
        a, b = random_element(rng), random_element(rng)
        t = random_t(rng)
        counts["inverse"] += a * a.inv() == one and a.inv() * a == one
        m = a.matrix()
        counts["factors"] += g_from_factors(*a.g) == m and GroupElementG.from_matrix(m) == a
        counts["borel"] += is_borel(m)
        counts["homomorphism"] += (a * b).matrix() == matmul(m, b.matrix())
        counts["right action"] += action_on_t(action_on_t(t, a), b) == action_on_t(t, a * b)
        counts["equivariance"] += equivariance_t789(t, a)
    return [Check.exact(f"{name} ({samples} samples)", n == samples, f"{n}/{samples} pass, seed {seed}")
            for name, n in counts.items()]
