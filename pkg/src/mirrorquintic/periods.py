"""Numeric periods of the mirror quintic at a sample point.

The sample point is given in the Picard-Fuchs coordinate ``z`` (singular
fibre at ``z = 1``); series are summed in ``z~ = z / 5^5``.

Three matrices are produced:

* ``theta``:  x_ij = theta^(j-1) x_i1, the periods of eta, theta eta, ...
* ``alpha``:  the same periods in the basis alpha = S T (eta, theta eta, ...)
  of the point (t_0, ..., t_6) = (1, 0, 0, 0, z, 1, 0).  This matrix satisfies
  alpha^t Psi alpha = -(2 pi i)^3 Phi.
* ``entries``: alpha / lam with lam^2 = -(2 pi i)^3, which satisfies
  Phi - x^t Psi x = 0 and det x = -1 exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
from mpmath import mp
from mpmath.libmp import from_rational, round_nearest

from .frobenius import Z_SCALE, FrobeniusBasis, frobenius_components
from .group import PHI, PSI, Matrix, det, matmul, transpose

GUARD_BITS = 32
TAIL_EXTRA_BITS = 20


class PrecisionError(ArithmeticError):
    pass


def to_mpf(x: Fraction) -> mpmath.mpf:
    """Correctly rounded conversion of an exact rational at the working precision."""
    x = Fraction(x)
    return mpmath.mpf(from_rational(x.numerator, x.denominator, mp.prec, round_nearest))


# -- constants ------------------------------------------------------------------

def _arctan_inv(n: int, eps: Fraction) -> Fraction:
    """arctan(1/n) as an exact partial sum with error below eps."""
    total, k, sign = Fraction(0), 0, 1
    while True:
        term = Fraction(1, (2 * k + 1) * n ** (2 * k + 1))
        if term < eps:
            return total
        total += sign * term
        sign, k = -sign, k + 1


def pi(prec: int) -> mpmath.mpf:
    """pi by Machin's formula, summed exactly then rounded to ``prec`` bits."""
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    eps = Fraction(1, 2 ** (prec + 16))
    s = 16 * _arctan_inv(5, eps) - 4 * _arctan_inv(239, eps)
    with mp.workprec(prec):
        return to_mpf(s)


def zeta3(prec: int) -> mpmath.mpf:
    """zeta(3) from the series (1/64) sum (-1)^k (205k^2+250k+77) k!^10/(2k+1)!^5."""
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    eps = Fraction(1, 2 ** (prec + 16))
    total, k = Fraction(0), 0
    fk, f2k1 = 1, 1  # k!, (2k+1)!
    while True:
        term = Fraction((205 * k * k + 250 * k + 77) * fk**10, f2k1**5)
        if term < eps:
            break
        total += term if k % 2 == 0 else -term
        k += 1
        fk *= k
        f2k1 *= (2 * k) * (2 * k + 1)
    with mp.workprec(prec):
        return to_mpf(total / 64)


# -- period matrix ----------------------------------------------------------------

@lru_cache(maxsize=8)
def _basis(N: int) -> FrobeniusBasis:
    return frobenius_components(N)


def _terms_needed(z: Fraction, prec: int) -> int:
    # coefficients grow like 3125^n, so the terms decay like z^n
    rate = -math.log2(float(abs(z)))
    return int((prec + TAIL_EXTRA_BITS) / rate) + 30


def _eval_series(coeffs, x):
    acc = mpmath.mpf(0)
    for c in reversed(coeffs):
        acc = acc * x + to_mpf(c)
    return acc


@dataclass(frozen=True)
class PeriodMatrix:
    z: Fraction
    prec: int
    n_terms: int
    tail: object  # largest |last term| over all summed series
    theta: Matrix
    alpha: Matrix
    lam: object
    entries: Matrix
    psi: tuple = field(repr=False, default=())  # psi[j][k] = theta^k psi_j

    @property
    def ztilde(self) -> Fraction:
        return self.z / Z_SCALE

    def to_dict(self) -> dict:
        digits = int(self.prec * math.log10(2)) + 1

        def cplx(w):
            w = mpmath.mpc(w)
            return {
                "re": mpmath.nstr(w.real, digits, min_fixed=1, max_fixed=0),
                "im": mpmath.nstr(w.imag, digits, min_fixed=1, max_fixed=0),
                "prec_bits": self.prec,
            }

        return {
            "z": str(self.z),
            "ztilde": str(self.ztilde),
            "prec_bits": self.prec,
            "series_terms": self.n_terms,
            "tail_bound": mpmath.nstr(self.tail, 5),
            "normalization": cplx(self.lam),
            "entries": [[cplx(w) for w in row] for row in self.entries],
            "theta_periods": [[cplx(w) for w in row] for row in self.theta],
        }


def base_change_ST(z) -> Matrix:
    """S T with alpha = S T (eta, theta eta, theta^2 eta, theta^3 eta)^t."""
    S = [
        [1, 0, 0, 0],
        [-(5**5), -(5**4) * (z - 1), 0, 0],
        [-5 / (z - 1), 0, 1, 0],
        [0, 0, 0, 5**4 * (z - 1)],
    ]
    T = [[1, 0, 0, 0], [-1, -5, 0, 0], [2, 15, 25, 0], [-6, -55, -150, -125]]
    return matmul(S, T)


def assemble_period_matrix(z, prec: int = 256, log_shift: int = 0,
                           max_terms: int = 4000) -> PeriodMatrix:
    """Periods at the point ``z`` (0 < z < 1) to ``prec`` bits.

    ``log_shift = m`` replaces ln z~ by ln z~ + 2 pi i m, i.e. continues the
    periods m times around z = 0.
    """
    z = Fraction(z)
    if prec < 64:
        raise ValueError("precision must be at least 64 bits")
    if not 0 < z < 1:
        raise ValueError("sample point must satisfy 0 < z < 1 (principal branch only)")
    N = _terms_needed(z, prec)
    wp = prec + GUARD_BITS
    with mp.workprec(wp):
        zt = to_mpf(z / Z_SCALE)
        bound = mpmath.mpf(2) ** -(prec + TAIL_EXTRA_BITS)
        while True:
            if N > max_terms:
                raise PrecisionError(f"series order above {max_terms} needed for {prec} bits at z = {z}")
            basis = _basis(N)
            twopii = 2j * pi(wp)
            L = mpmath.log(zt) + twopii * log_shift
            tail = mpmath.mpf(0)
            logscale = max(1, abs(L)) ** 3
            psi = []
            for j in range(4):
                ls = basis.psi(j)
                row = []
                for _ in range(4):
                    parts = []
                    for p in ls.parts:
                        last = p.coeffs[-1]
                        tail = max(tail, abs(to_mpf(last)) * zt**N * logscale)
                        parts.append(_eval_series(p.coeffs, zt))
                    row.append(sum(v * L**k for k, v in enumerate(parts)))
                    ls = ls.theta()
                psi.append(tuple(row))
            if tail < bound:
                break
            N = int(N * 1.5)

        a = -200 * zeta3(wp) / twopii**3
        b = mpmath.mpf(25) / 12
        d = 5
        c = [twopii**k / 625 for k in range(4)]
        x = [[None] * 4 for _ in range(4)]
        for k in range(4):
            p0, p1, p2, p3 = (psi[j][k] for j in range(4))
            x[0][k] = c[2] * p1
            x[1][k] = c[3] * p0
            x[2][k] = d * c[1] * p2 + mpmath.mpf(d) / 2 * c[2] * p1 - b * c[3] * p0
            x[3][k] = -d * c[0] * p3 - b * c[2] * p1 - a * c[3] * p0
        zf = to_mpf(z)
        alpha = matmul(x, transpose(base_change_ST(zf)))
        lam = mpmath.sqrt(-twopii**3)
        entries = [[w / lam for w in row] for row in alpha]
    return PeriodMatrix(z, prec, N, tail, x, alpha, lam, entries, tuple(psi))


RELATION_NAMES = ("f12", "f13", "f14", "f23", "f24", "f34")


def quadratic_relations_residual(x) -> dict:
    """The six polynomials of Phi - x^t Psi x and det(x).

    Accepts a PeriodMatrix (evaluated at its working precision) or a plain
    4x4 matrix over any scalar type.
    """
    if isinstance(x, PeriodMatrix):
        with mp.workprec(x.prec + GUARD_BITS):
            return quadratic_relations_residual(x.entries)
    (x11, x12, x13, x14), (x21, x22, x23, x24), (x31, x32, x33, x34), (x41, x42, x43, x44) = x
    return {
        "f12": x12 * x31 - x11 * x32 + x22 * x41 - x21 * x42,
        "f13": x13 * x31 - x11 * x33 + x23 * x41 - x21 * x43,
        "f14": x14 * x31 - x11 * x34 + x24 * x41 - x21 * x44 + 1,
        "f23": x13 * x32 - x12 * x33 + x23 * x42 - x22 * x43 + 1,
        "f24": x14 * x32 - x12 * x34 + x24 * x42 - x22 * x44,
        "f34": x14 * x33 - x13 * x34 + x24 * x43 - x23 * x44,
        "det": det(x),
    }


def pairing_matrix(x: Matrix) -> Matrix:
    """x^t Psi x."""
    return matmul(matmul(transpose(x), PSI), x)


def residual_tolerance(prec: int):
    return mpmath.mpf(2) ** -(prec // 2)


__all__ = [
    "PHI", "PeriodMatrix", "PrecisionError", "assemble_period_matrix", "base_change_ST",
    "pairing_matrix", "pi", "quadratic_relations_residual", "residual_tolerance", "zeta3",
]
