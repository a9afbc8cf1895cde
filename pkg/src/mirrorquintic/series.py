"""Exact truncated power series over the rationals, and log-graded series.

A :class:`TruncSeries` stores ``c_0 .. c_N`` for one formal variable; every
binary operation truncates to the smaller order of its operands.  A
:class:`LogSeries` stores ``f_0 + L f_1 + L^2 f_2 + L^3 f_3`` with ``L = ln z~``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

VARIABLES = ("q", "ztilde", "eps")
MAX_LOG_DEGREE = 3


class SeriesError(ValueError):
    pass


def _q(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact coefficient")


def _integer_form(coeffs: Sequence[Fraction]) -> tuple[list[int], int]:
    den = lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _convolve(a: Sequence[Fraction], b: Sequence[Fraction], n: int) -> list[Fraction]:
    # integer convolution over a common denominator; one gcd per output coefficient
    ai, da = _integer_form(a[: n + 1])
    bi, db = _integer_form(b[: n + 1])
    den = da * db
    out = []
    for k in range(n + 1):
        s = 0
        for i in range(k + 1):
            x = ai[i]
            if x:
                s += x * bi[k - i]
        out.append(Fraction(s, den))
    return out


@dataclass(frozen=True)
class TruncSeries:
    var: str
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.var not in VARIABLES:
            raise SeriesError(f"unknown variable tag {self.var!r}")
        if not self.coeffs:
            raise SeriesError("a series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(_q(c) for c in self.coeffs))

    # -- construction -------------------------------------------------------
    @classmethod
    def from_coeffs(cls, var: str, coeffs: Iterable, order: int | None = None) -> "TruncSeries":
        cs = [_q(c) for c in coeffs]
        if order is not None:
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(var, tuple(cs))

    @classmethod
    def constant(cls, var: str, c, order: int) -> "TruncSeries":
        return cls.from_coeffs(var, [c], order)

    @classmethod
    def zero(cls, var: str, order: int) -> "TruncSeries":
        return cls.constant(var, 0, order)

    @classmethod
    def gen(cls, var: str, order: int) -> "TruncSeries":
        """The series ``x`` itself (order >= 1)."""
        return cls.from_coeffs(var, [0, 1], order)

    # -- basic accessors ----------------------------------------------------
    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "TruncSeries":
        if order > self.order:
            raise SeriesError("truncate cannot extend precision")
        return TruncSeries(self.var, self.coeffs[: order + 1])

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "TruncSeries") -> int:
        if self.var != other.var:
            raise SeriesError(f"variable mismatch: {self.var} vs {other.var}")
        return min(self.order, other.order)

    def _coerce(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return other
        return TruncSeries.constant(self.var, _q(other), self.order)

    def __add__(self, other):
        other = self._coerce(other)
        n = self._check(other)
        return TruncSeries(self.var, tuple(a + b for a, b in zip(self.coeffs[: n + 1], other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(self.var, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> "TruncSeries":
        c = _q(c)
        return TruncSeries(self.var, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            return self.scale(other)
        n = self._check(other)
        return TruncSeries(self.var, tuple(_convolve(self.coeffs, other.coeffs, n)))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = TruncSeries.constant(self.var, 1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "TruncSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise SeriesError("series with zero constant term is not invertible")
        n = self.order
        ai, da = _integer_form(self.coeffs)
        # b = 1/a with a = ai/da:  b_k = -(sum_{i>=1} a_i b_{k-i}) / a_0
        out = [Fraction(da, ai[0])]
        for k in range(1, n + 1):
            s = sum((ai[i] * out[k - i] for i in range(1, k + 1) if ai[i]), Fraction(0))
            out.append(-s / ai[0])
        return TruncSeries(self.var, tuple(out))

    def __truediv__(self, other):
        if not isinstance(other, TruncSeries):
            c = _q(other)
            if c == 0:
                raise ZeroDivisionError("division of a series by zero")
            return self.scale(1 / c)
        self._check(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.var == other.var and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.var, self.coeffs))

    # -- calculus -----------------------------------------------------------
    def theta(self) -> "TruncSeries":
        """``x d/dx``: ``c_n -> n c_n``."""
        return TruncSeries(self.var, tuple(n * c for n, c in enumerate(self.coeffs)))

    def shift(self, k: int = 1) -> "TruncSeries":
        """Multiply by ``x**k``, keeping the order."""
        if k == 0:
            return self
        return TruncSeries(self.var, (Fraction(0),) * k + self.coeffs[: len(self.coeffs) - k])

    def exp(self) -> "TruncSeries":
        """exp of a series with zero constant term, via ``theta(E) = theta(f) E``."""
        if self.coeffs[0] != 0:
            raise SeriesError("exp needs a zero constant term to stay rational")
        n = self.order
        tf = self.theta().coeffs
        e = [Fraction(1)]
        for k in range(1, n + 1):
            e.append(sum((tf[i] * e[k - i] for i in range(1, k + 1) if tf[i]), Fraction(0)) / k)
        return TruncSeries(self.var, tuple(e))

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """``self(inner(y))``; the result lives in ``inner``'s variable."""
        if inner.coeffs[0] != 0:
            raise SeriesError("inner series of a composition must have zero constant term")
        n = min(self.order, inner.order)
        result = TruncSeries.constant(inner.var, self.coeffs[n], n)
        inner = inner.truncate(n)
        for c in reversed(self.coeffs[:n]):
            result = result * inner + c
        return result

    def revert(self) -> "TruncSeries":
        """Compositional inverse of ``c_1 x + O(x^2)`` by Lagrange inversion."""
        if self.valuation() != 1:
            raise SeriesError("reversion needs valuation exactly 1")
        n = self.order
        # phi = x / f(x), then [x^k] g = [x^{k-1}] phi^k / k
        phi = TruncSeries(self.var, self.coeffs[1:] + (Fraction(0),)).truncate(n - 1).inverse()
        out = [Fraction(0)]
        power = TruncSeries.constant(self.var, 1, n - 1)
        for k in range(1, n + 1):
            power = power * phi
            out.append(power.coeffs[k - 1] / k)
        return TruncSeries(self.var, tuple(out))

    def __call__(self, x):
        """Horner evaluation at a number (any type supporting + and *)."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- serialization ------------------------------------------------------
    def to_dict(self) -> dict:
        return {"var": self.var, "order": self.order, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_dict(cls, d: dict) -> "TruncSeries":
        coeffs = [Fraction(s) for s in d["coeffs"]]
        if len(coeffs) != d["order"] + 1:
            raise SeriesError("coefficient count does not match order")
        return cls(d["var"], tuple(coeffs))

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, s: str) -> "TruncSeries":
        return cls.from_dict(json.loads(s))

    def __repr__(self):
        terms = ", ".join(str(c) for c in self.coeffs[:6])
        more = ", ..." if self.order > 5 else ""
        return f"TruncSeries({self.var}, order={self.order}, [{terms}{more}])"


# functional spellings
def ts_add(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a + b


def ts_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a * b


def ts_div(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    return a / b


def ts_compose(outer: TruncSeries, inner: TruncSeries) -> TruncSeries:
    return outer.compose(inner)


def ts_revert(s: TruncSeries) -> TruncSeries:
    return s.revert()


def ts_theta(s: TruncSeries) -> TruncSeries:
    return s.theta()


@dataclass(frozen=True)
class LogSeries:
    """``sum_k L^k f_k`` with ``L = ln z~`` and ``k <= 3``."""

    parts: tuple[TruncSeries, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if not 1 <= len(parts) <= MAX_LOG_DEGREE + 1:
            raise SeriesError("a log-series has between 1 and 4 components")
        var, order = parts[0].var, parts[0].order
        if any(p.var != var for p in parts):
            raise SeriesError("log-series components must share a variable")
        order = min(p.order for p in parts)
        parts = tuple(p.truncate(order) for p in parts)
        parts = parts + (TruncSeries.zero(var, order),) * (MAX_LOG_DEGREE + 1 - len(parts))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: TruncSeries) -> "LogSeries":
        return cls(tuple(parts))

    @property
    def var(self) -> str:
        return self.parts[0].var

    @property
    def order(self) -> int:
        return self.parts[0].order

    def __getitem__(self, k: int) -> TruncSeries:
        return self.parts[k]

    def is_log_free(self) -> bool:
        return all(p.is_zero() for p in self.parts[1:])

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.parts)

    def __add__(self, other):
        if not isinstance(other, LogSeries):
            other = LogSeries.of(self.parts[0]._coerce(other))
        return LogSeries(tuple(a + b for a, b in zip(self.parts, other.parts)))

    __radd__ = __add__

    def __neg__(self):
        return LogSeries(tuple(-p for p in self.parts))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            return LogSeries(tuple(p * other for p in self.parts))
        if not isinstance(other, LogSeries):
            return LogSeries(tuple(p.scale(other) for p in self.parts))
        order = min(self.order, other.order)
        out = [TruncSeries.zero(self.var, order) for _ in range(2 * MAX_LOG_DEGREE + 1)]
        for i, a in enumerate(self.parts):
            if a.is_zero():
                continue
            for j, b in enumerate(other.parts):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        if any(not p.is_zero() for p in out[MAX_LOG_DEGREE + 1:]):
            raise SeriesError("product exceeds log-degree 3")
        return LogSeries(tuple(out[: MAX_LOG_DEGREE + 1]))

    __rmul__ = __mul__

    def theta(self) -> "LogSeries":
        """theta(L^k f) = k L^(k-1) f + L^k theta(f), using theta(L) = 1."""
        out = []
        for k in range(MAX_LOG_DEGREE + 1):
            term = self.parts[k].theta()
            if k < MAX_LOG_DEGREE:
                term = term + self.parts[k + 1].scale(k + 1)
            out.append(term)
        return LogSeries(tuple(out))

    def shift(self, k: int = 1) -> "LogSeries":
        return LogSeries(tuple(p.shift(k) for p in self.parts))

    def log_free_part(self) -> TruncSeries:
        if not self.is_log_free():
            raise SeriesError("series carries residual log terms")
        return self.parts[0]

    def __call__(self, x, log_x):
        acc = 0
        for p in reversed(self.parts):
            acc = acc * log_x + p(x)
        return acc


def ls_mul(a: LogSeries, b: LogSeries) -> LogSeries:
    return a * b


def ls_theta(a: LogSeries) -> LogSeries:
    return a.theta()
