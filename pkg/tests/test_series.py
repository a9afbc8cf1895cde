from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirrorquintic.series import (
    LogSeries, SeriesError, TruncSeries, ls_mul, ls_theta, ts_add, ts_compose, ts_div, ts_mul,
    ts_revert, ts_theta,
)

rationals = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def series(var="q", order=None, valuation=0, unit=False):
    order_st = st.just(order) if order is not None else st.integers(3, 12)

    @st.composite
    def build(draw):
        n = draw(order_st)
        cs = draw(st.lists(rationals, min_size=n + 1, max_size=n + 1))
        cs[:valuation] = [Fraction(0)] * valuation
        if unit or valuation:
            lead = draw(rationals.filter(lambda x: x != 0))
            cs[valuation] = lead
        return TruncSeries(var, tuple(cs))

    return build()


def q(*cs, order=None):
    return TruncSeries.from_coeffs("q", cs, order)


def brute_force_revert(s: TruncSeries) -> TruncSeries:
    """Solve s(r(x)) = x one coefficient at a time by direct substitution."""
    N = s.order
    r = [Fraction(0), 1 / s[1]] + [Fraction(0)] * (N - 1)
    for n in range(2, N + 1):
        comp = s.compose(TruncSeries("q", tuple(r)))
        r[n] = -comp[n] / s[1]
    return TruncSeries("q", tuple(r))


class TestTrivialExamples:
    def test_difference_of_squares(self):
        assert ts_mul(q(1, 1, order=4), q(1, -1, order=4)) == q(1, 0, -1, order=4)

    def test_self_division(self):
        a = q(3, -2, 7, 5)
        assert ts_div(a, a) == q(1, order=3)

    def test_geometric_series(self):
        assert 1 / q(1, -1, order=6) == q(*[1] * 7)

    def test_compose_identity_outer(self):
        s = q(0, 2, -3, 5)
        assert ts_compose(q(0, 1, order=3), s) == s

    def test_compose_polynomial_outer(self):
        assert ts_compose(TruncSeries.from_coeffs("ztilde", [1, 1, 1]), q(0, 1, order=2)) == q(1, 1, 1)

    def test_revert_generator_and_linear(self):
        assert ts_revert(q(0, 1, order=5)) == q(0, 1, order=5)
        assert ts_revert(q(0, 2, order=5)) == q(0, Fraction(1, 2), order=5)

    def test_revert_derived_example(self):
        r = ts_revert(q(0, 1, -770, order=2))
        assert r == q(0, 1, 770)

    def test_theta_examples(self):
        assert ts_theta(q(1, order=3)) == q(0, order=3)
        assert ts_theta(q(0, 1, order=3)) == q(0, 1, order=3)
        assert ts_theta(q(0, 0, 0, 1)) == q(0, 0, 0, 3)

    def test_log_examples(self):
        one = TruncSeries.constant("ztilde", 1, 4)
        L = LogSeries.of(0 * one, one)
        assert ls_theta(L) == LogSeries.of(one)
        assert ls_theta(L * L) == LogSeries.of(0 * one, 2 * one)
        assert ls_mul(L, L) == LogSeries.of(0 * one, 0 * one, one)


class TestErrors:
    def test_tag_mismatch(self):
        with pytest.raises(SeriesError):
            ts_add(q(1, 2), TruncSeries.from_coeffs("ztilde", [1, 2]))

    def test_division_by_nonunit(self):
        with pytest.raises(SeriesError):
            q(1, 2) / q(0, 1)

    def test_compose_nonzero_constant(self):
        with pytest.raises(SeriesError):
            q(1, 2).compose(q(1, 1))

    def test_revert_bad_valuation(self):
        with pytest.raises(SeriesError):
            q(0, 0, 1).revert()
        with pytest.raises(SeriesError):
            q(1, 1).revert()

    def test_log_degree_overflow(self):
        one = TruncSeries.constant("ztilde", 1, 3)
        L2 = LogSeries.of(0 * one, 0 * one, one)
        with pytest.raises(SeriesError):
            L2 * L2

    def test_truncate_cannot_extend(self):
        with pytest.raises(SeriesError):
            q(1, 2).truncate(5)

    def test_float_coefficients_rejected(self):
        with pytest.raises(TypeError):
            q(0.5, 1)


def test_order_propagation():
    assert (q(1, 2, 3, 4) * q(1, 1)).order == 1
    assert (q(1, 2, 3, 4) + q(1, 1, 1)).order == 2


def test_json_round_trip():
    s = q(Fraction(1, 3), -7, Fraction(22, 5))
    d = s.to_dict()
    assert d == {"var": "q", "order": 2, "coeffs": ["1/3", "-7", "22/5"]}
    assert TruncSeries.from_json(s.to_json()) == s


def test_exp_matches_definition():
    # exp(x) coefficients are 1/n!
    from math import factorial
    e = q(0, 1, order=8).exp()
    assert e == q(*[Fraction(1, factorial(n)) for n in range(9)])


@settings(max_examples=40, deadline=None)
@given(series(order=20), series(order=20), series(order=20))
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) - b == a


@settings(max_examples=30, deadline=None)
@given(series(order=10), series(order=10, unit=True))
def test_division_inverts_multiplication(a, b):
    assert (a / b) * b == a


@settings(max_examples=50, deadline=None)
@given(series(valuation=1))
def test_revert_round_trip(s):
    x = TruncSeries.gen("q", s.order)
    r = ts_revert(s)
    assert ts_compose(s, r) == x
    assert ts_compose(r, s) == x


@settings(max_examples=15, deadline=None)
@given(series(order=7, valuation=1))
def test_revert_matches_brute_force(s):
    assert ts_revert(s) == brute_force_revert(s)


@st.composite
def log_series(draw, max_degree=1):
    n = 6
    parts = [draw(series("ztilde", order=n)) for _ in range(max_degree + 1)]
    return LogSeries(tuple(parts))


@settings(max_examples=40, deadline=None)
@given(log_series(), log_series())
def test_ls_theta_is_derivation(a, b):
    assert ls_theta(a * b) == ls_theta(a) * b + a * ls_theta(b)


@settings(max_examples=30, deadline=None)
@given(series("ztilde", order=8), st.integers(0, 3))
def test_ls_theta_on_monomial_log(f, k):
    L = [TruncSeries.zero("ztilde", 8)] * 4
    L[k] = f
    got = ls_theta(LogSeries(tuple(L)))
    want = [TruncSeries.zero("ztilde", 8)] * 4
    want[k] = f.theta()
    if k:
        want[k - 1] = f.scale(k)
    assert got == LogSeries(tuple(want))


def test_log_series_evaluation():
    import mpmath
    f = TruncSeries.from_coeffs("ztilde", [1, 2])
    s = LogSeries.of(f, f)
    x = mpmath.mpf("0.01")
    assert abs(s(x, mpmath.log(x)) - (1 + 0.02) * (1 + mpmath.log(x))) < 1e-12
