from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mirrorquintic.frobenius import frobenius_components, mirror_map
from mirrorquintic.ramanujan import SeriesVector, expand
from mirrorquintic.series import TruncSeries
from mirrorquintic.yukawa import (
    IntegralityError, cubic_combination, cubic_identity_check, extract_instantons, lambert_from_cubic,
    lambert_from_instantons, lambert_from_periods, reconcile_normalization, yukawa_bracket, yukawa_data,
)

# n_3 from divisor inversion of c_3 = 8564575000: (8564575000 - 2875) / 27
FROZEN = (
    2875, 609250, 317206375, 242467530000, 229305888887625, 248249742118022000,
    295091050570845659250, 375632160937476603550000, 503840510416985243645106250,
    704288164978454686113488249750,
)


@pytest.fixture(scope="module")
def data20():
    basis = frobenius_components(20)
    return basis, mirror_map(20, basis)


def brute_force_inversion(c, D):
    """n_d by trying every divisor sum directly, with no shared state."""
    n = {}
    for d in range(1, D + 1):
        divisors = [e for e in range(1, d + 1) if d % e == 0]
        n[d] = (c[d] - sum(n[e] * e**3 for e in divisors[:-1])) // d**3
    return tuple(n[d] for d in range(1, D + 1))


class TestLambert:
    def test_first_coefficients(self, data20):
        lam = lambert_from_periods(20, *data20)
        assert lam[0] == 0
        assert lam[1] == 2875
        assert lam[2] == 2875 + 609250 * 8 == 4876875
        assert lam[3] == 8564575000

    def test_psi3_route_agrees(self, data20):
        assert lambert_from_cubic(20, *data20) == lambert_from_periods(20, *data20)

    def test_cubic_constant(self, data20):
        sigma, checks = cubic_identity_check(20, *data20)
        assert sigma == Fraction(-2, 5)
        assert all(c.passed for c in checks)

    def test_cubic_q1_coefficient(self, data20):
        # |coefficient| = (2/5) * 2875 = 1150; the sign is negative
        assert cubic_combination(20, *data20)[1] == -1150

    def test_instanton_round_trip(self, data20):
        lam = lambert_from_periods(20, *data20)
        ns = extract_instantons(lam, 20)
        assert lambert_from_instantons(ns, 20) == lam


class TestInstantons:
    def test_frozen_values(self, data20):
        assert extract_instantons(lambert_from_periods(20, *data20), 10) == FROZEN

    def test_n3_by_hand(self):
        assert (8564575000 - 2875) // 27 == FROZEN[2]
        assert (8564575000 - 2875) % 27 == 0

    def test_matches_brute_force(self, data20):
        lam = lambert_from_periods(20, *data20)
        c = [int(x) for x in lam.coeffs]
        assert extract_instantons(lam, 20) == brute_force_inversion(c, 20)

    def test_positive_through_20(self, data20):
        assert all(n > 0 for n in extract_instantons(lambert_from_periods(20, *data20), 20))

    def test_non_integral_is_fatal(self):
        bad = TruncSeries.from_coeffs("q", [0, 2875, 4876876, 0])
        with pytest.raises(IntegralityError):
            extract_instantons(bad, 3)

    def test_degree_bounds(self):
        lam = TruncSeries.from_coeffs("q", [0, 1, 9])
        with pytest.raises(ValueError):
            extract_instantons(lam, 3)
        with pytest.raises(ValueError):
            extract_instantons(lam, 0)

    @settings(max_examples=40, deadline=None)
    @given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=15))
    def test_inversion_property(self, ns):
        N = len(ns)
        assert extract_instantons(lambert_from_instantons(ns, N), N) == tuple(ns)


@pytest.fixture(scope="module")
def sv30():
    return expand(30)


class TestBracket:
    def test_constant_term(self, sv30):
        b = yukawa_bracket(sv30)
        assert b[0] == Fraction(-1, 25)
        assert 5**8 * Fraction(1, 5**5) ** 2 / (-1) ** 3 == Fraction(-1, 25)

    def test_kappa(self, sv30):
        kappa, checks = reconcile_normalization(yukawa_bracket(sv30), lambert_from_periods(30))
        assert kappa == -125
        assert checks[0].passed and "orders 0..30" in checks[0].detail
        assert "kappa = 1 does not hold" in checks[0].detail

    def test_kappa_from_period_normalization(self):
        # kappa = lam^2 (2 pi i/5)^-3 with lam the normalization of the period matrix
        import mpmath
        from mirrorquintic.periods import assemble_period_matrix, pi

        P = assemble_period_matrix(Fraction(1, 10), 128)
        with mpmath.mp.workprec(160):
            k = P.lam**2 * (2j * pi(160) / 5) ** -3
            assert abs(k + 125) < mpmath.mpf(2) ** -100

    def test_negative_control(self, sv30):
        h = list(sv30.h)
        h[4] = TruncSeries("q", h[4].coeffs[:2] + (h[4][2] + 1,) + h[4].coeffs[3:])
        kappa, checks = reconcile_normalization(yukawa_bracket(SeriesVector(tuple(h))), lambert_from_periods(30))
        assert not checks[0].passed
        assert "q^2" in checks[0].detail

    def test_yukawa_data(self, sv30):
        yd = yukawa_data(sv30, 5)
        assert yd.kappa == -125
        assert yd.instantons == FROZEN[:5]
        assert yd.bracket[1] * yd.kappa == 2875
