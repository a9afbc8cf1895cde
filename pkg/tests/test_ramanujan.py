from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from mirrorquintic.ramanujan import (
    DEGREES, DERIVED_DEGREES, T0, T1, WEIGHTS, RecursionError, SeriesVector, derived_t789, dot,
    expand, initial_data_checks, jacobian, jacobian_A0, alt_system_residuals, solve_exact,
    verify_alt_system, verify_modulispace_relations, verify_polynomial_system, vf_numerators,
)
from mirrorquintic.reference import unscaled_table

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)


@pytest.fixture(scope="module")
def sv30():
    return expand(30).with_derived()


class TestVectorField:
    def test_vanishes_at_T0(self):
        assert vf_numerators(T0) == (0,) * 7

    def test_P0_at_T0_by_hand(self):
        assert 6 * 5**4 * Fraction(1, 5) ** 5 + Fraction(1, 5) * (-6) - 0 == 0

    def test_P4_examples(self):
        assert vf_numerators((1, 0, 0, 0, 1, 1, 0))[4] == 15625
        assert vf_numerators((3, 1, 4, 1, 0, 5, 9))[4] == 0

    @settings(max_examples=30, deadline=None)
    @given(st.lists(rationals, min_size=7, max_size=7), rationals.filter(lambda k: k != 0))
    def test_weighted_homogeneity(self, t, k):
        # P_i = t5 * Ra_i with t5 of weight 3 and Ra_i of weight w_i + 1
        scaled = [k**w * x for w, x in zip(WEIGHTS, t)]
        for i, (a, b) in enumerate(zip(vf_numerators(scaled), vf_numerators(t))):
            assert a == k ** (WEIGHTS[i] + 4) * b

    @settings(max_examples=30, deadline=None)
    @given(st.lists(rationals, min_size=7, max_size=7), rationals.filter(lambda k: k != 0))
    def test_degree_homogeneity(self, t, k):
        # Ra_i has degree d_i + 1 in the grading by d, t5 has degree 11
        scaled = [k**d * x for d, x in zip(DEGREES, t)]
        for i, (a, b) in enumerate(zip(vf_numerators(scaled), vf_numerators(t))):
            assert a == k ** (DEGREES[i] + 12) * b


class TestJacobian:
    def test_hand_entries(self):
        A0 = jacobian_A0()
        assert A0[4][4] == -5
        assert A0[4][1] == 0

    def test_against_sympy(self):
        ts = sp.symbols("t0:7")
        P = vf_numerators(ts)
        at = {s: sp.Rational(v.numerator, v.denominator) for s, v in zip(ts, T0)}
        sym = [[sp.diff(P[i], ts[j]).subs(at) for j in range(7)] for i in range(7)]
        A0 = jacobian_A0()
        assert all(Fraction(str(sym[i][j])) == A0[i][j] for i in range(7) for j in range(7))

    def test_at_other_point_against_sympy(self):
        pt = tuple(Fraction(x) for x in (2, -1, 3, "1/2", 5, -3, 7))
        ts = sp.symbols("t0:7")
        P = vf_numerators(ts)
        at = {s: sp.Rational(v.numerator, v.denominator) for s, v in zip(ts, pt)}
        J = jacobian(pt)
        assert all(Fraction(str(sp.diff(P[i], ts[j]).subs(at))) == J[i][j] for i in range(7) for j in range(7))

    def test_order_one_system_is_singular(self):
        # (A0 + 5 I) T1 = 0 because h_{5,0} = -1; T1 is taken as given
        A0 = jacobian_A0()
        M = [[(-5 if i == j else 0) - A0[i][j] for j in range(7)] for i in range(7)]
        with pytest.raises(RecursionError):
            solve_exact(M, [0] * 7)

    @pytest.mark.parametrize("n", range(2, 40))
    def test_recursion_matrices_invertible(self, n):
        A0 = jacobian_A0()
        M = [[(-5 * n if i == j else 0) - A0[i][j] for j in range(7)] for i in range(7)]
        solve_exact(M, [1] * 7)


class TestExpand:
    def test_initial_columns(self):
        sv = expand(1)
        assert sv.coefficient_vector(0) == T0
        assert sv.coefficient_vector(1) == T1

    def test_initial_data_checks(self):
        assert all(c.passed for c in initial_data_checks())

    def test_table_values(self):
        sv = expand(3)
        assert sv.h[0][2] == 4200
        assert sv.h[4][3] == -41475

    def test_matches_table_through_q6(self):
        sv = expand(6).with_derived()
        for row, want in zip(sv.all(), unscaled_table()):
            assert row.coeffs == want

    def test_prefix_stability(self):
        a, b = expand(8), expand(15)
        assert all(x.coeffs == y.truncate(8).coeffs for x, y in zip(a.h, b.h))

    def test_resubstitution(self, sv30):
        assert all(c.passed for c in verify_polynomial_system(SeriesVector(sv30.h)))

    def test_rejects_order_zero(self):
        with pytest.raises(ValueError):
            expand(0)

    def test_h5_unit_and_h4_constant(self, sv30):
        assert sv30.h[5][0] != 0
        assert sv30.h[4][0] == 0


class TestDerived:
    def test_constant_terms(self, sv30):
        h7, h8, h9 = sv30.derived
        assert (h7[0], h8[0], h9[0]) == (-25, Fraction(-1, 5), -1)
        assert (h8[1], h9[1]) == (130, 170)

    def test_degrees_from_bookkeeping(self):
        # d = 3 * (g1-exponent) + 2 * (g2-exponent) under the torus part of G;
        # t7 ~ g1 g2, t8 ~ g1^2/g2, t9 ~ g1/g2
        assert DERIVED_DEGREES == (3 + 2, 6 - 2, 3 - 2)
        g2_exponents = (0, 0, 0, 0, 0, 1, 1)
        assert DEGREES == tuple(3 * w + 2 * e for w, e in zip(WEIGHTS, g2_exponents))

    def test_degree_bookkeeping_against_normalization(self):
        # t8 = 5^4 (t0^5 - t4)/t5 must carry (2 pi i/5)^(15 - 11)
        assert DERIVED_DEGREES[1] == DEGREES[4] - DEGREES[5]
        assert DERIVED_DEGREES[2] == DEGREES[3] - DEGREES[5]
        assert DERIVED_DEGREES[0] == DEGREES[3] + DEGREES[6] - DEGREES[4]

    def test_derived_requires_order(self, sv30):
        h7, h8, h9 = derived_t789(SeriesVector(sv30.h))
        assert h7 == sv30.derived[0]


class TestAltSystem:
    def test_q0_and_q1_by_hand(self, sv30):
        h0, h8, h9 = sv30.h[0], sv30.derived[1], sv30.derived[2]
        assert h8[0] - h0[0] * h9[0] == 0
        assert 5 * 1 * h0[1] == h8[1] - (h0[0] * h9[1] + h0[1] * h9[0]) == 120

    def test_all_equations_to_order_29(self, sv30):
        checks = verify_alt_system(sv30)
        assert len(checks) == 10 and all(c.passed for c in checks)
        assert all(c.detail == "orders 0..29" for c in checks)

    def test_detects_corruption(self, sv30):
        h = list(sv30.h)
        h[2] = h[2] + h[2].gen("q", 30).shift(4)
        bad = verify_alt_system(SeriesVector(tuple(h)))
        assert not all(c.passed for c in bad)

    def test_dot_is_5_theta(self):
        s = expand(3).h[0]
        assert dot(s).coeffs == tuple(5 * n * c for n, c in enumerate(s.coeffs))

    def test_residual_count(self, sv30):
        assert len(alt_system_residuals(sv30)) == 10


class TestModuliRelations:
    def test_q0_by_hand(self):
        assert (-25) * Fraction(-1, 5) - (-15) * (-1) == -10 == Fraction(3125, 125) - 35
        assert (-1) * (-1) == 1 == -3125 * Fraction(1, 625) + 6

    def test_all(self, sv30):
        assert all(c.passed for c in verify_modulispace_relations(sv30))
