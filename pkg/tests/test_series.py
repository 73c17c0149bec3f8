from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from permpos.permutations import DomainError
from permpos.series import BivariateSeries, TruncatedSeries

F = Fraction

small_fracs = st.fractions(min_value=-4, max_value=4, max_denominator=6)


def series(coeffs, order=None):
    return TruncatedSeries.from_coeffs(coeffs, order)


series_strategy = st.lists(small_fracs, min_size=1, max_size=8).map(series)


class TestUnivariate:
    def test_mul_example(self):
        s = series([0, 1, 2], 3)      # x + 2x^2
        x = TruncatedSeries.monomial(1, 3)
        assert (s * x).coeffs == (F(0), F(0), F(1), F(2))

    def test_pow(self):
        f = series([0, 1, 2, 6], 5)
        assert f ** 1 == f
        assert (f ** 0) == TruncatedSeries.one(5)
        assert (f ** 3).coeff(5) == 30  # (x + 2x^2 + 6x^3)^3
        with pytest.raises(ValueError):
            f ** -1

    def test_order_mixing_truncates_to_min(self):
        a = series([1, 1, 1], 2)
        b = series([1, 1, 1, 1, 1], 4)
        assert (a + b).order == 2
        assert (a * b).order == 2

    def test_dx(self):
        assert TruncatedSeries.monomial(3, 4).dx() == \
            TruncatedSeries.monomial(2, 3, 3)
        s = series([0, 1, 1], 2)  # x + x^2 (stands in for x*f at low order)
        assert s.dx().coeff(1) == 2
        assert series([5], 0).dx() == TruncatedSeries.zero(0)

    def test_shift(self):
        s = series([1, 2], 1)
        assert s.shift(2).coeffs == (F(0), F(0), F(1), F(2))
        assert s.shift(2).order == 3

    def test_geometric_inverse(self):
        x = TruncatedSeries.monomial(1, 3)
        assert x.geometric_inverse().coeffs == (F(1), F(1), F(1), F(1))
        assert TruncatedSeries.zero(4).geometric_inverse() == TruncatedSeries.one(4)
        u = series([0, 1, 2, 6, 22], 4)
        prod = (TruncatedSeries.one(4) - u) * u.geometric_inverse()
        assert prod == TruncatedSeries.one(4)
        with pytest.raises(DomainError):
            TruncatedSeries.one(3).geometric_inverse()

    def test_integer_extraction(self):
        assert series([1, 2], 1).integer_coeffs() == (1, 2)
        with pytest.raises(DomainError):
            series([F(1, 2)], 0).integer_coeffs()

    def test_coeff_bounds(self):
        with pytest.raises(ValueError):
            series([1], 0).coeff(1)

    def test_text_form(self):
        s = series([F(1, 2), 0, 3], 2)
        assert s.to_text() == "1/2 + 0*x + 3*x^2"

    @given(series_strategy, series_strategy, series_strategy)
    def test_ring_laws(self, a, b, c):
        order = min(a.order, b.order, c.order)
        a, b, c = a.truncate(order), b.truncate(order), c.truncate(order)
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c

    @given(series_strategy, series_strategy)
    def test_dx_is_a_derivation(self, a, b):
        order = min(a.order, b.order)
        a, b = a.truncate(order), b.truncate(order)
        lhs = (a * b).dx()
        rhs = a.dx() * b.truncate(max(order - 1, 0)) + \
            a.truncate(max(order - 1, 0)) * b.dx()
        assert lhs == rhs


class TestBivariate:
    def test_eval_t_one(self):
        b = BivariateSeries.from_rows([[0, 0, 0], [0, 1, 0], [0, 0, 1]], 2, 2)
        assert b.eval_t_one().coeffs == (F(0), F(1), F(1))  # tx + t^2 x^2
        flat = BivariateSeries.from_univariate(series([1, 2, 3], 2), 0)
        assert flat.eval_t_one() == series([1, 2, 3], 2)

    def test_dt_and_shifts(self):
        b = BivariateSeries.from_rows([[0, 0, 2]], 0, 2)  # 2 t^2
        assert b.dt().coeff(0, 1) == 4
        assert b.shift_x(1).xorder == 1
        assert b.shift_t(1).coeff(0, 3) == 2
        t2x = BivariateSeries.from_rows([[0, 0, 0], [0, 0, 1]], 1, 2)
        assert t2x.dt() == BivariateSeries.from_rows([[0, 0], [0, 2]], 1, 1)

    def test_mul_matches_univariate_embedding(self):
        s1 = series([0, 1, 2], 4)
        s2 = series([1, 1], 4)
        b1 = BivariateSeries.from_univariate(s1, 2)
        b2 = BivariateSeries.from_univariate(s2.truncate(4), 2)
        prod = b1 * b2
        flat = s1 * s2
        for n in range(5):
            assert prod.coeff(n, 0) == flat.coeff(n)
            assert prod.coeff(n, 1) == 0

    def test_geometric_inverse_identity(self):
        f = series([0, 1, 2, 6, 22, 91, 408, 1938, 9614], 8)
        u = BivariateSeries.from_univariate(f, 8).shift_t(1).truncate(8, 8)
        one = BivariateSeries.from_rows([[1]], 8, 8)
        assert (one - u) * u.geometric_inverse() == one
        with pytest.raises(DomainError):
            one.geometric_inverse()

    def test_integer_extraction(self):
        b = BivariateSeries.from_rows([[F(1, 2)]], 0, 0)
        with pytest.raises(DomainError):
            b.integer_coeffs()

    def test_csv_form(self):
        b = BivariateSeries.from_rows([[1, 0], [0, 2]], 1, 1)
        assert b.to_csv() == "n\\k,0,1\n0,1,0\n1,0,2\n"
