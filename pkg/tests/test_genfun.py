import pytest

from permpos.enumeration import iter_class_members
from permpos.genfun import (
    a_nk_recurrence,
    conjecture_check,
    f_series,
    g1_series,
    g2_series,
    g_identity_check,
    primitive_count_closed_form,
    t1k_series,
    t2k_series,
    t_ak_bruteforce,
)
from permpos.series import TruncatedSeries


class TestFSeries:
    def test_known_coefficients(self):
        assert f_series(8).integer_coeffs() == (0, 1, 2, 6, 22, 91, 408, 1938, 9614)

    def test_closed_form(self):
        assert primitive_count_closed_form(5) == 22
        assert primitive_count_closed_form(2) == 1
        with pytest.raises(ValueError):
            primitive_count_closed_form(1)

    def test_integrality_through_order_16(self):
        f_series(16).integer_coeffs()  # raises if any division is inexact


class TestRecurrence:
    def test_examples(self):
        assert a_nk_recurrence(4, 2) == 4
        assert a_nk_recurrence(4, 3) == 1
        assert a_nk_recurrence(6, 3) == 30

    def test_range_checks(self):
        with pytest.raises(ValueError):
            a_nk_recurrence(4, 1)
        with pytest.raises(ValueError):
            a_nk_recurrence(4, 4)
        with pytest.raises(ValueError):
            a_nk_recurrence(2, 2)

    def test_against_enumeration(self, tables8):
        for n in range(3, 9):
            for k in range(2, n):
                assert a_nk_recurrence(n, k) == tables8[n].count(1, k)


class TestT1k:
    def test_examples(self):
        assert t1k_series(1, 4).coeff(2) == 1
        assert t1k_series(2, 4).coeff(4) == 4
        assert t1k_series(3, 4).coeff(4) == 1

    def test_against_enumeration(self, tables8):
        for k in range(1, 8):
            s = t1k_series(k, 8)
            for n in range(1, 9):
                assert s.coeff(n) == tables8[n].count(1, k)


class TestG1:
    def test_examples(self):
        g1 = g1_series(8, 8)
        assert g1.coeff(2, 1) == 1
        assert g1.coeff(4, 2) == 4

    def test_closed_form_equals_power_sum(self):
        g1 = g1_series(8, 8)
        for k in range(1, 9):
            tk = t1k_series(k, 8)
            for n in range(9):
                assert g1.coeff(n, k) == tk.coeff(n)

    def test_full_table_matches_enumeration(self, tables8):
        g1 = g1_series(8, 8)
        for n in range(1, 9):
            for k in range(1, 9):
                assert g1.coeff(n, k) == tables8[n].count(1, k)

    def test_eval_t_one(self, tables8):
        sums = g1_series(8, 8).eval_t_one()
        for n in range(2, 9):
            assert sums.coeff(n) == sum(
                c for (a, k), c in tables8[n].counts.items() if a == 1)


class TestG2AndT2k:
    def test_examples(self, tables8):
        g2 = g2_series(8, 8)
        assert g2.coeff(3, 1) == 1
        assert g2.coeff(4, 1) == 3
        assert g2_series(7, 7).coeff(7, 3) == 60
        for n in range(1, 9):
            for k in range(1, 9):
                assert g2.coeff(n, k) == tables8[n].count(2, k)

    def test_t2k_examples(self):
        assert t2k_series(0, 4) == TruncatedSeries.monomial(2, 4)
        assert t2k_series(1, 4).coeff(3) == 1
        assert t2k_series(3, 8).coeff(7) == 60
        with pytest.raises(ValueError):
            t2k_series(-1, 4)

    def test_t2k_against_enumeration(self, tables8):
        for k in range(0, 8):
            s = t2k_series(k, 8)
            brute = t_ak_bruteforce(2, k, 8, tables8)
            assert s == brute

    def test_halving_identity(self, tables8):
        for n in range(3, 9):
            for k in range(1, n):
                lhs = 2 * tables8[n].count(2, k)
                assert lhs == (n - k) * tables8[n - 1].count(1, k)


class TestBruteForceSeries:
    def test_k_zero_convention(self, tables8):
        assert t_ak_bruteforce(1, 0, 5, tables8) == TruncatedSeries.monomial(1, 5)
        assert t_ak_bruteforce(2, 0, 5, tables8) == TruncatedSeries.monomial(2, 5)
        assert t_ak_bruteforce(3, 0, 5, tables8) == \
            TruncatedSeries.monomial(3, 5, 2)
        assert t_ak_bruteforce(4, 0, 5, tables8) == \
            TruncatedSeries.monomial(4, 5, 6)

    def test_matches_member_streams(self, tables8):
        s = t_ak_bruteforce(3, 2, 8, tables8)
        for n in range(1, 9):
            assert s.coeff(n) == sum(1 for _ in iter_class_members(n, 3, 2))

    def test_bad_arguments(self, tables8):
        with pytest.raises(ValueError):
            t_ak_bruteforce(0, 1, 8, tables8)


class TestConjectureAndGIdentity:
    def test_a1_collapses(self, tables8):
        for k in range(1, 6):
            r = conjecture_check(1, k, 8, tables8)
            assert r.passed and r.residual == []

    def test_a2_matches_proved_formula(self, tables8):
        for k in range(2, 6):
            assert conjecture_check(2, k, 8, tables8).passed

    def test_a3_small(self, tables8):
        for k in (3, 4, 5):
            r = conjecture_check(3, k, 8, tables8)
            assert r.passed

    def test_scope_errors(self, tables8):
        with pytest.raises(ValueError):
            conjecture_check(3, 2, 8, tables8)
        with pytest.raises(ValueError):
            conjecture_check(0, 1, 8, tables8)

    def test_report_serialization(self, tables8):
        r = conjecture_check(3, 3, 8, tables8)
        d = r.to_json_dict()
        assert d["identity"] == "conjecture-expansion"
        assert d["pass"] is True and d["residual"] == []
        assert "millis" in d

    def test_residual_pinpoints_failures(self, tables8):
        # corrupt one count and the residual must locate it
        import copy
        bad = copy.deepcopy(tables8)
        bad[6].counts[(3, 3)] += 1
        r = conjecture_check(3, 3, 8, bad)
        assert not r.passed
        assert any(n == 6 for n, _, _ in r.residual)

    def test_g_identity(self, tables8):
        r = g_identity_check(8, tables8)
        assert r.passed
        assert g_identity_check(4, tables8).passed


class TestIntegrality:
    def test_assembled_series_are_integral(self):
        # halves appear along the way, never in the assembled coefficients
        for k in range(0, 10):
            t2k_series(k, 11).integer_coeffs()
        g2_series(9, 9).integer_coeffs()
        g1_series(9, 9).integer_coeffs()
