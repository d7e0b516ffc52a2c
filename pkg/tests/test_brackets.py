from fractions import Fraction

import pytest

from hooklab.brackets import (
    q_bracket,
    verify_exp_identity,
    verify_han,
    verify_han_bracket_form,
    verify_nekrasov_okounkov,
    verify_size_bracket,
    verify_theorem1,
    weighted_sum,
)
from hooklab.brackets import _compare
from hooklab.partitions import (
    EnumerationCapError,
    constant_statistic,
    enumerate_partitions,
    f_t_statistic,
    size_statistic,
    PartitionStatistic,
)
from hooklab.qseries import euler_product, lambert_series, sigma_series
from hooklab.rational import Rat


class TestWeightedSum:
    def test_H1_paper_coefficients(self):
        got = weighted_sum(f_t_statistic(1), 4)
        assert got.coeffs == (0, 1, Rat(5, 2), Rat(29, 6), Rat(109, 12))

    def test_H2_paper_coefficients(self):
        got = weighted_sum(f_t_statistic(2), 5)
        assert got.coeffs == (0, 0, 1, 1, Rat(7, 2), Rat(9, 2))

    def test_constant_counts_partitions(self):
        got = weighted_sum(constant_statistic(1), 10)
        for n in range(11):
            assert got.coeffs[n] == len(enumerate_partitions(n))

    def test_cap_enforced(self):
        with pytest.raises(EnumerationCapError):
            weighted_sum(size_statistic(), 30, cap=20)


class TestQBracket:
    def test_size_is_sigma1(self):
        assert q_bracket(size_statistic(), 20).coeffs \
            == sigma_series(1, 20).coeffs

    def test_f1_is_sigma_minus_one(self):
        got = q_bracket(f_t_statistic(1), 12)
        assert got.coeffs == sigma_series(-1, 12).coeffs

    def test_bracket_of_constant(self):
        c = Fraction(7, 3)
        got = q_bracket(constant_statistic(c), 15)
        assert got.coeffs[0] == c
        assert all(x == 0 for x in got.coeffs[1:])

    def test_bracket_of_one_at_every_order(self):
        for order in (0, 1, 5, 17):
            got = q_bracket(constant_statistic(1), order)
            assert got.coeffs[0] == 1
            assert all(x == 0 for x in got.coeffs[1:])

    def test_linearity(self):
        a, b = Fraction(3, 7), Fraction(-5, 2)
        f, g = size_statistic(), f_t_statistic(2)
        combo = PartitionStatistic(
            "combo", (Rat(a.numerator, a.denominator),),
            lambda lam: Rat(a) * f.evaluate(lam) + Rat(b) * g.evaluate(lam))
        lhs = q_bracket(combo, 25)
        rhs = Rat(a) * q_bracket(f, 25) + Rat(b) * q_bracket(g, 25)
        assert lhs.coeffs == rhs.coeffs


class TestTheorem1:
    @pytest.mark.parametrize("t", [1, 2, 3, 5])
    def test_passes(self, t):
        rep = verify_theorem1(t, 20)
        assert rep.equal
        assert rep.first_discrepancy is None

    def test_rhs_shape_t2(self):
        rep = verify_theorem1(2, 16)
        assert all(rep.rhs.coeffs[n] == 0 for n in range(1, 17, 2))
        assert rep.rhs.coeffs == sigma_series(-1, 16).substitute_qt(2).coeffs

    def test_first_order_in_w_consistency(self):
        # the w-linear coefficient of Han's left side is -H_t; matching
        # the right side's w-derivative gives
        # H_t = (prod 1/(1-q^n)) * sum q^{tn}/(n(1-q^{tn}))
        for t in (1, 2, 3):
            lhs = weighted_sum(f_t_statistic(t), 25)
            rhs = euler_product(25).invert() * lambert_series(t, 25)
            assert lhs.coeffs == rhs.coeffs


class TestHan:
    @pytest.mark.parametrize("t,y,w", [
        (1, 1, 0),
        (2, Fraction(1, 3), 2),
        (2, 1, Fraction(1, 2)),
        (3, 2, 1),
    ])
    def test_passes(self, t, y, w):
        assert verify_han(t, y, w, 15).equal

    def test_trivial_specialization_counts_partitions(self):
        rep = verify_han(1, 1, 0, 12)
        assert rep.equal
        assert rep.lhs.coeffs == euler_product(12).invert().coeffs

    def test_w0_counts_t_hook_multiplicities(self):
        # at w=0 the left side weights each partition by y^{#t-hooks}
        from hooklab.partitions import hook_multiset, iter_partitions
        for t, y in [(1, Fraction(2)), (2, Fraction(1, 2)), (3, 1)]:
            rep = verify_han(t, y, 0, 12)
            assert rep.equal
            for n in range(13):
                expected = sum(
                    (Rat(y) ** len(hook_multiset(lam, t))
                     for lam in iter_partitions(n)), Rat(0))
                assert rep.lhs.coeffs[n] == expected

    def test_y0_counts_t_cores(self):
        from hooklab.partitions import hook_multiset, iter_partitions
        rep = verify_han(2, 0, 3, 12)
        assert rep.equal
        for n in range(13):
            cores = sum(1 for lam in iter_partitions(n)
                        if len(hook_multiset(lam, 2)) == 0)
            assert rep.lhs.coeffs[n] == cores

    def test_bracket_form(self):
        assert verify_han_bracket_form(2, Fraction(1, 3), 2, 12).equal
        assert verify_han_bracket_form(3, 1, Fraction(5, 4), 10).equal


class TestNekrasovOkounkov:
    def test_s_zero(self):
        rep = verify_nekrasov_okounkov(0, 10)
        assert rep.equal
        assert rep.lhs.coeffs[0] == 1 and all(c == 0 for c in rep.lhs.coeffs[1:])

    @pytest.mark.parametrize("s", [-2, -1, 1, 2, 3, Fraction(1, 2)])
    def test_passes(self, s):
        assert verify_nekrasov_okounkov(s, 14).equal

    def test_offsets_recorded(self):
        rep = verify_nekrasov_okounkov(2, 8)
        assert rep.lhs.q_offset == 0 and rep.rhs.q_offset == 0
        assert "s/24" in rep.note


class TestSizeAndExp:
    def test_size_bracket(self):
        rep = verify_size_bracket(25)
        assert rep.equal
        assert rep.rhs.coeffs[1:5] == (1, 3, 4, 7)

    def test_exp_identity_order0(self):
        rep = verify_exp_identity(0)
        assert rep.equal and rep.lhs.coeffs == (1,)

    def test_exp_identity_gives_partition_numbers(self):
        rep = verify_exp_identity(10)
        assert rep.equal
        for n in range(11):
            assert rep.lhs.coeffs[n] == len(enumerate_partitions(n))

    def test_exp_identity_order_100(self):
        assert verify_exp_identity(100).equal


class TestReporting:
    def test_first_discrepancy(self):
        stat = constant_statistic(1)
        a = sigma_series(1, 8)
        b = sigma_series(-1, 8)
        rep = _compare(stat, a, b)
        assert not rep.equal
        assert rep.first_discrepancy == (2, Rat(3), Rat(3, 2))

    def test_json_shape(self):
        rep = verify_theorem1(2, 6)
        obj = rep.to_json()
        assert obj["equal"] is True
        assert obj["first_discrepancy"] is None
        assert obj["statistic"]["name"] == "f_2"
        assert obj["lhs"]["order"] == 6
        assert obj["rhs"]["coeffs"][2] == ["1", "1"]
