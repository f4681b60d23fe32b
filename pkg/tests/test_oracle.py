import math
from fractions import Fraction

import pytest

from carpetdim.carpet import ProbVector, uniform_vectors
from carpetdim.dimensions import box_dim, hausdorff_dim
from carpetdim.errors import (DomainError, InvalidMeasure, RegimeError,
                              RegimeMismatch, WordTooShort)
from carpetdim.oracle import (MeasureSpec, SquareId, all_squares,
                              cover_cost_log, empirical_rate, expected_log_nu,
                              fibre_count, floor_quotient, good_bad_counts,
                              level_L, log_nu_cylinder, nu_cylinder, nu_square,
                              squares_within)
from carpetdim.rate import RateFunction
from carpetdim.upper import solve_delta0, upper_bound


class TestLevelL:
    def test_small_cases(self, e1):
        assert level_L(e1, 10) == 6
        assert level_L(e1, 1) == 0

    def test_other_base(self):
        from carpetdim.carpet import carpet_from_dict
        carpet = carpet_from_dict(
            {"m": 4, "n": 16, "digits": [[0, 0], [1, 5], [3, 12]]})
        assert level_L(carpet, 7) == 3

    def test_defining_inequality(self, e1, fig3_left):
        for carpet in (e1, fig3_left):
            for K in range(1, 200):
                l = level_L(carpet, K)
                assert carpet.n ** l <= carpet.m ** K
                assert carpet.n ** (l + 1) > carpet.m ** K

    def test_matches_float_floor_away_from_ties(self, e1):
        for K in list(range(1, 1001)) + [10 ** 5, 10 ** 6]:
            q = K * e1.r
            if abs(q - round(q)) < 1e-9:
                continue
            assert level_L(e1, K) == math.floor(q)

    def test_rejects_nonpositive(self, e1):
        with pytest.raises(DomainError):
            level_L(e1, 0)


class TestFloorQuotient:
    def test_exact_fraction(self):
        assert floor_quotient(10, Fraction(2, 3)) == 15
        assert floor_quotient(7, Fraction(7, 10)) == 10

    def test_float_nudge(self):
        # 3/0.3 = 9.999999999999998 in binary; the nudge recovers 10
        assert floor_quotient(3, 0.3) == 10
        assert floor_quotient(10, 0.75) == 13


class TestFibreCount:
    def test_products(self, e1):
        assert fibre_count(e1, SquareId(3, (1,), (1, 2))) == 2
        assert fibre_count(e1, SquareId(3, (2,), (1, 1))) == 4
        assert fibre_count(e1, SquareId(3, (3,), (2, 2))) == 1

    def test_shape_checked(self, e1):
        with pytest.raises(RegimeMismatch):
            fibre_count(e1, SquareId(3, (1, 2), (1,)))


class TestSquaresWithin:
    def test_nested_regime_formula(self, e1):
        assert squares_within(e1, 4, 6, (1,)) == 8

    def test_nested_regime_by_enumeration(self, e1):
        # parent: level-4 square, prefix (1,2), columns (1,2)
        hits = 0
        for sq in all_squares(e1, 6):
            if (sq.prefix[:2] == (1, 2) and e1.phi[sq.prefix[2] - 1] == 1
                    and sq.columns[0] == 2):
                hits += 1
        assert hits == squares_within(e1, 4, 6, (1,)) == 8

    def test_base_regime_formula(self, e1):
        assert squares_within(e1, 3, 8, (1, 1)) == 288

    def test_base_regime_by_enumeration(self, e1):
        # parent: level-3 square, prefix (1,), columns (1,1)
        hits = 0
        for sq in all_squares(e1, 8):
            if (sq.prefix[0] == 1 and e1.phi[sq.prefix[1] - 1] == 1
                    and e1.phi[sq.prefix[2] - 1] == 1):
                hits += 1
        assert hits == squares_within(e1, 3, 8, (1, 1)) == 288

    def test_total_square_count(self, e1):
        assert sum(1 for _ in all_squares(e1, 6)) == 3 ** 3 * 2 ** 3

    def test_window_length_checked(self, e1):
        with pytest.raises(RegimeMismatch):
            squares_within(e1, 4, 6, (1, 2))
        with pytest.raises(RegimeMismatch):
            squares_within(e1, 6, 4, ())


class TestGoodBad:
    def test_small_window_exact(self, e1):
        # K=10, theta=2/3: floor(K/theta)=15, window W = L(15)-L(10) = 3,
        # threshold c - 0.05; 4 of the 8 window sequences are bad
        rep = good_bad_counts(e1, 10, Fraction(2, 3), 0.05)
        assert rep.window == 3
        assert rep.bad_exact == 3 ** 6 * 2 * 4
        assert rep.good_exact + rep.bad_exact == 3 ** 6 * 2 ** 4

    def test_float_theta_agrees(self, e1):
        a = good_bad_counts(e1, 10, Fraction(2, 3), 0.05)
        b = good_bad_counts(e1, 10, 2 / 3, 0.05)
        assert (a.bad_exact, a.good_exact) == (b.bad_exact, b.good_exact)

    def test_good_empty_when_threshold_below_min(self, e1):
        rep = good_bad_counts(e1, 10, Fraction(2, 3), e1.c + 0.1)
        assert rep.good_exact == 0
        assert rep.bad_exact == 3 ** 6 * 2 ** 4

    def test_uniform_fibres_all_bad(self, uniform23):
        rep = good_bad_counts(uniform23, 10, 0.7, 0.01)
        assert rep.good_exact == 0
        assert rep.bad_exact > 0

    def test_log_partition_identity_large_window(self, e1):
        rep = good_bad_counts(e1, 100, 0.75, solve_delta0(e1, 0.75).delta0)
        combined = math.log10(10 ** (rep.log10_good - rep.log10_total)
                              + 10 ** (rep.log10_bad - rep.log10_total))
        assert combined == pytest.approx(0.0, abs=1e-9)

    def test_exact_and_log_paths_agree(self, e1):
        rep = good_bad_counts(e1, 10, Fraction(2, 3), 0.05)
        assert rep.log10_bad == pytest.approx(
            math.log10(rep.bad_exact), abs=1e-9)
        assert rep.log10_good == pytest.approx(
            math.log10(rep.good_exact), abs=1e-9)

    def test_regime_errors(self, e1):
        with pytest.raises(RegimeError):
            good_bad_counts(e1, 10, 0.5, 0.05)

    def test_bad_exponent_converges(self, e1):
        theta = 0.75
        d0 = solve_delta0(e1, theta).delta0
        gaps = []
        for K in (100, 200, 400):
            rep = good_bad_counts(e1, K, theta, d0)
            gaps.append(abs(rep.bad_exponent - rep.asymptotic_bad_exponent))
        assert gaps[2] <= 0.01
        assert gaps[0] > gaps[1] > gaps[2]

    def test_asymptote_formula(self, e1):
        theta = 0.75
        d0 = solve_delta0(e1, theta).delta0
        rep = good_bad_counts(e1, 128, theta, d0)
        rf = RateFunction(e1)
        expected = box_dim(e1) - rf(e1.c - d0) * (1 / theta - 1) / e1.logn
        assert rep.asymptotic_bad_exponent == pytest.approx(expected, abs=1e-12)


class TestCoverCost:
    def test_single_scale_limit(self, e1):
        # with a vanishing margin everything is bad and the cost at the box
        # exponent is N^{L(K)} M^{K-L(K)} m^{-K box}, which stays O(1)
        for K in (16, 32, 64):
            rep = cover_cost_log(e1, K, 0.75, 1e-9, box_dim(e1))
            assert abs(rep.log10_cost_total) < 1.0

    def test_decay_above_bound(self, e1):
        theta = 0.75
        d0 = solve_delta0(e1, theta).delta0
        s = upper_bound(e1, theta) + 0.02
        costs = [cover_cost_log(e1, K, theta, d0, s).log10_cost_total
                 for K in (64, 128, 256)]
        assert costs[0] > costs[1] > costs[2]

    def test_growth_below_bound(self, e1):
        theta = 0.75
        d0 = solve_delta0(e1, theta).delta0
        s = upper_bound(e1, theta) - 0.02
        costs = [cover_cost_log(e1, K, theta, d0, s).log10_cost_total
                 for K in (64, 128, 256)]
        assert costs[0] < costs[1] < costs[2]


class TestEmpiricalRate:
    def test_small_tail(self, e1):
        assert empirical_rate(e1, 3, 0.355465) == pytest.approx(
            math.log(2) / 3, abs=1e-12)

    def test_endpoint_single_draw(self, e1):
        assert empirical_rate(e1, 1, math.log(2)) == pytest.approx(
            math.log(2), abs=1e-12)

    def test_decreasing_toward_rate(self, e1):
        target = RateFunction(e1)(0.38)
        vals = [empirical_rate(e1, ell, 0.38) for ell in (10, 20, 40)]
        assert vals[0] > vals[1] > vals[2] > target

    def test_domain_errors(self, e1):
        with pytest.raises(DomainError):
            empirical_rate(e1, 3, 0.2)
        with pytest.raises(DomainError):
            empirical_rate(e1, 3, math.log(2) + 0.1)
        with pytest.raises(DomainError):
            empirical_rate(e1, 0, 0.4)


def _uniform_measure(carpet, K):
    third = Fraction(1, 3)
    _, _, q_over_n = uniform_vectors(carpet)
    q = (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))
    assert tuple(float(v) for v in q) == q_over_n.entries
    return MeasureSpec(carpet, K, (third, third, third), q)


class TestNu:
    def test_cylinder_exact_value(self, e1):
        spec = _uniform_measure(e1, 3)
        assert nu_cylinder(spec, (1, 1, 3)) == Fraction(1, 24)

    def test_cylinder_total_mass(self, e1):
        from itertools import product
        spec = _uniform_measure(e1, 3)
        total = sum(nu_cylinder(spec, w)
                    for w in product((1, 2, 3), repeat=4))
        assert total == 1

    def test_point_mass_tail(self, e1):
        spec = MeasureSpec(e1, 3, (Fraction(1, 3),) * 3,
                           (Fraction(0), Fraction(0), Fraction(1)))
        assert nu_cylinder(spec, (2, 3, 3)) == Fraction(1, 3)
        assert nu_cylinder(spec, (2, 3, 1)) == 0

    def test_log_variant(self, e1):
        spec = _uniform_measure(e1, 3)
        assert log_nu_cylinder(spec, (1, 1, 3)) == pytest.approx(
            -math.log(24), abs=1e-12)
        spec0 = MeasureSpec(e1, 3, (1 / 3,) * 3, (0.0, 0.0, 1.0))
        assert log_nu_cylinder(spec0, (1, 1, 1)) == float("-inf")

    def test_word_too_short(self, e1):
        spec = _uniform_measure(e1, 3)
        with pytest.raises(WordTooShort):
            nu_cylinder(spec, (1, 1))

    def test_square_exact_value(self, e1):
        spec = _uniform_measure(e1, 3)
        assert nu_square(spec, SquareId(3, (1,), (1, 1))) == Fraction(1, 12)

    def test_square_partition_exact(self, e1):
        spec = _uniform_measure(e1, 3)
        for k in (3, 4, 5, 6):
            assert sum(nu_square(spec, sq) for sq in all_squares(e1, k)) == 1

    def test_square_partition_float(self, e1):
        spec = MeasureSpec(e1, 3, (1 / 3,) * 3, (0.25, 0.25, 0.5))
        total = sum(nu_square(spec, sq) for sq in all_squares(e1, 8))
        assert total == pytest.approx(1.0, abs=1e-12)

    def test_representative_independence(self, e1):
        # maps 1 and 2 share a column, so swapping them in the tail cannot
        # change a column-constant cylinder measure
        spec = _uniform_measure(e1, 3)
        assert nu_cylinder(spec, (3, 1, 2)) == nu_cylinder(spec, (3, 2, 1))

    def test_non_column_constant_rejected(self, e1):
        spec = MeasureSpec(e1, 3, (0.5, 0.25, 0.25), (1 / 3,) * 3)
        with pytest.raises(InvalidMeasure):
            nu_square(spec, SquareId(3, (1,), (1, 1)))


class TestExpectedLogNu:
    def test_matches_enumeration(self, e1):
        spec = _uniform_measure(e1, 3)
        expect = expected_log_nu(spec, 3)
        brute = -sum(float(nu_square(spec, sq)) * math.log(float(
            nu_square(spec, sq))) for sq in all_squares(e1, 3))
        assert expect == pytest.approx(brute, abs=1e-12)
        assert expect == pytest.approx(2.484907, abs=1e-6)

    def test_point_mass_on_singleton_column(self, e1):
        # map 3 sits alone in its column, so the tail contributes nothing
        spec = MeasureSpec(e1, 3, (Fraction(1, 3),) * 3,
                           (Fraction(0), Fraction(0), Fraction(1)))
        assert expected_log_nu(spec, 5) == pytest.approx(
            math.log(3), abs=1e-12)

    def test_normalized_expectation_approaches_hausdorff(self, e1):
        from carpetdim.carpet import mcmullen_vectors
        p_hat, _ = mcmullen_vectors(e1)
        target = hausdorff_dim(e1)
        gaps = []
        for K in (20, 40, 80):
            spec = MeasureSpec(e1, K, p_hat.entries, p_hat.entries)
            gaps.append(abs(expected_log_nu(spec, K) / (K * e1.logm) - target))
        assert gaps[0] >= gaps[1] >= gaps[2]
        assert gaps[2] <= 0.01

    def test_k_below_K_rejected(self, e1):
        spec = _uniform_measure(e1, 3)
        with pytest.raises(WordTooShort):
            expected_log_nu(spec, 2)
