import itertools
import random

import pytest

from contextuality import cbd, fractions, prlike, scenario
from contextuality.errors import ModelValidationError


class TestConstruction:
    def test_from_probabilities_midpoint(self):
        pr = prlike.from_probabilities((0.5, 0.5, 0.5))
        assert pr.epsilons == (0.0, 0.0, 0.0)
        assert pr.anticorrelated == frozenset({3})

    def test_from_probabilities_extremes(self):
        assert prlike.from_probabilities((1.0, 1.0, 1.0)).epsilons == (1.0, 1.0, 1.0)

    def test_from_probabilities_generic(self):
        pr = prlike.from_probabilities((0.75, 0.4, 0.55))
        assert pr.epsilons == pytest.approx((0.5, -0.2, 0.1))

    def test_round_trip_through_probabilities(self):
        rng = random.Random(4)
        for _ in range(200):
            p = tuple(rng.random() for _ in range(3))
            pr = prlike.from_probabilities(p)
            recovered = tuple((1.0 + e) / 2.0 for e in pr.epsilons)
            assert recovered == pytest.approx(p, abs=1e-15)

    def test_out_of_range_probability_rejected(self):
        with pytest.raises(ModelValidationError):
            prlike.from_probabilities((1.2, 0.5, 0.5))

    def test_even_anticorrelated_set_rejected(self):
        with pytest.raises(ModelValidationError):
            prlike.PrLikeModel((0.0, 0.0, 0.0, 0.0), frozenset({1, 4}))

    def test_epsilon_magnitude_capped(self):
        with pytest.raises(ModelValidationError):
            prlike.PrLikeModel((1.5, 0.0, 0.0))

    def test_rank_below_three_rejected(self):
        with pytest.raises(ModelValidationError):
            prlike.PrLikeModel((0.0, 0.0))


class TestToEmpirical:
    def test_prism_at_zero(self, pr_prism):
        assert prlike.to_empirical(prlike.PrLikeModel((0.0, 0.0, 0.0))) == pr_prism

    def test_certain_first_context(self):
        m = prlike.to_empirical(prlike.PrLikeModel((1.0, 0.0, 0.0)))
        assert m.table_as_row(0) == [1.0, 0.0, 0.0, 0.0]

    def test_uniform_epsilon(self):
        m = prlike.to_empirical(prlike.PrLikeModel((0.2, 0.2, 0.2)))
        assert m.table_as_row(0) == pytest.approx([0.6, 0, 0, 0.4])
        assert m.table_as_row(2) == pytest.approx([0, 0.6, 0.4, 0])

    def test_always_validates(self):
        rng = random.Random(6)
        for _ in range(100):
            n = rng.choice((3, 4, 5))
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)))
            scenario.validate(prlike.to_empirical(pr))

    def test_interior_epsilon_keeps_box_support(self):
        pr = prlike.PrLikeModel((0.3, -0.9, 0.99))
        pm = scenario.possibilistic_collapse(prlike.to_empirical(pr))
        live = [sum(t.values()) for t in pm.supports]
        assert live == [2, 2, 2]

    def test_boundary_epsilon_shrinks_support(self):
        pr = prlike.PrLikeModel((1.0, 0.0, 0.0))
        pm = scenario.possibilistic_collapse(prlike.to_empirical(pr))
        assert sum(pm.supports[0].values()) == 1


class TestAnalyticMeasures:
    def test_sf_values(self):
        assert prlike.sf_analytic(prlike.PrLikeModel((0.0, 0.0, 0.0))) == 0.0
        assert prlike.sf_analytic(prlike.PrLikeModel((0.4, -0.2, 0.1))) == 0.4
        assert prlike.sf_analytic(prlike.PrLikeModel((1.0, 1.0, 1.0))) == 1.0

    def test_cf_is_always_one(self):
        rng = random.Random(7)
        for _ in range(20):
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(3)))
            assert prlike.cf_analytic(pr) == 1.0

    def test_cf_agrees_with_lp(self):
        pr = prlike.PrLikeModel((0.4, -0.2, 0.1))
        lp = fractions.contextual_fraction(prlike.to_empirical(pr)).fraction
        assert lp == pytest.approx(1.0, abs=1e-6)

    def test_delta_values(self):
        assert prlike.delta_analytic(prlike.PrLikeModel((0.0, 0.0, 0.0))) == 0.0
        assert prlike.delta_analytic(prlike.PrLikeModel((1.0, 1.0, 1.0))) == 2.0
        assert prlike.delta_analytic(prlike.PrLikeModel((0.5, -0.5, 0.25))) == pytest.approx(2.5)

    def test_delta_requires_canonical_form(self):
        pr = prlike.PrLikeModel((0.1, 0.2, 0.3), frozenset({1}))
        with pytest.raises(ModelValidationError, match="canonical"):
            prlike.delta_analytic(pr)

    def test_delta_bounds_attained(self):
        same_sign = prlike.PrLikeModel((0.3, 0.3, 0.3))
        lower, upper = prlike.delta_bounds(same_sign)
        assert (lower, upper) == pytest.approx((0.6, 1.8))
        assert prlike.delta_analytic(same_sign) == pytest.approx(lower)
        alternating = prlike.PrLikeModel((0.3, -0.3, 0.3))
        assert prlike.delta_analytic(alternating) == pytest.approx(1.8)

    def test_delta_bounds_zero_model(self):
        assert prlike.delta_bounds(prlike.PrLikeModel((0.0, 0.0, 0.0))) == (0.0, 0.0)

    def test_bounds_hold_on_random_models(self):
        rng = random.Random(8)
        for _ in range(10_000):
            n = rng.choice((3, 4, 5, 6))
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)))
            delta = prlike.delta_analytic(pr)
            lower, upper = prlike.delta_bounds(pr)
            assert lower - 1e-12 <= delta <= upper + 1e-12


class TestCanonicalize:
    def test_already_canonical_is_unchanged(self):
        pr = prlike.PrLikeModel((0.1, 0.2, 0.3))
        assert prlike.canonicalize(pr) == pr

    def test_result_is_canonical(self):
        rng = random.Random(9)
        for _ in range(200):
            n = rng.choice((3, 4, 5))
            k = rng.randrange(0, (n + 1) // 2)
            anti = frozenset(rng.sample(range(1, n + 1), 2 * k + 1))
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)), anti)
            assert prlike.canonicalize(pr).is_canonical

    def test_preserves_measures_of_the_empirical_model(self):
        rng = random.Random(10)
        for _ in range(50):
            n = rng.choice((3, 4))
            k = rng.randrange(0, (n + 1) // 2)
            anti = frozenset(rng.sample(range(1, n + 1), 2 * k + 1))
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(n)), anti)
            canonical = prlike.canonicalize(pr)
            original = cbd.from_empirical(prlike.to_empirical(pr))
            relabelled = cbd.from_empirical(prlike.to_empirical(canonical))
            assert cbd.direct_influence(original) == pytest.approx(
                cbd.direct_influence(relabelled), abs=1e-12
            )
            assert cbd.cnt1(original) == pytest.approx(cbd.cnt1(relabelled), abs=1e-12)
            assert prlike.sf_analytic(pr) == prlike.sf_analytic(canonical)


class TestAnalyze:
    def test_prism_fully_contextual(self):
        report = prlike.analyze(prlike.PrLikeModel((0.0, 0.0, 0.0)))
        assert report.sheaf_flag and report.cbd_flag
        assert report.sf == 0.0 and report.delta == 0.0 and report.cnt1 == 2.0

    def test_saturated_model_neither(self):
        report = prlike.analyze(prlike.PrLikeModel((1.0, 1.0, 1.0)))
        assert not report.sheaf_flag and not report.cbd_flag
        assert report.delta == 2.0 and report.cnt1 == 0.0

    def test_small_epsilon_both(self):
        report = prlike.analyze(prlike.PrLikeModel((0.1, 0.05, -0.08)))
        assert report.sf == pytest.approx(0.1)
        assert report.delta == pytest.approx(0.05 + 0.13 + 0.02)
        assert report.sheaf_flag and report.cbd_flag

    def test_flags_are_strict_inequalities(self):
        at_sheaf_cut = prlike.analyze(prlike.PrLikeModel((1.0 / 6.0, 0.0, 0.0)))
        assert not at_sheaf_cut.sheaf_flag
        at_cbd_cut = prlike.analyze(prlike.PrLikeModel((1.0, 1.0, 1.0)))
        assert not at_cbd_cut.cbd_flag

    def test_cnt1_equals_two_minus_delta(self):
        rng = random.Random(12)
        for _ in range(300):
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(3)))
            report = prlike.analyze(pr)
            assert report.cnt1 == pytest.approx(2.0 - report.delta, abs=1e-12)
            assert report.cnt1 == pytest.approx(prlike.cnt1_via_cbd(pr), abs=1e-12)

    def test_lp_route_matches_analytic(self):
        report = prlike.analyze(prlike.PrLikeModel((0.4, -0.2, 0.1)), compute_cf_lp=True)
        assert report.cf == pytest.approx(1.0, abs=1e-6)

    def test_rank3_sheaf_implies_cbd(self):
        rng = random.Random(14)
        for _ in range(2000):
            pr = prlike.PrLikeModel(tuple(rng.uniform(-1, 1) for _ in range(3)))
            report = prlike.analyze(pr)
            if report.sheaf_flag:
                assert report.cbd_flag


class TestIsSymmetric:
    def test_pr_box(self, pr_box):
        assert prlike.is_symmetric(pr_box)

    def test_skewed_prlike_not_symmetric(self):
        assert not prlike.is_symmetric(prlike.to_empirical(prlike.PrLikeModel((0.2, 0.0, 0.0))))

    def test_uniform_model(self, cycle3):
        m = scenario.model_from_rows(cycle3, [[0.25] * 4] * 3)
        assert prlike.is_symmetric(m)

    def test_nonbinary_rejected(self):
        s = scenario.cyclic_scenario(3, outcomes=("0", "1", "2"))
        rows = [[1 / 9.0] * 9] * 3
        with pytest.raises(ModelValidationError):
            prlike.is_symmetric(scenario.model_from_rows(s, rows))
