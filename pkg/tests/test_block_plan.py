from fractions import Fraction

import pytest

from chaoskit.errors import PreconditionViolation
from chaoskit.models.base import BlockMode
from chaoskit.services.block_plan import schedule_dominates, scrambling_plan
from chaoskit.services.densities import close_rule, common_plan, horizon_counts, plan_count, separated_rule
from chaoskit.services.sft import power_system
from tests.strategies import ep


@pytest.fixture
def pair_plan(full2):
    return scrambling_plan(
        full2, [(0, 0, 0, 0), (0, 0, 0, 0)], ep("(0)"), [ep("(0)"), ep("(1)")], [(0, 1)], 0,
    )


class TestSchedule:
    def test_block_lengths(self, pair_plan):
        assert pair_plan.segment(0).mode == BlockMode.PREFIX
        assert (pair_plan.body(1).start, pair_plan.body(1).end) == (4, 9)
        assert (pair_plan.body(2).start, pair_plan.body(2).end) == (9, 28)
        assert (pair_plan.body(3).start, pair_plan.body(3).end) == (28, 113)
        assert pair_plan.block_start(3) == 28
        assert schedule_dominates(pair_plan, 8)

    def test_modes(self, pair_plan):
        assert pair_plan.body(1).mode == BlockMode.ASYMPTOTIC
        distal = pair_plan.body(2)
        assert distal.mode == BlockMode.DISTAL
        assert distal.group == (0, 1)
        assert distal.sources == (ep("(0)"), ep("(1)"))

    def test_points(self, pair_plan):
        x0, x1 = pair_plan.points()
        assert set(x0.word(0, 200)) == {0}
        assert x1.word(0, 30) == (0,) * 9 + (1,) * 19 + (0,) * 2
        assert common_plan([x1, x0]) == (pair_plan, (1, 0))

    def test_rows_cross_segments(self, pair_plan):
        rows = pair_plan.rows(5, 10)
        assert rows[1].tolist() == [0, 0, 0, 0, 1, 1, 1, 1, 1, 1]
        assert rows[0].tolist() == [0] * 10

    def test_unequal_prefixes(self, full2):
        with pytest.raises(PreconditionViolation):
            scrambling_plan(full2, [(0,), (0, 1)], ep("(0)"), [ep("(0)"), ep("(1)")], [(0, 1)], 0)

    def test_missing_bridge(self, golden):
        plan = scrambling_plan(golden, [(1,), (1,)], ep("(10)"), [ep("(0)"), ep("(01)")], [(0, 1)], 0)
        with pytest.raises(PreconditionViolation):
            plan.segment(1)


class TestPlanCounts:
    @pytest.mark.parametrize("n", [1, 5, 9, 10, 27, 28, 29, 100, 113, 1000, 5000])
    @pytest.mark.parametrize("rule", [close_rule(Fraction(1, 16)), close_rule(Fraction(1, 2)), separated_rule(Fraction(1, 2))])
    def test_matches_brute_force(self, pair_plan, rule, n):
        coords = (0, 1)
        assert plan_count(pair_plan, rule.on(coords), n) == horizon_counts(pair_plan.points(), rule, [n])[0]

    def test_first_block_by_hand(self, pair_plan):
        # Close below 1/2 up to the end of block 1: times 0..7 (time 8 sees the DISTAL 1)
        assert plan_count(pair_plan, close_rule(Fraction(1, 2)).on((0, 1)), 9) == 8


class TestBridgedPlan:
    def test_golden_mean_points_stay_admissible(self, golden):
        plan = scrambling_plan(
            golden, [(0, 1, 0, 1), (1, 0, 0, 0)], ep("(0)"), [ep("(0)"), ep("(01)")], [(0, 1)], 1,
        )
        assert plan.segment(1).mode == BlockMode.BRIDGE
        assert (plan.body(1).start, plan.body(1).end) == (5, 10)
        assert plan.body(2).length == 2 * 10 + 1
        for point in plan.points():
            assert golden.is_admissible(point, horizon=3000)
        rule = separated_rule(Fraction(1, 4)).on((0, 1))
        for n in (7, 33, 500, 2500):
            assert plan_count(plan, rule, n) == horizon_counts(plan.points(), separated_rule(Fraction(1, 4)), [n])[0]

    def test_decoded_power_plan(self, bipartite):
        power, coder = power_system(bipartite, 2, cyclic_class=0)
        plan = scrambling_plan(
            power, [(0, 0), (0, 0)], ep("(0)"), [ep("(0)"), ep("(1)")], [(0, 1)], 0,
        ).decode(coder, bipartite.alphabet_size)
        assert plan.step == 2
        assert plan.body(1).end == 2 * 5
        assert plan.targets == [ep("(01)", 3), ep("(02)", 3)]
        for point in plan.points():
            assert bipartite.is_admissible(point, horizon=2000)
        rule = close_rule(Fraction(1, 8))
        for n in (3, 10, 57, 400):
            assert plan_count(plan, rule.on((0, 1)), n) == horizon_counts(plan.points(), rule, [n])[0]
