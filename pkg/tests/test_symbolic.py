from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from chaoskit.errors import AlphabetMismatch, LiteralError, PreconditionViolation
from chaoskit.services.symbolic import (
    EpPoint,
    PlanBlock,
    ScheduledPoint,
    canonical_form,
    closeness_window,
    dist,
    distance_at,
    first_difference,
    format_point,
    joint_tail_stats,
    min_separation,
    parse_point,
    primitive_root,
    separation_window,
    tuple_diameter,
)
from tests.strategies import ep, ep_points


class TestCanonicalForm:
    def test_primitive_root(self):
        assert primitive_root((0, 1, 0, 1)) == (0, 1)
        assert primitive_root((0, 0, 1)) == (0, 0, 1)

    def test_trailing_preperiod_is_absorbed(self):
        assert canonical_form((1, 0), (1, 0)) == ((), (1, 0))
        assert canonical_form((0, 1, 1), (0, 1)) == ((0, 1), (1, 0))

    def test_empty_cycle_rejected(self):
        with pytest.raises(PreconditionViolation):
            canonical_form((0,), ())

    def test_equal_sequences_compare_equal(self):
        assert ep("0101(01)") == ep("(01)")
        assert ep("1(11)") == ep("(1)")
        assert ep("0(10)") == ep("(01)")

    @given(ep_points(3))
    def test_canonicalization_preserves_symbols(self, x):
        raw = EpPoint.model_construct(preperiod=x.preperiod + x.cycle, cycle=x.cycle + x.cycle, alphabet_size=3)
        again = EpPoint(preperiod=raw.preperiod, cycle=raw.cycle, alphabet_size=3)
        assert again == x
        assert again.word(0, 40) == x.word(0, 40)


class TestEpPoint:
    def test_symbols_and_words(self):
        x = ep("10(011)")
        assert x.word(0, 8) == (1, 0, 0, 1, 1, 0, 1, 1)
        assert x.symbol_at(5) == 0
        assert x.word(3, 4) == (1, 1, 0, 1)

    @given(ep_points(2), st.integers(0, 12), st.integers(0, 12))
    def test_shift_matches_words(self, x, k, length):
        assert x.shift(k).word(0, length) == x.word(k, length)

    @given(ep_points(2), st.integers(0, 30))
    def test_realize_matches_word(self, x, length):
        assert tuple(int(v) for v in x.realize(length)) == x.word(0, length)

    def test_symbol_outside_alphabet(self):
        with pytest.raises(ValueError):
            EpPoint(preperiod=(2,), cycle=(0,), alphabet_size=2)

    def test_from_word(self):
        assert EpPoint.from_word((0, 1, 1)).word(0, 5) == (0, 1, 1, 1, 1)


class TestLiterals:
    def test_round_trip(self):
        assert format_point(parse_point("01(10)")) == "01(10)"
        assert format_point(parse_point("0101(01)")) == "(01)"

    def test_dotted_symbols(self):
        x = parse_point("10.3(0.11)", alphabet_size=12)
        assert x.word(0, 4) == (10, 3, 0, 11)
        assert format_point(x) == "10.3(0.11)"

    @pytest.mark.parametrize("text", ["0101", "(", "01(2)", "()"])
    def test_malformed(self, text):
        with pytest.raises(LiteralError):
            parse_point(text)


class TestMetric:
    @pytest.mark.parametrize("t, g", [
        (1, 1), (Fraction(1, 2), 2), (Fraction(3, 4), 1), (Fraction(1, 8), 4), (2, 0),
    ])
    def test_closeness_window(self, t, g):
        assert closeness_window(t) == g

    @pytest.mark.parametrize("delta, g", [
        (1, 0), (Fraction(1, 2), 1), (Fraction(3, 8), 2), (Fraction(1, 4), 2),
    ])
    def test_separation_window(self, delta, g):
        assert separation_window(delta) == g

    def test_dist(self):
        assert dist(ep("(0)"), ep("(1)")) == 1
        assert dist(ep("00(1)"), ep("(0)")) == Fraction(1, 4)
        assert dist(ep("(01)"), ep("0(10)")) == 0

    def test_alphabet_mismatch(self):
        with pytest.raises(AlphabetMismatch):
            dist(ep("(0)"), ep("(0)", 3))

    @given(ep_points(2), ep_points(2), st.integers(0, 10))
    def test_first_difference_is_first(self, x, y, start):
        f = first_difference(x, y, start)
        if f is None:
            assert x.shift(start) == y.shift(start)
        else:
            assert f >= start
            assert x.word(start, f - start) == y.word(start, f - start)
            assert x.symbol_at(f) != y.symbol_at(f)

    @given(ep_points(2), ep_points(2), ep_points(2))
    def test_ultrametric(self, x, y, z):
        assert dist(x, z) <= max(dist(x, y), dist(y, z))

    def test_tuple_diameter(self):
        points = [ep("(0)"), ep("0(1)"), ep("00(1)")]
        assert tuple_diameter(points) == Fraction(1, 2)
        assert tuple_diameter(points, 2) == 1
        with pytest.raises(PreconditionViolation):
            tuple_diameter(points[:1])


class TestScheduledPoint:
    def _alternating(self):
        # Blocks of length k+1 alternating between (0) and (1)
        return ScheduledPoint(
            lambda k: PlanBlock(source=EpPoint.constant(k % 2), length=k + 1),
            alphabet_size=2,
            description="alternating",
        )

    def test_blocks(self):
        x = self._alternating()
        assert x.word(0, 10) == (0, 1, 1, 0, 0, 0, 1, 1, 1, 1)
        assert x.block_end(2) == 6
        assert x.symbol_at(6) == 1

    def test_prepend(self):
        x = self._alternating().prepend((1, 1))
        assert x.word(0, 5) == (1, 1, 0, 1, 1)

    def test_distance_to_periodic(self):
        x = self._alternating()
        assert distance_at(x, ep("(0)"), 3) == Fraction(1, 8)
        assert dist(x, ep("0(1)")) == Fraction(1, 8)


class TestJointTail:
    def test_rows(self):
        stats = joint_tail_stats([ep("(0)"), ep("(01)")])
        assert stats.preperiod == 0
        assert stats.period == 2
        assert stats.distances(0) == [Fraction(1, 2)]
        assert stats.distances(1) == [1]
        assert stats.liminf_min_distance() == Fraction(1, 2)
        assert stats.limsup_diameter() == 1
        assert stats.close_fraction(Fraction(3, 4)) == Fraction(1, 2)
        assert stats.separated_fraction(Fraction(1, 4)) == 1

    def test_equal_tails(self):
        stats = joint_tail_stats([ep("1(0)"), ep("(0)")])
        assert stats.limsup_diameter() == 0
        assert stats.close_fraction(Fraction(1, 1024)) == 1

    def test_min_separation_sees_preperiod(self):
        assert min_separation([ep("(0)"), ep("(1)")]) == 1
        assert min_separation([ep("0(1)"), ep("(1)")]) == 0
        assert min_separation([ep("00(1)"), ep("01(0)")]) == Fraction(1, 2)

    def test_needs_periodic_points(self):
        x = ScheduledPoint(lambda k: PlanBlock(source=EpPoint.constant(0), length=1), 2)
        with pytest.raises(PreconditionViolation):
            joint_tail_stats([x, ep("(0)")])
