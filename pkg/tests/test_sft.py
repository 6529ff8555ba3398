import math
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from chaoskit.errors import EmptySubshift, InadmissiblePoint, NotIrreducible, PreconditionViolation
from chaoskit.services.sft import (
    Sft,
    allowed_words,
    analyze,
    bridge_word,
    connecting_word,
    cycle_through,
    devaney_package,
    entropy,
    essentialize,
    fixed_points,
    full_shift,
    graph_period,
    has_dense_periodic_points,
    higher_block_recode,
    is_mixing,
    is_single_cycle,
    is_transitive,
    iter_periodic_points,
    matrix_power_trace,
    periodic_points,
    power_system,
    primitivity_exponent,
    shortest_path,
)
from tests.strategies import ep, irreducible_sfts, zoo


def _brute_force_fixed(s: Sft, p: int) -> int:
    """Words of length p that close up into an allowed cycle."""
    return sum(
        1 for w in product(range(s.alphabet_size), repeat=p)
        if all(s.allows(w[i], w[(i + 1) % p]) for i in range(p))
    )


class TestConstruction:
    def test_essentialize_strips_stranded_symbols(self):
        # 2 has no successor, then 1 loses its only successor
        s = essentialize([[1, 1, 0], [0, 0, 1], [0, 0, 0]], labels=["a", "b", "c"])
        assert s.alphabet_size == 1
        assert s.labels == ("a",)

    def test_essentialize_empty(self):
        with pytest.raises(EmptySubshift):
            essentialize([[0, 1], [0, 0]])

    def test_matrix_must_be_square(self):
        with pytest.raises(PreconditionViolation):
            essentialize([[1, 1]])

    def test_golden_mean_recode(self):
        s, coder = higher_block_recode(["11"])
        assert s.matrix == ((1, 1), (1, 0))
        assert coder.width == 1
        x = ep("(01)")
        assert coder.decode(coder.encode(x)) == x

    def test_three_step_recode(self):
        s, coder = higher_block_recode(["111"])
        # Vertices are the allowed 2-words; 11 -> 11 is the only removed edge
        assert s.alphabet_size == 4
        assert sum(map(sum, s.matrix)) == 7
        assert not s.is_admissible(coder.encode(ep("(1)")))
        assert s.is_admissible(coder.encode(ep("(110)")))

    def test_admissibility(self, golden):
        assert golden.is_admissible(ep("0(01)"))
        assert not golden.is_admissible(ep("0(1)"))
        with pytest.raises(InadmissiblePoint) as info:
            golden.check_admissible(ep("01(1)"))
        assert info.value.position == 1


class TestGraphAnalysis:
    def test_full_shift(self, full2):
        analysis = analyze(full2)
        assert analysis.irreducible
        assert analysis.period == 1
        assert is_mixing(full2)
        assert not is_single_cycle(full2)

    def test_periodic_graph(self, bipartite):
        q, classes = graph_period(bipartite)
        assert q == 2
        assert classes == [[0], [1, 2]]
        assert is_transitive(bipartite)
        assert not is_mixing(bipartite)

    def test_single_cycle(self, cycle2):
        assert is_single_cycle(cycle2)
        assert graph_period(cycle2)[0] == 2

    def test_reducible(self, two_loops):
        assert not is_transitive(two_loops)
        assert has_dense_periodic_points(two_loops)
        with pytest.raises(NotIrreducible):
            graph_period(two_loops)

    def test_transient_edge_breaks_dense_periodic_points(self):
        s = essentialize([[1, 1], [0, 1]])
        assert not is_transitive(s)
        assert not has_dense_periodic_points(s)

    def test_odometer_product(self):
        s = zoo("odometer_product_3")
        assert s.alphabet_size == 16
        assert graph_period(s)[0] == 8
        assert fixed_points(s) == []

    @given(irreducible_sfts())
    def test_cyclic_classes_partition_and_rotate(self, s):
        q, classes = graph_period(s)
        assert sorted(v for c in classes for v in c) == list(range(s.alphabet_size))
        where = {v: i for i, c in enumerate(classes) for v in c}
        for a in range(s.alphabet_size):
            for b in s.successors(a):
                assert where[b] == (where[a] + 1) % q


class TestPeriodicPoints:
    @settings(max_examples=30, deadline=None)
    @given(irreducible_sfts(max_size=4), st.integers(1, 6))
    def test_trace_matches_enumeration(self, s, p):
        count, points = periodic_points(s, p)
        assert count == _brute_force_fixed(s, p)
        assert sum(1 for _ in points) == count

    @pytest.mark.parametrize("name, max_period", [
        ("full_shift_2", 8), ("full_shift_3", 6), ("golden_mean", 8), ("even_period_cycle", 8),
        ("bipartite_3", 8), ("two_loops", 8), ("doubling_4", 6), ("odometer_product_3", 4),
    ])
    def test_zoo_traces_match_enumeration(self, name, max_period):
        s = zoo(name)
        for p in range(1, max_period + 1):
            assert matrix_power_trace(s, p) == _brute_force_fixed(s, p)

    def test_lucas_numbers(self, golden):
        assert [matrix_power_trace(golden, p) for p in range(1, 7)] == [1, 3, 4, 7, 11, 18]

    def test_enumerated_points_are_periodic(self, golden):
        for x in iter_periodic_points(golden, 4):
            assert x.is_periodic
            assert 4 % len(x.cycle) == 0
            assert golden.is_admissible(x)

    def test_invalid_period(self, golden):
        with pytest.raises(PreconditionViolation):
            list(iter_periodic_points(golden, 0))
        with pytest.raises(PreconditionViolation):
            periodic_points(golden, 0)


class TestEntropy:
    def test_full_shift(self):
        assert entropy(full_shift(2)) == pytest.approx(math.log(2), abs=1e-9)
        assert entropy(full_shift(3)) == pytest.approx(math.log(3), abs=1e-9)

    def test_golden_mean(self, golden):
        assert entropy(golden) == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-9)

    def test_periodic_graph(self, bipartite):
        assert entropy(bipartite) == pytest.approx(math.log(2) / 2, abs=1e-9)

    def test_zero_entropy(self, cycle2, two_loops):
        assert entropy(cycle2) == pytest.approx(0.0, abs=1e-9)
        assert entropy(two_loops) == pytest.approx(0.0, abs=1e-9)

    def test_markov_map_matches_reference(self):
        assert entropy(zoo("doubling_4")) == pytest.approx(math.log(2), abs=1e-9)
        assert entropy(zoo("tent_slope2")) == pytest.approx(math.log(2), abs=1e-9)

    def test_golden_mean_square(self, golden):
        power, _ = power_system(golden, 2)
        assert power.labels == ("00", "01", "10")
        assert entropy(power) == pytest.approx(2 * math.log((1 + math.sqrt(5)) / 2), abs=1e-9)

    @settings(max_examples=25, deadline=None)
    @given(irreducible_sfts(max_size=4), st.integers(1, 4))
    def test_power_multiplies_entropy(self, s, p):
        power, _ = power_system(s, p)
        assert entropy(power) == pytest.approx(p * entropy(s), abs=1e-6)

    def test_subsystems_have_smaller_entropy(self, full2, golden, bipartite):
        assert entropy(golden) < entropy(full2) < entropy(full_shift(3))
        assert entropy(bipartite) < entropy(full_shift(3))

    @settings(max_examples=30, deadline=None)
    @given(irreducible_sfts(), st.data())
    def test_removing_an_edge_never_raises_entropy(self, s, data):
        edges = [(a, b) for a in range(s.alphabet_size) for b in s.successors(a)]
        a, b = data.draw(st.sampled_from(edges))
        matrix = [list(row) for row in s.matrix]
        matrix[a][b] = 0
        try:
            sub = essentialize(matrix)
        except EmptySubshift:
            return
        assert entropy(sub) <= entropy(s) + 1e-9


class TestPathsAndBridges:
    def test_shortest_path(self, golden):
        assert shortest_path(golden, 1, 1) == (0,)
        assert shortest_path(golden, 0, 0) == ()
        assert connecting_word(golden, 1, 0) == ()

    def test_cycle_through(self, golden):
        assert cycle_through(golden, 1) == ep("(10)")
        assert cycle_through(golden, 0) == ep("(0)")

    def test_bridge_word(self, golden):
        assert bridge_word(golden, 1, 1, 2) == (0,)
        assert bridge_word(golden, 1, 1, 1) is None
        assert len(bridge_word(golden, 1, 1, 3)) == 2

    @given(irreducible_sfts(), st.integers(1, 8), st.data())
    def test_bridges_are_paths(self, s, steps, data):
        a = data.draw(st.integers(0, s.alphabet_size - 1))
        b = data.draw(st.integers(0, s.alphabet_size - 1))
        word = bridge_word(s, a, b, steps)
        if word is not None:
            path = (a,) + word + (b,)
            assert len(path) == steps + 1
            assert all(s.allows(u, v) for u, v in zip(path, path[1:]))

    def test_primitivity_exponent(self, full2, golden, bipartite):
        assert primitivity_exponent(full2) == 1
        assert primitivity_exponent(golden) == 2
        assert primitivity_exponent(bipartite) is None

    def test_allowed_words(self, golden):
        assert allowed_words(golden, 3) == [(0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 0, 1)]


class TestPowerSystem:
    def test_power_on_cyclic_class(self, bipartite):
        power, coder = power_system(bipartite, 2, cyclic_class=0)
        assert power.alphabet_size == 2
        assert power.labels == ("01", "02")
        assert is_mixing(power)
        x = coder.decode(ep("(01)"))
        assert x == ep("(0102)", 3)
        assert bipartite.is_admissible(x)

    def test_encode_decode(self, golden):
        power, coder = power_system(golden, 2)
        x = ep("0(01)")
        assert coder.decode(coder.encode(x)) == x


class TestDevaney:
    def test_packages(self, full2, cycle2, two_loops):
        assert devaney_package(full2).holds
        assert not devaney_package(cycle2).holds
        assert not devaney_package(two_loops).holds
