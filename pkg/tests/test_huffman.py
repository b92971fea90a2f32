"""Huffman construction and the per-segment cost tables."""

from functools import lru_cache

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from huffpin import (
    SpecError,
    huffman_cost,
    huffman_lengths,
    segment_cost_tables,
)

descending_weights = st.lists(
    st.floats(min_value=0.01, max_value=100.0, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=40,
).map(lambda ws: tuple(sorted(ws, reverse=True)))


@lru_cache(maxsize=None)
def all_depth_multisets(n: int) -> frozenset:
    """Leaf-depth multisets of every full binary tree with n leaves."""
    if n == 1:
        return frozenset({(0,)})
    out = set()
    for k in range(1, n // 2 + 1):
        for left in all_depth_multisets(k):
            for right in all_depth_multisets(n - k):
                out.add(tuple(sorted(d + 1 for d in left + right)))
    return frozenset(out)


def brute_force_optimum(weights_desc) -> float:
    """Minimum cost over every full tree shape and leaf assignment.

    For a fixed depth multiset the best assignment pairs large weights
    with small depths, so only sorted pairings need checking.
    """
    best = float("inf")
    for depths in all_depth_multisets(len(weights_desc)):
        cost = sum(w * d for w, d in zip(weights_desc, depths))
        best = min(best, cost)
    return best


class TestHuffmanLengths:
    def test_reference_weights(self):
        seg = huffman_lengths((0.4, 0.2, 0.2, 0.1, 0.1))
        assert seg.cost == pytest.approx(2.2, abs=1e-12)
        assert sum(2.0 ** -d for d in seg.relative_lengths) == 1.0

    def test_two_weights(self):
        assert huffman_lengths((0.4, 0.1)) == huffman_lengths([0.4, 0.1])
        seg = huffman_lengths((0.4, 0.1))
        assert seg.relative_lengths == (1, 1)
        assert seg.cost == pytest.approx(0.5, abs=1e-15)

    def test_four_equal_weights(self):
        assert huffman_lengths((1.0,) * 4).relative_lengths == (2, 2, 2, 2)

    def test_singleton_and_empty(self):
        assert huffman_lengths([7.5]).relative_lengths == (0,)
        assert huffman_lengths([7.5]).cost == 0.0
        assert huffman_lengths([]).relative_lengths == ()
        assert huffman_lengths([]).cost == 0.0

    def test_unsorted_rejected(self):
        with pytest.raises(SpecError, match="descending"):
            huffman_lengths([1.0, 2.0])

    def test_nonpositive_rejected(self):
        with pytest.raises(SpecError, match="positive"):
            huffman_lengths([1.0, 0.0])

    @given(descending_weights)
    def test_kraft_equality_and_monotone_depths(self, ws):
        seg = huffman_lengths(ws)
        depths = seg.relative_lengths
        if len(ws) >= 2:
            assert sum(2.0 ** -d for d in depths) == 1.0
        # Descending weights must get non-decreasing depths; this subsumes
        # the exchange argument (no swap of a lighter-but-shallower pair
        # can improve the cost).
        assert all(a <= b for a, b in zip(depths, depths[1:]))
        assert seg.cost == pytest.approx(
            sum(w * d for w, d in zip(ws, depths)), abs=1e-9
        )

    @given(descending_weights)
    def test_cost_matches_cost_only_variant(self, ws):
        assert huffman_lengths(ws).cost == huffman_cost(ws)

    def test_optimal_against_exhaustive_trees(self, rng):
        for _ in range(120):
            n = rng.randint(1, 8)
            ws = tuple(sorted((rng.uniform(0.05, 5.0) for _ in range(n)), reverse=True))
            assert huffman_lengths(ws).cost == pytest.approx(
                brute_force_optimum(ws), abs=1e-9
            )

    def test_deterministic(self, rng):
        ws = tuple(sorted((rng.uniform(0.1, 2.0) for _ in range(25)), reverse=True))
        assert huffman_lengths(ws) == huffman_lengths(ws)


class TestCostTables:
    def test_reference_pair(self):
        t = segment_cost_tables([0.4, 0.1])
        assert t.mass[1, 2] == 0.5
        assert t.huffman_cost[1, 2] == 0.5

    def test_diagonal_and_adjacent(self, rng):
        ws = tuple(sorted((rng.uniform(0.05, 3.0) for _ in range(12)), reverse=True))
        t = segment_cost_tables(ws)
        for i in range(1, 13):
            assert t.mass[i, i] == ws[i - 1]
            assert t.huffman_cost[i, i] == 0.0
            if i < 12:
                assert t.huffman_cost[i, i + 1] == ws[i - 1] + ws[i]

    def test_reference_full_segment(self):
        t = segment_cost_tables((0.4, 0.2, 0.2, 0.1, 0.1))
        assert t.huffman_cost[1, 5] == pytest.approx(2.2, abs=1e-12)

    def test_mass_recurrence_exact(self, rng):
        ws = tuple(sorted((rng.uniform(0.05, 3.0) for _ in range(20)), reverse=True))
        t = segment_cost_tables(ws)
        p = (0.0,) + ws
        for i in range(1, 21):
            assert t.mass[i, i] == p[i]
            for j in range(i + 1, 21):
                assert t.mass[i, j] == t.mass[i, j - 1] + p[j]

    def test_cost_monotone_in_segment_growth(self, rng):
        ws = tuple(sorted((rng.uniform(0.05, 3.0) for _ in range(18)), reverse=True))
        t = segment_cost_tables(ws)
        for i in range(1, 19):
            for j in range(i + 1, 19):
                assert t.huffman_cost[i, j] >= t.huffman_cost[i, j - 1]

    def test_entries_match_single_segment_runs(self, rng):
        ws = tuple(sorted((rng.uniform(0.05, 3.0) for _ in range(15)), reverse=True))
        t = segment_cost_tables(ws)
        for _ in range(60):
            i = rng.randint(1, 15)
            j = rng.randint(i, 15)
            assert t.huffman_cost[i, j] == huffman_lengths(ws[i - 1 : j]).cost

    def test_interpreted_and_jit_paths_agree_bit_for_bit(self, rng):
        ws = tuple(sorted((rng.uniform(0.05, 3.0) for _ in range(70)), reverse=True))
        pure = segment_cost_tables(ws, accelerated=False)
        fast = segment_cost_tables(ws, accelerated=True)
        assert np.array_equal(pure.huffman_cost, fast.huffman_cost)
        assert np.array_equal(pure.mass, fast.mass)

    def test_tables_are_read_only(self):
        t = segment_cost_tables([0.5, 0.3])
        with pytest.raises(ValueError):
            t.mass[1, 1] = 0.0
