"""Brute-force reference solvers: full division search and contiguous cuts."""

import pytest

from conftest import (
    assert_prefix_free,
    kraft_sum_exact,
    random_feasible_spec,
    reference_spec,
)
from huffpin import (
    InfeasibleConstraintsError,
    OracleBudgetError,
    SourceSpec,
    contiguous_partition_solve,
    exhaustive_division_solve,
    free_stub_levels,
    huffman_cost,
    solve,
)

ORACLES = (exhaustive_division_solve, contiguous_partition_solve)


def wide_spec():
    """One pin at length 2 plus ten free symbols: two stubs, 2^10 divisions."""
    return SourceSpec.from_weights(
        range(11, 0, -1), lengths=[2] + [None] * 10
    )


class TestReferenceInstance:
    @pytest.mark.parametrize("oracle", ORACLES)
    def test_best_cost(self, oracle):
        result = oracle(reference_spec())
        assert result.best_cost == pytest.approx(2.5, abs=1e-9)
        assert result.unconstrained_cost == pytest.approx(1.5, abs=1e-9)
        assert result.evaluations == 1
        assert result.best_assignment == (0, 0)

    @pytest.mark.parametrize("oracle", ORACLES)
    def test_codebook_matches_solve(self, oracle):
        result = oracle(reference_spec())
        assert result.codebook == solve(reference_spec()).codebook


class TestTrivialAndBudget:
    @pytest.mark.parametrize("oracle", ORACLES)
    def test_all_pinned(self, oracle):
        spec = SourceSpec.from_weights([1, 2, 3], lengths=[2, 2, 1])
        result = oracle(spec)
        assert result.best_cost == pytest.approx(1.5, abs=1e-12)
        assert result.unconstrained_cost == 0.0
        assert result.best_assignment == ()
        assert result.evaluations == 1
        assert result.codebook == {"x1": "10", "x2": "11", "x3": "0"}

    def test_division_budget_exceeded(self):
        with pytest.raises(OracleBudgetError, match="assignments exceed"):
            exhaustive_division_solve(wide_spec(), budget=1000)

    def test_contiguous_budget_is_much_smaller(self):
        # Same instance: 2^10 divisions but only C(11, 1) = 11 cuts.
        result = contiguous_partition_solve(wide_spec(), budget=1000)
        assert result.evaluations == 11

    def test_contiguous_budget_exceeded(self):
        with pytest.raises(OracleBudgetError, match="contiguous partitions exceed"):
            contiguous_partition_solve(wide_spec(), budget=5)

    @pytest.mark.parametrize("oracle", ORACLES)
    def test_budget_boundary_is_inclusive(self, oracle):
        result = oracle(reference_spec(), budget=1)
        assert result.evaluations == 1

    @pytest.mark.parametrize("oracle", ORACLES)
    def test_infeasible_rejected_before_counting(self, oracle):
        spec = SourceSpec.from_weights([1, 1, 1], lengths=[1, 1, 1])
        with pytest.raises(InfeasibleConstraintsError):
            oracle(spec, budget=0)


class TestSearchQuality:
    def test_never_worse_than_piling_on_the_shallowest_stub(self, rng):
        for _ in range(30):
            spec = random_feasible_spec(rng, n_max=7, max_divisions=20000)
            if spec.num_unconstrained == 0:
                continue
            stubs = free_stub_levels(spec)
            probs_desc = sorted(
                (spec.probabilities[i] for i in spec.unconstrained_indices),
                reverse=True,
            )
            pinned_cost = sum(
                spec.probabilities[i] * spec.symbols[i].length
                for i in spec.constrained_indices
            )
            pile = (
                huffman_cost(probs_desc)
                + stubs.levels[0] * sum(probs_desc)
                + pinned_cost
            )
            result = exhaustive_division_solve(spec)
            assert result.best_cost <= pile + 1e-12

    def test_division_and_contiguous_agree(self, rng):
        for _ in range(40):
            spec = random_feasible_spec(rng, n_max=8, max_divisions=20000)
            division = exhaustive_division_solve(spec)
            contiguous = contiguous_partition_solve(spec)
            assert division.best_cost == pytest.approx(
                contiguous.best_cost, abs=1e-9
            )
            assert division.best_cost <= contiguous.best_cost + 1e-12

    def test_best_assignment_reproduces_best_cost(self, rng):
        for _ in range(30):
            spec = random_feasible_spec(rng, n_max=7, max_divisions=20000)
            result = exhaustive_division_solve(spec)
            stubs = free_stub_levels(spec)
            groups = [[] for _ in range(max(stubs.m, 1))]
            for i, k in zip(spec.unconstrained_indices, result.best_assignment):
                groups[k].append(spec.probabilities[i])
            recomputed = sum(
                spec.probabilities[i] * spec.symbols[i].length
                for i in spec.constrained_indices
            )
            for k, group in enumerate(groups):
                if group:
                    group.sort(reverse=True)
                    recomputed += huffman_cost(group) + stubs.levels[k] * sum(group)
            assert result.best_cost == pytest.approx(recomputed, abs=1e-9)


class TestOracleCodebooks:
    @pytest.mark.parametrize("oracle", ORACLES)
    def test_codebook_invariants(self, oracle, rng):
        for _ in range(20):
            spec = random_feasible_spec(rng, n_max=7, max_divisions=20000)
            result = oracle(spec)
            codes = list(result.codebook.values())
            assert len(codes) == spec.n
            assert_prefix_free(codes)
            assert kraft_sum_exact(codes) <= 1
            for i in spec.constrained_indices:
                sym = spec.symbols[i]
                assert len(result.codebook[sym.id]) == sym.length
            realized = sum(
                p * len(result.codebook[sym.id])
                for p, sym in zip(spec.probabilities, spec.symbols)
            )
            assert result.best_cost == pytest.approx(realized, abs=1e-9)

    @pytest.mark.parametrize("oracle", ORACLES)
    def test_deterministic(self, oracle, rng):
        for _ in range(10):
            spec = random_feasible_spec(rng, n_max=7, max_divisions=20000)
            first = oracle(spec)
            second = oracle(spec)
            assert first.best_cost == second.best_cost
            assert first.best_assignment == second.best_assignment
            assert first.codebook == second.codebook
            assert first.evaluations == second.evaluations
