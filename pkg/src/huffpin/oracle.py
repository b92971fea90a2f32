"""Brute-force reference solvers; test ground truth, never the fast path.

Two enumerations bracket the solver: every assignment of unplaced symbols
to free stubs (m^M candidates, arbitrary subsets) and every ordered cut of
the descending probability list into contiguous segments (one binomial
count of candidates).  Both re-evaluate candidates from scratch with their
own cost accounting; the only shared building block is the Huffman
construction itself.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .huffman import huffman_cost, huffman_lengths
from .model import SourceSpec, require_feasible, sorted_views
from .stubs import StubSet, constrained_codewords, free_stub_levels


class OracleBudgetError(RuntimeError):
    """Raised instead of silently enumerating an oversized candidate space."""


@dataclass(frozen=True)
class OracleResult:
    """Best candidate found by exhaustive search.

    best_cost includes the pinned symbols' fixed contribution;
    unconstrained_cost is the part the search actually minimized.
    best_assignment maps each unpinned symbol (input order) to the index
    of its stub, shallowest first.
    """

    best_cost: float
    unconstrained_cost: float
    best_assignment: tuple[int, ...]
    evaluations: int
    codebook: dict[str, str]


def _pinned_cost(spec: SourceSpec) -> float:
    return sum(
        spec.probabilities[i] * spec.symbols[i].length
        for i in spec.constrained_indices
    )


def _stub_groups_cost(
    groups: list[list[float]], levels: tuple[int, ...]
) -> float:
    total = 0.0
    for k, group in enumerate(groups):
        if group:
            total += huffman_cost(group) + levels[k] * sum(group)
    return total


def _codebook_for_groups(
    spec: SourceSpec,
    stubs: StubSet,
    member_groups: list[list[int]],
    pinned: dict[int, str],
) -> dict[str, str]:
    """Canonical code words for a concrete stub assignment (display only)."""
    probs = spec.probabilities
    codes = dict(pinned)
    for k, members in enumerate(member_groups):
        if not members:
            continue
        seg = huffman_lengths([probs[t] for t in members])
        prefix = stubs.stubs[k].prefix
        ranked = sorted(range(len(members)), key=lambda t: (seg.relative_lengths[t], t))
        code = 0
        prev = None
        for t in ranked:
            depth = seg.relative_lengths[t]
            if prev is not None:
                code = (code + 1) << (depth - prev)
            codes[members[t]] = prefix + (format(code, f"0{depth}b") if depth else "")
            prev = depth
    book = {sym.id: codes[i] for i, sym in enumerate(spec.symbols)}
    if spec.n == 1 and book[spec.symbols[0].id] == "":
        book[spec.symbols[0].id] = "0"
    return book


def _trivial_result(spec: SourceSpec, pinned: dict[int, str]) -> OracleResult:
    return OracleResult(
        best_cost=_pinned_cost(spec),
        unconstrained_cost=0.0,
        best_assignment=(),
        evaluations=1,
        codebook={sym.id: pinned[i] for i, sym in enumerate(spec.symbols)},
    )


def _finish(
    spec: SourceSpec,
    stubs: StubSet,
    order: tuple[int, ...],
    best_assign: tuple[int, ...],
    best_unconstrained: float,
    evaluations: int,
    pinned: dict[int, str],
) -> OracleResult:
    member_groups: list[list[int]] = [[] for _ in range(stubs.m)]
    for pos, k in enumerate(best_assign):
        member_groups[k].append(order[pos])
    position_of = {orig: pos for pos, orig in enumerate(order)}
    by_input = tuple(best_assign[position_of[i]] for i in spec.unconstrained_indices)
    return OracleResult(
        best_cost=best_unconstrained + _pinned_cost(spec),
        unconstrained_cost=best_unconstrained,
        best_assignment=by_input,
        evaluations=evaluations,
        codebook=_codebook_for_groups(spec, stubs, member_groups, pinned),
    )


def exhaustive_division_solve(spec: SourceSpec, budget: int = 10**6) -> OracleResult:
    """Try every stub assignment of the unplaced symbols; keep the cheapest.

    Raises OracleBudgetError when m^M exceeds the budget.
    """
    require_feasible(spec)
    pinned = constrained_codewords(spec)
    unplaced = spec.num_unconstrained
    if unplaced == 0:
        return _trivial_result(spec, pinned)
    stubs = free_stub_levels(spec)
    count = stubs.m**unplaced
    if count > budget:
        raise OracleBudgetError(
            f"{stubs.m}^{unplaced} = {count} assignments exceed the budget {budget}"
        )
    _, order = sorted_views(spec)
    probs_desc = [spec.probabilities[t] for t in order]
    levels = stubs.levels

    best_unconstrained = math.inf
    best_assign: tuple[int, ...] = ()
    for assign in itertools.product(range(stubs.m), repeat=unplaced):
        groups: list[list[float]] = [[] for _ in range(stubs.m)]
        for pos, k in enumerate(assign):
            groups[k].append(probs_desc[pos])
        total = _stub_groups_cost(groups, levels)
        if total < best_unconstrained:
            best_unconstrained = total
            best_assign = assign
    return _finish(spec, stubs, order, best_assign, best_unconstrained, count, pinned)


def contiguous_partition_solve(spec: SourceSpec, budget: int = 10**6) -> OracleResult:
    """Try every ordered contiguous cut of the descending probability list.

    Segments may be empty; candidate count is C(M + m - 1, m - 1).
    Raises OracleBudgetError when that exceeds the budget.
    """
    require_feasible(spec)
    pinned = constrained_codewords(spec)
    unplaced = spec.num_unconstrained
    if unplaced == 0:
        return _trivial_result(spec, pinned)
    stubs = free_stub_levels(spec)
    count = math.comb(unplaced + stubs.m - 1, stubs.m - 1)
    if count > budget:
        raise OracleBudgetError(
            f"{count} contiguous partitions exceed the budget {budget}"
        )
    _, order = sorted_views(spec)
    probs_desc = [spec.probabilities[t] for t in order]
    levels = stubs.levels

    best_unconstrained = math.inf
    best_assign: tuple[int, ...] = ()
    for cuts in itertools.combinations_with_replacement(
        range(unplaced + 1), stubs.m - 1
    ):
        edges = (0, *cuts, unplaced)
        assign = tuple(
            k for k in range(stubs.m) for _ in range(edges[k + 1] - edges[k])
        )
        groups = [
            probs_desc[edges[k] : edges[k + 1]] for k in range(stubs.m)
        ]
        total = _stub_groups_cost(groups, levels)
        if total < best_unconstrained:
            best_unconstrained = total
            best_assign = assign
    return _finish(spec, stubs, order, best_assign, best_unconstrained, count, pinned)
