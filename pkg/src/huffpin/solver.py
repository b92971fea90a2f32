"""Optimal codes under pinned lengths: partition DP over the free stubs.

After the pinned code words are placed canonically, the unplaced symbols
must be distributed over the free stubs, one Huffman subtree per stub.
An optimal solution always exists in which the symbols, sorted by
descending probability, are cut into contiguous segments and the k-th
segment (possibly empty, empties trailing) hangs from the k-th shallowest
stub.  The DP below minimizes

    F[j, k] = min over i of  F[i, k-1] + cost(segment i+1..j on stub k)

where cost(i, j, k) = huffman_cost[i, j] + level_k * mass[i, j]; ties go
to the least i so reconstruction is deterministic.  Filling the cost
tables dominates at O(M^3); the DP itself is O(M^2 m).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .bounds import BoundsReport, constrained_entropy
from .huffman import CostTables, huffman_lengths, segment_cost_tables
from .model import SourceSpec, require_feasible, sorted_views
from .stubs import StubSet, constrained_codewords, free_stub_levels


@dataclass(frozen=True)
class DpTables:
    """Filled DP state: best[j, k] and the least split index achieving it.

    Both arrays are 1-based in j and k; split[j, 1] stays 0 because the
    first segment always starts at position 1.
    """

    best: np.ndarray
    split: np.ndarray
    size: int
    m_prime: int


@dataclass(frozen=True)
class SegmentSpan:
    """One non-empty subtree: positions first..last (1-based, descending
    probability order) hung from the free stub at stub_level."""

    stub_level: int
    stub_prefix: str
    first: int
    last: int


@dataclass(frozen=True)
class Solution:
    """Complete solve output: the codebook plus diagnostics."""

    spec: SourceSpec
    codebook: dict[str, str]
    expected_length: float
    partition: tuple[SegmentSpan, ...]
    bounds: BoundsReport
    gap: float
    stubs: StubSet


def h_cost(i: int, j: int, k: int, tables: CostTables, stubs: StubSet) -> float:
    """Cost of hosting positions i..j on stub k; i = j + 1 is the empty
    segment and costs nothing."""
    if not 1 <= k <= stubs.m:
        raise IndexError(f"stub index {k} out of range 1..{stubs.m}")
    if not (0 <= j <= tables.size and 1 <= i <= j + 1):
        raise IndexError(f"segment [{i}, {j}] out of range for size {tables.size}")
    if i == j + 1:
        return 0.0
    level = stubs.stubs[k - 1].level
    return float(tables.huffman_cost[i, j] + level * tables.mass[i, j])


def run_dp(tables: CostTables, levels: Sequence[int]) -> DpTables:
    """Fill the DP tables for the given shallowest stub levels."""
    total = tables.size
    m_prime = len(levels)
    assert 1 <= m_prime <= total
    cost = tables.huffman_cost
    mass = tables.mass
    best = np.full((total + 1, m_prime + 1), np.inf, dtype=np.float64)
    split = np.zeros((total + 1, m_prime + 1), dtype=np.int64)
    best[1:, 1] = cost[1, 1:] + levels[0] * mass[1, 1:]
    for k in range(2, m_prime + 1):
        h_k = levels[k - 1]
        for j in range(1, total + 1):
            cand = best[1 : j + 1, k - 1].copy()
            if j >= 2:
                cand[: j - 1] += cost[2 : j + 1, j] + h_k * mass[2 : j + 1, j]
            i0 = int(np.argmin(cand)) + 1  # first minimum: least i
            best[j, k] = cand[i0 - 1]
            split[j, k] = i0
    best.flags.writeable = False
    split.flags.writeable = False
    return DpTables(best=best, split=split, size=total, m_prime=m_prime)


def reconstruct_partition(
    dp: DpTables, tables: CostTables, levels: Sequence[int]
) -> tuple[tuple[int, int, int], ...]:
    """Walk the split table back into segments (k, first, last) for every k.

    Empty segments come out as first = last + 1; they can only trail the
    non-empty ones, and the segment costs must re-add to best[M, m'].
    """
    total, m_prime = dp.size, dp.m_prime
    cut = [0] * (m_prime + 2)
    cut[m_prime + 1] = total
    for k in range(m_prime, 1, -1):
        cut[k] = int(dp.split[cut[k + 1], k])
    segments = tuple(
        (k, cut[k] + 1, cut[k + 1]) for k in range(1, m_prime + 1)
    )

    readded = 0.0
    seen_empty = False
    for k, lo, hi in segments:
        if lo > hi:
            seen_empty = True
            continue
        assert not seen_empty, "empty segment before a non-empty one"
        readded += tables.huffman_cost[lo, hi] + levels[k - 1] * tables.mass[lo, hi]
    assert abs(readded - dp.best[total, m_prime]) <= 1e-9, "partition cost drift"
    return segments


def assemble_codebook(
    spec: SourceSpec,
    partition: Sequence[tuple[int, int, int]],
    stubs: StubSet,
    constrained: Mapping[int, str],
) -> dict[int, str]:
    """Attach a canonical Huffman subtree to each stub; merge pinned words.

    Within a segment, symbols are ordered by (depth, probability descending,
    input position) and receive consecutive code values under the stub
    prefix; the subtree fills its code space exactly.  Returns a map from
    original symbol index to bit string.
    """
    _, order = sorted_views(spec)
    probs = spec.probabilities
    codes: dict[int, str] = dict(constrained)
    for k, lo, hi in partition:
        if lo > hi:
            continue
        members = order[lo - 1 : hi]
        seg = huffman_lengths([probs[t] for t in members])
        prefix = stubs.stubs[k - 1].prefix
        ranked = sorted(range(len(members)), key=lambda t: (seg.relative_lengths[t], t))
        code = 0
        prev: int | None = None
        depth = 0
        for t in ranked:
            depth = seg.relative_lengths[t]
            if prev is not None:
                code = (code + 1) << (depth - prev)
            assert code < (1 << depth) or depth == 0
            suffix = format(code, f"0{depth}b") if depth > 0 else ""
            codes[order[lo - 1 + t]] = prefix + suffix
            prev = depth
        assert code + 1 == 1 << depth, "subtree does not fill its stub"
    return codes


def solve(spec: SourceSpec) -> Solution:
    """Minimum expected code length honoring every pinned length.

    Raises InfeasibleConstraintsError when the pinned lengths are
    impossible.  A lone unpinned symbol would sit at the root with an
    empty code word; it gets "0" instead so the code stays usable.
    """
    require_feasible(spec)
    report = constrained_entropy(spec)
    pinned = constrained_codewords(spec)
    stub_set = free_stub_levels(spec)
    unplaced = spec.num_unconstrained

    if unplaced == 0:
        partition_idx: tuple[tuple[int, int, int], ...] = ()
    else:
        m_prime = min(stub_set.m, unplaced)
        levels = stub_set.levels[:m_prime]
        if m_prime == 1:
            partition_idx = ((1, 1, unplaced),)
        else:
            _, order = sorted_views(spec)
            probs_desc = [spec.probabilities[t] for t in order]
            tables = segment_cost_tables(probs_desc)
            dp = run_dp(tables, levels)
            partition_idx = reconstruct_partition(dp, tables, levels)

    by_index = assemble_codebook(spec, partition_idx, stub_set, pinned)
    assert len(by_index) == spec.n
    codebook = {sym.id: by_index[i] for i, sym in enumerate(spec.symbols)}
    if spec.n == 1 and codebook[spec.symbols[0].id] == "":
        codebook[spec.symbols[0].id] = "0"

    expected = sum(
        p * len(codebook[sym.id]) for p, sym in zip(spec.probabilities, spec.symbols)
    )
    spans = tuple(
        SegmentSpan(
            stub_level=stub_set.stubs[k - 1].level,
            stub_prefix=stub_set.stubs[k - 1].prefix,
            first=lo,
            last=hi,
        )
        for k, lo, hi in partition_idx
        if lo <= hi
    )
    return Solution(
        spec=spec,
        codebook=codebook,
        expected_length=expected,
        partition=spans,
        bounds=report,
        gap=expected - report.constrained_entropy,
        stubs=stub_set,
    )
