"""Deterministic Huffman construction over sorted weight segments.

The solver repeatedly needs the optimal prefix-code cost of contiguous
segments p_i..p_j of the descending probability list.  This module provides
the single-segment construction (two-queue, linear time) and the full cost
tables over all O(M^2) segments.  The table builder has one algorithm and
two execution paths: interpreted for small inputs, JIT-compiled for large
ones.  Both run the identical statement sequence, so the results agree
bit for bit.

Weights do not need to sum to 1; the construction only compares and adds.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import isfinite
from typing import Sequence

import numpy as np

from .model import SpecError

# Interpreted table fill is fine below this size; beyond it the JIT path
# keeps the O(M^3) build in the tens of milliseconds.
KERNEL_MIN_SYMBOLS = 64


@dataclass(frozen=True)
class SegmentCode:
    """Relative depths (input order) and cost of one Huffman subtree."""

    relative_lengths: tuple[int, ...]
    cost: float


@dataclass(frozen=True)
class CostTables:
    """Per-segment mass and Huffman cost, 1-based [i, j] with i <= j.

    mass[i, j] = p_i + ... + p_j; huffman_cost[i, j] = optimal prefix-code
    cost of that segment.  Entries outside 1 <= i <= j <= M stay 0.
    """

    mass: np.ndarray
    huffman_cost: np.ndarray

    @property
    def size(self) -> int:
        return self.mass.shape[0] - 1


def _validate_descending(ws: Sequence[float]) -> None:
    for w in ws:
        if not isfinite(w) or w <= 0.0:
            raise SpecError(f"weights must be positive and finite, got {w!r}")
    for a, b in zip(ws, ws[1:]):
        if a < b:
            raise SpecError("weights must be sorted in descending order")


def huffman_lengths(weights: Sequence[float]) -> SegmentCode:
    """Optimal prefix-code depths for descending weights, two-queue method.

    Leaves are consumed from the small end; merged nodes queue up in
    creation order, which keeps both queues non-increasing.  On equal
    weight the leaves queue is served first, making the result fully
    deterministic and the depths non-decreasing along the input.
    A singleton gets depth 0 (it sits at the subtree root); an empty
    input yields an empty code of cost 0.
    """
    ws = [float(w) for w in weights]
    n = len(ws)
    if n == 0:
        return SegmentCode((), 0.0)
    _validate_descending(ws)
    if n == 1:
        return SegmentCode((0,), 0.0)

    # Leaves 0..n-1 keep input order; internal nodes get ids n..2n-2.
    node_w = ws + [0.0] * (n - 1)
    parent = [-1] * (2 * n - 1)
    leaf_pos = n - 1  # next unmerged leaf, walking the input tail-first
    merged: deque[int] = deque()
    next_id = n
    cost = 0.0
    for _ in range(n - 1):
        pair = []
        for _ in range(2):
            take_leaf = leaf_pos >= 0 and (
                not merged or node_w[leaf_pos] <= node_w[merged[0]]
            )
            if take_leaf:
                pair.append(leaf_pos)
                leaf_pos -= 1
            else:
                pair.append(merged.popleft())
        a, b = pair
        w = node_w[a] + node_w[b]
        node_w[next_id] = w
        parent[a] = next_id
        parent[b] = next_id
        merged.append(next_id)
        next_id += 1
        cost += w

    depths = []
    for leaf in range(n):
        d = 0
        v = leaf
        while parent[v] != -1:
            v = parent[v]
            d += 1
        depths.append(d)
    return SegmentCode(tuple(depths), cost)


def huffman_cost(weights: Sequence[float]) -> float:
    """Cost-only variant of huffman_lengths; identical merge sequence."""
    ws = [float(w) for w in weights]
    n = len(ws)
    if n == 0:
        return 0.0
    _validate_descending(ws)
    if n == 1:
        return 0.0
    merged = [0.0] * (n - 1)
    lh = n - 1  # leaves consumed tail-first (ascending weight)
    mh = 0
    mt = 0
    cost = 0.0
    for _ in range(n - 1):
        if lh >= 0 and (mh >= mt or ws[lh] <= merged[mh]):
            a = ws[lh]
            lh -= 1
        else:
            a = merged[mh]
            mh += 1
        if lh >= 0 and (mh >= mt or ws[lh] <= merged[mh]):
            b = ws[lh]
            lh -= 1
        else:
            b = merged[mh]
            mh += 1
        s = a + b
        merged[mt] = s
        mt += 1
        cost += s
    return cost


def _fill_cost_table(p, table, leaf, merged):
    """Huffman cost of every segment [i, j] into table, in place.

    p is 1-based (p[0] unused), descending from p[1].  leaf and merged are
    scratch arrays of length >= M.  This function body is executed both
    interpreted and JIT-compiled; keep it free of Python-only constructs.
    """
    total = p.shape[0] - 1
    for i in range(1, total + 1):
        for j in range(i, total + 1):
            n = j - i + 1
            if n == 1:
                table[i, j] = 0.0
                continue
            for t in range(n):
                leaf[t] = p[j - t]  # ascending weights of the segment
            lh = 0
            mh = 0
            mt = 0
            cost = 0.0
            for _ in range(n - 1):
                if lh < n and (mh >= mt or leaf[lh] <= merged[mh]):
                    a = leaf[lh]
                    lh += 1
                else:
                    a = merged[mh]
                    mh += 1
                if lh < n and (mh >= mt or leaf[lh] <= merged[mh]):
                    b = leaf[lh]
                    lh += 1
                else:
                    b = merged[mh]
                    mh += 1
                s = a + b
                merged[mt] = s
                mt += 1
                cost += s
            table[i, j] = cost


_compiled_fill = None


def _jit_fill():
    global _compiled_fill
    if _compiled_fill is None:
        from numba import njit

        _compiled_fill = njit(cache=True)(_fill_cost_table)
    return _compiled_fill


def segment_cost_tables(
    weights: Sequence[float], accelerated: bool | None = None
) -> CostTables:
    """Build mass and Huffman-cost tables for all segments of the input.

    weights must be sorted descending.  accelerated=None picks the JIT
    path automatically for inputs of KERNEL_MIN_SYMBOLS or more; tests
    force either path to cross-check them.
    """
    ws = [float(w) for w in weights]
    _validate_descending(ws)
    total = len(ws)
    p = np.zeros(total + 1, dtype=np.float64)
    p[1:] = ws
    mass = np.zeros((total + 1, total + 1), dtype=np.float64)
    for i in range(1, total + 1):
        mass[i, i:] = np.cumsum(p[i:])
    table = np.zeros((total + 1, total + 1), dtype=np.float64)
    if total >= 2:
        leaf = np.zeros(total, dtype=np.float64)
        merged = np.zeros(total, dtype=np.float64)
        use_jit = accelerated if accelerated is not None else total >= KERNEL_MIN_SYMBOLS
        fill = _jit_fill() if use_jit else _fill_cost_table
        fill(p, table, leaf, merged)
    mass.flags.writeable = False
    table.flags.writeable = False
    return CostTables(mass=mass, huffman_cost=table)
