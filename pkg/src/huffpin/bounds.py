"""Entropy bounds for length-pinned prefix codes.

The minimum expected code length over real-valued lengths that respect the
pinned lengths is a constrained entropy: the pinned symbols pay their exact
lengths, and the remaining probability mass P is coded into the remaining
code space Q = 1 - (Kraft sum of the pinned lengths) at the scaled ideal
point q0_i = (Q / P) p_i.  Rounding the ideal lengths up gives an integer
witness code, so the optimal integer cost always lies in
[constrained_entropy, constrained_entropy + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .model import SourceSpec, require_feasible


@dataclass(frozen=True)
class BoundsReport:
    """Real-valued bounds and the rounded witness code for one instance.

    ideal_lengths and witness_lengths are aligned with the input symbol
    order; pinned symbols carry their pinned length in both.
    """

    entropy: float
    big_P: float
    big_Q: float
    constrained_entropy: float
    redundancy_constraint_term: float
    redundancy_partition_term: float
    ideal_lengths: tuple[float, ...]
    witness_lengths: tuple[int, ...]
    witness_cost: float


def entropy(spec: SourceSpec) -> float:
    """Shannon entropy of the normalized weights, in bits."""
    return sum(p * math.log2(1.0 / p) for p in spec.probabilities)


def _mass_and_space(spec: SourceSpec) -> tuple[float, float]:
    """P = unpinned probability mass, Q = code space left by pinned lengths."""
    report = require_feasible(spec)
    big_q = (report.denominator - report.numerator) / report.denominator
    big_p = sum(spec.probabilities[i] for i in spec.unconstrained_indices)
    return big_p, big_q


def ideal_lengths(spec: SourceSpec) -> tuple[float, ...]:
    """Real-valued optimal lengths: pinned verbatim, else log2(P / (Q p_i)).

    With no pinned symbols this reduces to the Shannon lengths log2(1/p_i).
    Feasibility guarantees Q > 0 whenever an unpinned symbol exists.
    """
    big_p, big_q = _mass_and_space(spec)
    out = []
    for i, symbol in enumerate(spec.symbols):
        if symbol.length is not None:
            out.append(float(symbol.length))
        else:
            out.append(math.log2(big_p / (big_q * spec.probabilities[i])))
    return tuple(out)


def witness_code_lengths(spec: SourceSpec) -> tuple[int, ...]:
    """Integer lengths: pinned verbatim, else ceil of the ideal length.

    Rounding up can only shrink each term of the Kraft sum, so the result
    still fits in the code space left by the pinned lengths.
    """
    out = []
    for symbol, ideal in zip(spec.symbols, ideal_lengths(spec)):
        if symbol.length is not None:
            out.append(symbol.length)
        else:
            out.append(math.ceil(ideal))
    return tuple(out)


def constrained_entropy(spec: SourceSpec) -> BoundsReport:
    """Full bounds report; the headline number is constrained_entropy.

    constrained_entropy is computed directly as sum(p_i * ideal_length_i)
    and again through the decomposition

        entropy + sum_pinned p_i log2(p_i 2^l_i) + P log2(P / Q);

    the two routes must agree to 1e-9, which guards both derivations.
    """
    big_p, big_q = _mass_and_space(spec)
    probs = spec.probabilities
    ideals = ideal_lengths(spec)
    witness = witness_code_lengths(spec)

    direct = sum(p * l for p, l in zip(probs, ideals))
    h = entropy(spec)
    constraint_term = sum(
        probs[i] * math.log2(probs[i] * (2.0 ** spec.symbols[i].length))
        for i in spec.constrained_indices
    )
    partition_term = big_p * math.log2(big_p / big_q) if big_p > 0.0 else 0.0
    decomposed = h + constraint_term + partition_term
    assert abs(direct - decomposed) <= 1e-9, "bound decomposition disagrees"

    return BoundsReport(
        entropy=h,
        big_P=big_p,
        big_Q=big_q,
        constrained_entropy=direct,
        redundancy_constraint_term=constraint_term,
        redundancy_partition_term=partition_term,
        ideal_lengths=ideals,
        witness_lengths=witness,
        witness_cost=sum(p * l for p, l in zip(probs, witness)),
    )
