"""Problem instances: symbols, weights, pinned code-word lengths, feasibility.

A source is a list of symbols with positive weights.  Any subset of the
symbols may carry a *pinned length*: the emitted code word for that symbol
must have exactly that many bits.  Whether such a code exists at all is a
pure Kraft-inequality question, answered here in exact integer arithmetic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

PROBABILITY_FLOOR = 1e-300  # below this, log2(1/p) arithmetic degrades


class SpecError(ValueError):
    """Raised for malformed or invalid problem documents."""


class InfeasibleConstraintsError(ValueError):
    """Raised when the pinned lengths admit no prefix code.

    Carries the :class:`FeasibilityReport` explaining why.
    """

    def __init__(self, report: "FeasibilityReport"):
        super().__init__(report.reason or "impossible")
        self.report = report


@dataclass(frozen=True)
class SourceSymbol:
    """One source word: a label, a positive weight, an optional pinned length."""

    id: str
    weight: float
    length: int | None = None


@dataclass(frozen=True)
class SourceSpec:
    """A validated problem instance.

    Symbols keep their input order; derived views (normalized probabilities,
    constrained/unconstrained index sets) are computed lazily and cached.
    Instances are immutable and safe to share between threads.
    """

    symbols: tuple[SourceSymbol, ...]

    def __post_init__(self) -> None:
        if not self.symbols:
            raise SpecError("symbols: at least one symbol is required")
        seen: set[str] = set()
        for pos, sym in enumerate(self.symbols):
            field = f"symbols[{pos}]"
            if not isinstance(sym.id, str) or not sym.id:
                raise SpecError(f"{field}.id: must be a non-empty string")
            if sym.id in seen:
                raise SpecError(f"{field}.id: duplicate id {sym.id!r}")
            seen.add(sym.id)
            if isinstance(sym.weight, bool) or not isinstance(sym.weight, (int, float)):
                raise SpecError(f"{field}.weight: must be a number")
            if not (sym.weight > 0) or sym.weight != sym.weight:
                raise SpecError(f"{field}.weight: non-positive weight {sym.weight!r}")
            if sym.weight == float("inf"):
                raise SpecError(f"{field}.weight: weight must be finite")
            if sym.length is not None:
                if isinstance(sym.length, bool) or not isinstance(sym.length, int):
                    raise SpecError(f"{field}.length: must be an integer")
                if sym.length < 1:
                    raise SpecError(f"{field}.length: pinned length must be >= 1, got {sym.length}")
        total = sum(s.weight for s in self.symbols)
        for pos, sym in enumerate(self.symbols):
            if sym.weight / total < PROBABILITY_FLOOR:
                raise SpecError(
                    f"symbols[{pos}].weight: normalizes below {PROBABILITY_FLOOR:g}"
                )

    @property
    def n(self) -> int:
        return len(self.symbols)

    @cached_property
    def total_weight(self) -> float:
        return sum(s.weight for s in self.symbols)

    @cached_property
    def probabilities(self) -> tuple[float, ...]:
        """Weights normalized to sum to 1, in input order."""
        total = self.total_weight
        return tuple(s.weight / total for s in self.symbols)

    @cached_property
    def constrained_indices(self) -> tuple[int, ...]:
        """Indices of symbols with a pinned length, in input order."""
        return tuple(i for i, s in enumerate(self.symbols) if s.length is not None)

    @cached_property
    def unconstrained_indices(self) -> tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.symbols) if s.length is None)

    @property
    def num_unconstrained(self) -> int:
        """Number of symbols free to take any code-word length."""
        return len(self.unconstrained_indices)

    @classmethod
    def from_weights(
        cls,
        weights: Sequence[float],
        lengths: Sequence[int | None] | None = None,
        ids: Sequence[str] | None = None,
    ) -> "SourceSpec":
        """Build a spec from parallel sequences; ids default to x1, x2, ..."""
        if ids is None:
            ids = [f"x{i + 1}" for i in range(len(weights))]
        if lengths is None:
            lengths = [None] * len(weights)
        if not (len(weights) == len(lengths) == len(ids)):
            raise SpecError("weights, lengths and ids must have equal length")
        return cls(
            tuple(
                SourceSymbol(i, float(w), l) for i, w, l in zip(ids, weights, lengths)
            )
        )


@dataclass(frozen=True)
class FeasibilityReport:
    """Exact Kraft sum of the pinned lengths and the feasibility verdict.

    The sum is the dyadic rational ``numerator / denominator`` with
    ``denominator = 2**l_max``; no floating point is involved.
    """

    numerator: int
    denominator: int
    feasible: bool
    reason: str = ""

    @property
    def kraft_sum(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


def parse_spec(document: str | bytes | Mapping) -> SourceSpec:
    """Parse and validate a problem document.

    Accepts JSON text/bytes or an already-parsed mapping of the form
    ``{"symbols": [{"id": str, "weight": number > 0, "length": int >= 1?}]}``.
    Raises :class:`SpecError` naming the offending field.
    """
    if isinstance(document, (str, bytes)):
        try:
            document = json.loads(document)
        except json.JSONDecodeError as exc:
            raise SpecError(f"malformed JSON: {exc}") from exc
    if not isinstance(document, Mapping):
        raise SpecError("document: expected a JSON object")
    if "symbols" not in document:
        raise SpecError("document: missing required key 'symbols'")
    raw = document["symbols"]
    if not isinstance(raw, Sequence) or isinstance(raw, (str, bytes)):
        raise SpecError("symbols: expected an array")
    symbols = []
    for pos, entry in enumerate(raw):
        field = f"symbols[{pos}]"
        if not isinstance(entry, Mapping):
            raise SpecError(f"{field}: expected an object")
        if "id" not in entry:
            raise SpecError(f"{field}.id: missing")
        if "weight" not in entry:
            raise SpecError(f"{field}.weight: missing")
        length = entry.get("length")
        symbols.append(SourceSymbol(entry["id"], entry["weight"], length))
    return SourceSpec(tuple(symbols))


def check_feasibility(spec: SourceSpec) -> FeasibilityReport:
    """Decide whether a prefix code with the pinned lengths exists.

    The Kraft sum of the pinned lengths is computed exactly as an integer
    numerator over ``2**l_max``.  Feasible means: sum <= 1 when every symbol
    is pinned, and sum < 1 otherwise (an unpinned symbol needs a finite code
    word, which forces strict slack).  Infeasibility is a result, not an
    error.
    """
    pinned = [spec.symbols[i].length for i in spec.constrained_indices]
    if not pinned:
        return FeasibilityReport(0, 1, True)
    l_max = max(pinned)
    numerator = sum(1 << (l_max - l) for l in pinned)
    denominator = 1 << l_max
    if numerator > denominator:
        return FeasibilityReport(
            numerator,
            denominator,
            False,
            f"pinned lengths violate the Kraft inequality "
            f"({numerator}/{denominator} > 1)",
        )
    if numerator == denominator and spec.num_unconstrained > 0:
        return FeasibilityReport(
            numerator,
            denominator,
            False,
            f"pinned lengths fill the whole code space, leaving no room for "
            f"{spec.num_unconstrained} unpinned symbol(s)",
        )
    return FeasibilityReport(numerator, denominator, True)


def require_feasible(spec: SourceSpec) -> FeasibilityReport:
    """check_feasibility, but raising InfeasibleConstraintsError on failure."""
    report = check_feasibility(spec)
    if not report.feasible:
        raise InfeasibleConstraintsError(report)
    return report


def sorted_views(spec: SourceSpec) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Canonical orderings of the two symbol classes.

    Returns ``(constrained, unconstrained)`` as tuples of original indices:
    constrained sorted by (pinned length ascending, input position),
    unconstrained by (probability descending, input position).  Ties always
    break on input position, so both views are deterministic.
    """
    p = spec.probabilities
    constrained = tuple(
        sorted(spec.constrained_indices, key=lambda i: (spec.symbols[i].length, i))
    )
    unconstrained = tuple(
        sorted(spec.unconstrained_indices, key=lambda i: (-p[i], i))
    )
    return constrained, unconstrained
