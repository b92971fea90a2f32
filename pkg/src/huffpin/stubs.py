"""Canonical placement of pinned code words and the free stubs they leave.

Pinned lengths are packed into the lexicographically smallest code words,
so the unused code space is the right tail [S, 1) of the unit interval,
where S is the exact Kraft sum of the pinned lengths.  Decomposing that
tail into maximal dyadic blocks yields one free node per available depth:
the *free stubs*.  Every unpinned symbol will eventually live in a subtree
hung from one of these stubs.

All interval arithmetic here is exact (integers over 2**l_max).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .model import SourceSpec, SpecError, require_feasible, sorted_views


class Stub(NamedTuple):
    level: int  # depth of the free node; 0 means the root itself
    prefix: str  # code-word prefix of exactly `level` bits


@dataclass(frozen=True)
class StubSet:
    """Free stubs ordered by strictly increasing level."""

    stubs: tuple[Stub, ...]

    @property
    def m(self) -> int:
        return len(self.stubs)

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(s.level for s in self.stubs)

    def __post_init__(self) -> None:
        levels = self.levels
        assert all(a < b for a, b in zip(levels, levels[1:])), "levels must increase"


def merge_constraints(lengths: Iterable[int]) -> tuple[int, ...]:
    """Collapse a multiset of pinned lengths into strictly increasing ones.

    Repeatedly replacing two equal lengths l, l by a single l-1 terminates
    with the 1-bit positions of the binary expansion of sum(2**-l), which is
    what this computes directly.  A result of (0,) means the lengths consume
    the entire code space.
    """
    lengths = list(lengths)
    if not lengths:
        return ()
    if any(l < 1 for l in lengths):
        raise SpecError("pinned lengths must be >= 1")
    l_max = max(lengths)
    numerator = sum(1 << (l_max - l) for l in lengths)
    denominator = 1 << l_max
    if numerator > denominator:
        raise SpecError("pinned lengths violate the Kraft inequality")
    if numerator == denominator:
        return (0,)
    merged = tuple(
        h for h in range(1, l_max + 1) if (numerator >> (l_max - h)) & 1
    )
    assert sum(1 << (l_max - h) for h in merged) == numerator
    return merged


def free_stub_levels(spec: SourceSpec) -> StubSet:
    """Enumerate the free stubs of the canonical pinned placement.

    With S the exact Kraft sum of the pinned lengths, the free code space is
    [S, 1); its maximal dyadic blocks are the stubs, one per level.  With no
    pinned lengths the whole tree is free: a single stub at the root.  With
    no unpinned symbols there is nothing to place: an empty set.
    """
    report = require_feasible(spec)
    if spec.num_unconstrained == 0:
        return StubSet(())
    if not spec.constrained_indices:
        return StubSet((Stub(0, ""),))
    numerator, denominator = report.numerator, report.denominator
    l_max = denominator.bit_length() - 1
    found = []
    x = numerator  # left endpoint of the next free block, in units of 2**-l_max
    while x < denominator:
        trailing = (x & -x).bit_length() - 1
        level = l_max - trailing
        found.append(Stub(level, format(x >> trailing, f"0{level}b")))
        x += 1 << trailing
    found.sort(key=lambda s: s.level)
    return StubSet(tuple(found))


def constrained_codewords(spec: SourceSpec) -> dict[int, str]:
    """Assign canonical code words to the pinned symbols.

    Symbols are visited in (pinned length ascending, input position) order
    and receive consecutive code values, shifted left whenever the length
    grows.  The result maps original symbol index -> bit string; it is
    prefix-free and occupies exactly [0, S).
    """
    require_feasible(spec)
    order, _ = sorted_views(spec)
    codes: dict[int, str] = {}
    code = 0
    prev_len: int | None = None
    for idx in order:
        length = spec.symbols[idx].length
        assert length is not None
        if prev_len is not None:
            code = (code + 1) << (length - prev_len)
        assert code < (1 << length), "canonical assignment overflowed the level"
        codes[idx] = format(code, f"0{length}b")
        prev_len = length
    return codes
