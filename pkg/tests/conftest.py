"""Shared fixtures and instance generators.

Random instances always have n >= 2: a single unpinned symbol is the one
place where the emitted code ("0") is deliberately longer than the
real-valued bounds suggest, and it gets its own dedicated unit tests.
"""

from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from huffpin import SourceSpec, check_feasibility, free_stub_levels

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

REFERENCE_WEIGHTS = (0.4, 0.2, 0.2, 0.1, 0.1)
REFERENCE_LENGTHS = (None, 2, 2, 2, None)


def reference_spec() -> SourceSpec:
    """The worked 5-symbol instance used across the suite."""
    return SourceSpec.from_weights(REFERENCE_WEIGHTS, lengths=REFERENCE_LENGTHS)


def reference_unconstrained() -> SourceSpec:
    return SourceSpec.from_weights(REFERENCE_WEIGHTS)


def random_feasible_spec(
    rng: random.Random,
    n_min: int = 2,
    n_max: int = 10,
    pin_chance: float = 0.5,
    max_len: int = 6,
    max_divisions: int | None = None,
) -> SourceSpec:
    """Rejection-sample a feasible instance.

    max_divisions additionally caps m**M so the exhaustive oracle stays
    affordable on the instance.
    """
    while True:
        n = rng.randint(n_min, n_max)
        weights = [rng.uniform(0.05, 4.0) for _ in range(n)]
        lengths = [
            rng.randint(1, max_len) if rng.random() < pin_chance else None
            for _ in range(n)
        ]
        spec = SourceSpec.from_weights(weights, lengths=lengths)
        if not check_feasibility(spec).feasible:
            continue
        if max_divisions is not None and spec.num_unconstrained:
            m = free_stub_levels(spec).m
            if m**spec.num_unconstrained > max_divisions:
                continue
        return spec


def random_unconstrained_spec(
    rng: random.Random, n_min: int = 2, n_max: int = 64
) -> SourceSpec:
    n = rng.randint(n_min, n_max)
    return SourceSpec.from_weights([rng.uniform(0.05, 4.0) for _ in range(n)])


def kraft_sum_exact(codes) -> Fraction:
    return sum((Fraction(1, 2 ** len(c)) for c in codes), Fraction(0))


def assert_prefix_free(codes) -> None:
    """No code word may be a prefix of another (duplicates included)."""
    ordered = sorted(codes)
    for a, b in zip(ordered, ordered[1:]):
        assert not b.startswith(a), f"{a!r} is a prefix of {b!r}"


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0DE)
