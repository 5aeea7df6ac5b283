"""Shared fixtures and independent oracles used across the test suite."""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from causetsim import Causet


@pytest.fixture
def reference_causet() -> Causet:
    """Five-event example: a three-element chain 0<1<2 plus isolated 3, 4.

    {0, 1, 2} is a chain and {1, 3, 4} is an antichain; labels A..E map to
    ids 0..4 in tests that need names.
    """
    c = Causet()
    for _ in range(5):
        c.add_element()
    c.add_relation(0, 1)
    c.add_relation(1, 2)
    return c


REFERENCE_LABELS = {0: "A", 1: "B", 2: "C", 3: "D", 4: "E"}


def random_causet(rng: np.random.Generator, n: int, p: float = 0.2) -> Causet:
    """Random order built through add_relation on forward pairs."""
    c = Causet()
    for _ in range(n):
        c.add_element()
    for x in range(n):
        for y in range(x + 1, n):
            if rng.random() < p:
                c.add_relation(x, y)
    return c


def brute_closure(pairs) -> set[tuple[int, int]]:
    """Independent transitive-closure oracle: repeated pair expansion."""
    rel = set(pairs)
    changed = True
    while changed:
        changed = False
        for a, b in list(rel):
            for c, d in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return rel


def brute_longest_chain_length(c: Causet) -> int:
    """Exhaustive oracle: longest chain via depth-first extension."""
    n = len(c)
    best = 0

    def extend(last: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for nxt in range(n):
            if c.precedes(last, nxt):
                extend(nxt, length + 1)

    for start in range(n):
        extend(start, 1)
    return best


def brute_max_antichain_size(c: Causet, limit: int = 16) -> int:
    """Exhaustive oracle: scan all subsets for the largest antichain."""
    n = len(c)
    assert n <= limit, "oracle is exponential; keep instances small"
    best = 0
    elements = list(range(n))
    for mask in range(1 << n):
        subset = [e for e in elements if (mask >> e) & 1]
        if len(subset) <= best:
            continue
        if all(
            not c.comparable(x, y) for x, y in itertools.combinations(subset, 2)
        ):
            best = len(subset)
    return best
