"""Finite causal sets: strict partial orders with chain/antichain analysis.

A causet is a locally finite strict partial order. Elements are dense
non-negative integers assigned in insertion order. The relation is stored
as its full transitive closure, one ancestor bitmask per element, which
keeps `precedes` O(1) and lets append-heavy growth runs stay cheap.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import CausetTooLarge, CycleCreated, ReflexiveRelation, UnknownElement

# Exact maximum-antichain matching is refused above this size; sample at the
# analysis level instead of silently returning an approximation.
MAX_EXACT_ANTICHAIN = 5000

_VIOLATION_CAP = 100


def _iter_bits(mask: int) -> Iterator[int]:
    """Yield set-bit indices of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Violation:
    """One axiom violation found by ``Causet.validate``."""

    kind: str  # "transitivity" | "irreflexivity" | "acyclicity"
    elements: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    transitive: bool
    irreflexive: bool
    acyclic: bool
    violations: tuple[Violation, ...]
    truncated: bool = False

    @property
    def ok(self) -> bool:
        return self.transitive and self.irreflexive and self.acyclic

    def to_dict(self) -> dict:
        return {
            "transitive": self.transitive,
            "irreflexive": self.irreflexive,
            "acyclic": self.acyclic,
            "valid": self.ok,
            "violations": [
                {"kind": v.kind, "elements": list(v.elements)} for v in self.violations
            ],
            "truncated": self.truncated,
        }


class Causet:
    """A finite strict partial order stored as its transitive closure.

    Mutators (`add_element`, `add_relation`) keep the closure eagerly
    re-closed, so the order axioms hold after every call. Mutation of one
    instance must be externally serialized; settled instances are safe for
    concurrent reads.
    """

    __slots__ = ("_anc", "_has_desc")

    def __init__(self) -> None:
        self._anc: list[int] = []  # _anc[y] = bitmask of strict ancestors of y
        self._has_desc: int = 0  # bit x set iff x has at least one descendant

    # -- construction ------------------------------------------------------

    @classmethod
    def from_pairs(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "Causet":
        """Build a causet with ``n`` elements and the given relation pairs,
        stored exactly as supplied: no re-closing and no axiom checks.

        Intended for tests and lenient loading; run ``validate`` afterwards.
        """
        c = cls()
        c._anc = [0] * n
        for x, y in pairs:
            if not (0 <= x < n and 0 <= y < n):
                raise UnknownElement(f"relation ({x}, {y}) outside 0..{n - 1}")
            c._anc[y] |= 1 << x
            c._has_desc |= 1 << x
        return c

    @classmethod
    def _from_bitrows(cls, anc: list[int]) -> "Causet":
        """Adopt prebuilt ancestor bitmasks (assumed transitively closed)."""
        c = cls()
        c._anc = anc
        has_desc = 0
        for y, mask in enumerate(anc):
            has_desc |= mask
        c._has_desc = has_desc
        return c

    def copy(self) -> "Causet":
        c = Causet()
        c._anc = list(self._anc)
        c._has_desc = self._has_desc
        return c

    def add_element(self) -> int:
        """Append a new element, incomparable to all others; returns its id."""
        self._anc.append(0)
        return len(self._anc) - 1

    def add_relation(self, x: int, y: int) -> None:
        """Record x ≺ y and re-close the order.

        Every ancestor of x becomes an ancestor of y and of all descendants
        of y. Idempotent when x ≺ y already holds.
        """
        self._check(x)
        self._check(y)
        if x == y:
            raise ReflexiveRelation(f"element {x} cannot precede itself")
        if (self._anc[x] >> y) & 1:
            raise CycleCreated(f"{y} already precedes {x}")
        if (self._anc[y] >> x) & 1:
            return
        up = self._anc[x] | (1 << x)
        if (self._has_desc >> y) & 1:
            down = [d for d in range(len(self._anc)) if (self._anc[d] >> y) & 1]
        else:
            down = []
        self._anc[y] |= up
        for d in down:
            self._anc[d] |= up
        self._has_desc |= up

    # -- basic queries -----------------------------------------------------

    def _check(self, x: int) -> None:
        if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < len(self._anc):
            raise UnknownElement(f"no element {x!r}")

    def __len__(self) -> int:
        return len(self._anc)

    @property
    def element_count(self) -> int:
        return len(self._anc)

    def elements(self) -> range:
        return range(len(self._anc))

    def __contains__(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < len(self._anc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Causet):
            return NotImplemented
        return self._anc == other._anc

    def __hash__(self):  # mutable container
        raise TypeError("Causet is not hashable")

    def __repr__(self) -> str:
        return f"Causet(elements={len(self._anc)}, relations={self.relation_count})"

    def precedes(self, x: int, y: int) -> bool:
        """True iff x ≺ y (x is a strict ancestor of y)."""
        self._check(x)
        self._check(y)
        return bool((self._anc[y] >> x) & 1)

    def comparable(self, x: int, y: int) -> bool:
        """True iff x ≺ y or y ≺ x. An element is not comparable to itself."""
        self._check(x)
        self._check(y)
        return bool((self._anc[y] >> x) & 1 or (self._anc[x] >> y) & 1)

    def ancestors(self, y: int) -> set[int]:
        self._check(y)
        return set(_iter_bits(self._anc[y]))

    def descendants(self, x: int) -> set[int]:
        self._check(x)
        return {d for d in range(len(self._anc)) if (self._anc[d] >> x) & 1}

    def relations(self) -> Iterator[tuple[int, int]]:
        """All closure pairs (x, y) with x ≺ y, ascending in (y, x) scan order."""
        for y, mask in enumerate(self._anc):
            for x in _iter_bits(mask):
                yield (x, y)

    @property
    def relation_count(self) -> int:
        return sum(mask.bit_count() for mask in self._anc)

    def order_interval(self, x: int, z: int) -> set[int]:
        """Open order interval {y : x ≺ y ≺ z}; empty when x ⊀ z or (x, z) is a link."""
        self._check(x)
        self._check(z)
        return {y for y in _iter_bits(self._anc[z]) if (self._anc[y] >> x) & 1}

    # -- links and extremal subsets ----------------------------------------

    def links(self) -> list[tuple[int, int]]:
        """The transitive reduction: pairs x ≺ y with empty open interval."""
        out: list[tuple[int, int]] = []
        for y, mask in enumerate(self._anc):
            if not mask:
                continue
            dominated = 0
            for z in _iter_bits(mask):
                dominated |= self._anc[z]
            for x in _iter_bits(mask & ~dominated):
                out.append((x, y))
        out.sort()
        return out

    def is_chain(self, s: Iterable[int]) -> bool:
        """True iff all pairs in ``s`` are comparable (vacuously for |s| <= 1)."""
        members = sorted(set(s))
        for m in members:
            self._check(m)
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if not ((self._anc[y] >> x) & 1 or (self._anc[x] >> y) & 1):
                    return False
        return True

    def is_antichain(self, s: Iterable[int]) -> bool:
        """True iff no pair in ``s`` is comparable (vacuously for |s| <= 1)."""
        members = sorted(set(s))
        for m in members:
            self._check(m)
        for i, x in enumerate(members):
            for y in members[i + 1 :]:
                if (self._anc[y] >> x) & 1 or (self._anc[x] >> y) & 1:
                    return False
        return True

    def _topological_order(self) -> list[int]:
        # For a transitively closed relation, ancestor count strictly
        # increases along the order, so sorting by it is a topological sort.
        return sorted(range(len(self._anc)), key=lambda v: (self._anc[v].bit_count(), v))

    def _descendant_masks(self) -> list[int]:
        desc = [0] * len(self._anc)
        for y, mask in enumerate(self._anc):
            bit = 1 << y
            for x in _iter_bits(mask):
                desc[x] |= bit
        return desc

    def longest_chain(self) -> list[int]:
        """A maximum-length chain, lexicographically smallest among ties."""
        n = len(self._anc)
        if n == 0:
            return []
        desc = self._descendant_masks()
        length = [1] * n
        for v in reversed(self._topological_order()):
            best = 0
            for w in _iter_bits(desc[v]):
                if length[w] > best:
                    best = length[w]
            length[v] = 1 + best
        maxlen = max(length)
        cur = min(v for v in range(n) if length[v] == maxlen)
        chain = [cur]
        while length[cur] > 1:
            cur = min(w for w in _iter_bits(desc[cur]) if length[w] == length[cur] - 1)
            chain.append(cur)
        return chain

    def maximum_antichain(self) -> set[int]:
        """A maximum-cardinality antichain, exact via minimum chain cover.

        Among equal-size antichains, returns the one whose sorted id
        sequence is lexicographically smallest. Raises CausetTooLarge above
        MAX_EXACT_ANTICHAIN elements.
        """
        n = len(self._anc)
        if n > MAX_EXACT_ANTICHAIN:
            raise CausetTooLarge(
                f"exact antichain supported up to {MAX_EXACT_ANTICHAIN} elements "
                f"(got {n}); sample smaller sub-causets instead"
            )
        if n == 0:
            return set()
        pool = list(range(n))
        remaining = self._antichain_size_of(pool)
        chosen: list[int] = []
        while remaining and pool:
            x = pool[0]
            rest = [
                y
                for y in pool[1:]
                if not ((self._anc[y] >> x) & 1 or (self._anc[x] >> y) & 1)
            ]
            if 1 + self._antichain_size_of(rest) == remaining:
                chosen.append(x)
                pool = rest
                remaining -= 1
            else:
                pool = pool[1:]
        return set(chosen)

    def _antichain_size_of(self, members: Sequence[int]) -> int:
        # Dilworth: width = |S| - maximum matching of the comparability
        # relation restricted to S (a chain cover pairs matched edges).
        if not members:
            return 0
        index = {m: i for i, m in enumerate(members)}
        adjacency = []
        for u in members:
            adjacency.append([index[v] for v in members if (self._anc[v] >> u) & 1])
        return len(members) - _hopcroft_karp(adjacency, len(members))[0]

    def minimum_chain_cover(self) -> list[list[int]]:
        """A partition of the elements into the minimum number of chains."""
        n = len(self._anc)
        if n == 0:
            return []
        adjacency = [sorted(self.descendants(u)) for u in range(n)]
        _, pair_left = _hopcroft_karp(adjacency, n)
        matched_right = {v for v in pair_left.values()}
        cover = []
        for start in range(n):
            if start in matched_right:
                continue
            chain = [start]
            while chain[-1] in pair_left:
                chain.append(pair_left[chain[-1]])
            cover.append(chain)
        return cover

    # -- validation --------------------------------------------------------

    def validate(self, cap: int = _VIOLATION_CAP) -> ValidationReport:
        """Check the three order axioms directly against the stored closure."""
        n = len(self._anc)
        violations: list[Violation] = []
        truncated = False

        def record(kind: str, elems: tuple[int, ...]) -> None:
            nonlocal truncated
            if len(violations) < cap:
                violations.append(Violation(kind, elems))
            else:
                truncated = True

        irreflexive = True
        for x in range(n):
            if (self._anc[x] >> x) & 1:
                irreflexive = False
                record("irreflexivity", (x, x))

        acyclic = True
        for y in range(n):
            for x in _iter_bits(self._anc[y]):
                if x < y and (self._anc[x] >> y) & 1:
                    acyclic = False
                    record("acyclicity", (x, y))

        transitive = True
        for z in range(n):
            az = self._anc[z]
            for y in _iter_bits(az):
                missing = self._anc[y] & ~az
                if missing:
                    transitive = False
                    for x in _iter_bits(missing):
                        record("transitivity", (x, y, z))

        return ValidationReport(
            transitive=transitive,
            irreflexive=irreflexive,
            acyclic=acyclic,
            violations=tuple(violations),
            truncated=truncated,
        )


def _hopcroft_karp(
    adjacency: Sequence[Sequence[int]], n_right: int
) -> tuple[int, dict[int, int]]:
    """Maximum bipartite matching; returns (size, left -> right mapping).

    ``adjacency[u]`` lists right-side neighbours of left vertex ``u`` in
    ascending order, which keeps the result deterministic.
    """
    n_left = len(adjacency)
    INF = n_left + n_right + 1
    pair_left: dict[int, int] = {}
    pair_right: dict[int, int] = {}
    dist: list[int] = [0] * n_left

    def bfs() -> bool:
        queue: deque[int] = deque()
        for u in range(n_left):
            if u not in pair_left:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = INF
        found = False
        while queue:
            u = queue.popleft()
            for v in adjacency[u]:
                w = pair_right.get(v)
                if w is None:
                    found = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return found

    def dfs(u: int) -> bool:
        for v in adjacency[u]:
            w = pair_right.get(v)
            if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                pair_left[u] = v
                pair_right[v] = u
                return True
        dist[u] = INF
        return False

    matching = 0
    while bfs():
        for u in range(n_left):
            if u not in pair_left and dfs(u):
                matching += 1
    return matching, pair_left


def transitive_closure_of(
    n: int, pairs: Iterable[tuple[int, int]]
) -> set[tuple[int, int]]:
    """Transitive closure of an arbitrary pair set over elements 0..n-1.

    Tolerates cycles and self-loops (used by the lenient document loader);
    the result may violate the order axioms and should be validated.
    """
    anc = [0] * n
    for x, y in pairs:
        if not (0 <= x < n and 0 <= y < n):
            raise UnknownElement(f"relation ({x}, {y}) outside 0..{n - 1}")
        anc[y] |= 1 << x
    changed = True
    while changed:
        changed = False
        for y in range(n):
            gained = 0
            for x in _iter_bits(anc[y]):
                gained |= anc[x]
            if gained & ~anc[y]:
                anc[y] |= gained
                changed = True
    return {(x, y) for y in range(n) for x in _iter_bits(anc[y])}
