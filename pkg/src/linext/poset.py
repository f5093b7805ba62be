"""Finite posets on dense integer elements ``0..n-1`` and the operators used
throughout the package (sums, adding/removing covers, folds, slant sums).

A :class:`Poset` is immutable.  It stores its cover relations (the Hasse
diagram) and the strict order as per-element bitmasks, so ``x < y`` is a
single bit test.  Every constructor path goes through transitive closure
followed by transitive reduction, so ``covers`` never holds a redundant pair.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import ComparableError, CycleError, ElementIndexError, NotACoverError

CoverPair = tuple[int, int]


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite poset.

    ``Poset(n, pairs)`` accepts any relation pairs ``(x, y)`` meaning
    ``x < y``; redundant pairs are dropped and cycles raise
    :class:`CycleError`.
    """

    __slots__ = ("n", "covers", "_up", "_down", "_upper", "_lower", "_hash")

    def __init__(self, n: int, pairs: Iterable[CoverPair] = ()):
        if n < 0:
            raise ValueError("poset size must be nonnegative")
        succ: list[set[int]] = [set() for _ in range(n)]
        for x, y in pairs:
            for z in (x, y):
                if not 0 <= z < n:
                    raise ElementIndexError(f"element {z} out of range for n={n}")
            if x == y:
                raise CycleError(f"relation ({x},{x}) is reflexive")
            succ[x].add(y)

        # Kahn's algorithm doubles as the cycle check.
        indeg = [0] * n
        for x in range(n):
            for y in succ[x]:
                indeg[y] += 1
        order = [x for x in range(n) if indeg[x] == 0]
        for x in order:
            for y in succ[x]:
                indeg[y] -= 1
                if indeg[y] == 0:
                    order.append(y)
        if len(order) != n:
            raise CycleError("relations contain a cycle")

        up = [0] * n
        for x in reversed(order):
            m = 0
            for y in succ[x]:
                m |= (1 << y) | up[y]
            up[x] = m
        down = [0] * n
        for x in range(n):
            for y in bits(up[x]):
                down[y] |= 1 << x

        covers = set()
        upper = [0] * n
        lower = [0] * n
        for x in range(n):
            for y in bits(up[x]):
                if not (up[x] & down[y]):
                    covers.add((x, y))
                    upper[x] |= 1 << y
                    lower[y] |= 1 << x

        self.n = n
        self.covers = frozenset(covers)
        self._up = tuple(up)
        self._down = tuple(down)
        self._upper = tuple(upper)
        self._lower = tuple(lower)
        self._hash = hash((n, self.covers))

    # -- basic protocol -------------------------------------------------

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poset):
            return NotImplemented
        return self.n == other.n and self.covers == other.covers

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Poset({self.n}, {sorted(self.covers)})"

    def _check(self, *xs: int) -> None:
        for x in xs:
            if not 0 <= x < self.n:
                raise ElementIndexError(f"element {x} out of range for n={self.n}")

    # -- order queries --------------------------------------------------

    def less(self, x: int, y: int) -> bool:
        return bool(self._up[x] >> y & 1)

    def leq(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y)

    def comparable(self, x: int, y: int) -> bool:
        return x == y or self.less(x, y) or self.less(y, x)

    def covered_by(self, x: int, y: int) -> bool:
        return (x, y) in self.covers

    def up_mask(self, x: int) -> int:
        """Bitmask of elements strictly above ``x``."""
        return self._up[x]

    def down_mask(self, x: int) -> int:
        """Bitmask of elements strictly below ``x``."""
        return self._down[x]

    def upper_covers(self, x: int) -> tuple[int, ...]:
        return tuple(bits(self._upper[x]))

    def lower_covers(self, x: int) -> tuple[int, ...]:
        return tuple(bits(self._lower[x]))

    def down_size(self, x: int) -> int:
        """Number of elements ``y <= x``."""
        return self._down[x].bit_count() + 1

    def relations(self) -> Iterator[CoverPair]:
        """All strict relations ``(x, y)`` with ``x < y``."""
        for x in range(self.n):
            for y in bits(self._up[x]):
                yield x, y

    def minimal(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._down[x])

    def maximal(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.n) if not self._up[x])

    def topological_order(self) -> list[int]:
        """A linear extension, listing smaller elements first."""
        return sorted(range(self.n), key=lambda x: (self._down[x].bit_count(), x))

    # -- Hasse-graph structure ------------------------------------------

    def neighbors(self, x: int) -> tuple[int, ...]:
        return tuple(bits(self._upper[x] | self._lower[x]))

    def _reach(self, start: int, skip: CoverPair | None = None) -> int:
        seen = 1 << start
        stack = [start]
        while stack:
            u = stack.pop()
            for v in bits(self._upper[u] | self._lower[u]):
                if skip is not None and {u, v} == set(skip):
                    continue
                if not seen >> v & 1:
                    seen |= 1 << v
                    stack.append(v)
        return seen

    def components(self) -> list[tuple[int, ...]]:
        """Connected components of the Hasse diagram, ordered by least element."""
        left = (1 << self.n) - 1
        comps = []
        while left:
            start = (left & -left).bit_length() - 1
            comp = self._reach(start)
            comps.append(tuple(bits(comp)))
            left &= ~comp
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or self._reach(0).bit_count() == self.n

    def is_bridge(self, pair: CoverPair) -> bool:
        """True iff deleting the cover ``pair`` disconnects its Hasse component."""
        x, y = pair
        self._check(x, y)
        if pair not in self.covers:
            raise NotACoverError(f"{pair} is not a cover relation")
        return not self._reach(x, skip=pair) >> y & 1

    def is_tree(self) -> bool:
        """Connected with an acyclic Hasse diagram."""
        return self.n >= 1 and len(self.covers) == self.n - 1 and self.is_connected()

    def is_rooted_tree(self) -> bool:
        return self.is_tree() and len(self.maximal()) == 1

    # -- derived posets -------------------------------------------------

    def interval_elements(self, x: int, y: int) -> tuple[int, ...]:
        self._check(x, y)
        if not self.leq(x, y):
            return ()
        mask = ((self._up[x] & self._down[y]) | (1 << x) | (1 << y))
        return tuple(bits(mask))

    def interval(self, x: int, y: int) -> Poset:
        """The induced subposet ``[x, y]`` (elements renumbered in order)."""
        return self.subposet(self.interval_elements(x, y))

    def subposet(self, elements: Sequence[int]) -> Poset:
        """Induced subposet; new element ``i`` is ``elements[i]``."""
        self._check(*elements)
        index = {x: i for i, x in enumerate(elements)}
        pairs = [
            (index[x], index[y])
            for x in elements
            for y in bits(self._up[x])
            if y in index
        ]
        return Poset(len(elements), pairs)

    def relabel(self, perm: Sequence[int]) -> Poset:
        """Isomorphic copy where old element ``x`` becomes ``perm[x]``."""
        return Poset(self.n, [(perm[x], perm[y]) for x, y in self.covers])

    def dual(self) -> Poset:
        return Poset(self.n, [(y, x) for x, y in self.covers])


# -- constructors -------------------------------------------------------


def from_covers(n: int, pairs: Iterable[CoverPair]) -> Poset:
    return Poset(n, pairs)


def empty() -> Poset:
    return Poset(0)


def chain(n: int) -> Poset:
    return Poset(n, [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> Poset:
    return Poset(n)


def disjoint_sum(*posets: Poset) -> Poset:
    """Disjoint sum; the elements of later summands are shifted past earlier ones."""
    pairs = []
    offset = 0
    for p in posets:
        pairs.extend((x + offset, y + offset) for x, y in p.covers)
        offset += p.n
    return Poset(offset, pairs)


def oplus(poset: Poset, new_pairs: Iterable[CoverPair]) -> Poset:
    """Add relations between pairwise incomparable elements and re-close."""
    new_pairs = list(new_pairs)
    for x, y in new_pairs:
        poset._check(x, y)
        if poset.comparable(x, y):
            raise ComparableError(f"elements {x} and {y} are already comparable")
    return Poset(poset.n, list(poset.covers) + new_pairs)


def ominus(poset: Poset, folds: Iterable[CoverPair]) -> Poset:
    """Delete cover relations; the order is regenerated from the remaining covers."""
    folds = set(folds)
    for pair in folds:
        if pair not in poset.covers:
            raise NotACoverError(f"{pair} is not a cover relation")
    return Poset(poset.n, poset.covers - folds)


def fold(poset: Poset, partial: Iterable[CoverPair], folds: Iterable[CoverPair]) -> Poset:
    """Partial fold: delete ``folds``, then add the reversal of ``partial``.

    ``fold(P, F, F)`` is the full fold.  Non-bridge covers are allowed here.
    """
    folds = list(folds)
    partial = list(partial)
    fset = set(folds)
    for pair in partial:
        if pair not in fset:
            raise NotACoverError(f"{pair} is not among the folded covers")
    base = ominus(poset, folds)
    return Poset(poset.n, list(base.covers) + [(y, x) for x, y in partial])


def full_fold(poset: Poset, folds: Iterable[CoverPair]) -> Poset:
    folds = list(folds)
    return fold(poset, folds, folds)


def slant_sum(p_poset: Poset, p: int, q_poset: Poset, q: int) -> Poset:
    """``Q`` hung below ``p``: disjoint sum plus ``q < p``.

    Elements of ``Q`` are shifted by ``len(P)``.
    """
    return iterated_slant_sum(p_poset, p, [(q_poset, q)])


def iterated_slant_sum(p_poset: Poset, p: int, parts: Sequence[tuple[Poset, int]]) -> Poset:
    p_poset._check(p)
    total = disjoint_sum(p_poset, *(part for part, _ in parts))
    extra = []
    offset = p_poset.n
    for part, q in parts:
        part._check(q)
        extra.append((q + offset, p))
        offset += part.n
    return oplus(total, extra)
