"""Labeled posets, permutation statistics and labeling predicates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .errors import NotRootedTreeError
from .poset import Poset


@dataclass(frozen=True)
class LabeledPoset:
    """A poset with a bijective labeling ``omega[x]`` onto ``1..n``."""

    poset: Poset
    omega: tuple[int, ...]

    def __post_init__(self):
        omega = tuple(self.omega)
        object.__setattr__(self, "omega", omega)
        if sorted(omega) != list(range(1, self.poset.n + 1)):
            raise ValueError(f"labeling {omega} is not a bijection onto 1..{self.poset.n}")

    @property
    def n(self) -> int:
        return self.poset.n

    def restrict(self, elements: Sequence[int]) -> LabeledPoset:
        """Labeled induced subposet, labels standardized to ``1..len(elements)``.

        Standardizing keeps the relative order of labels, which is all any
        statistic here depends on.
        """
        sub = self.poset.subposet(elements)
        ranked = sorted(elements, key=lambda x: self.omega[x])
        rank = {x: i + 1 for i, x in enumerate(ranked)}
        return LabeledPoset(sub, tuple(rank[x] for x in elements))

    def word(self, order: Sequence[int]) -> tuple[int, ...]:
        """The permutation ``omega o f^{-1}`` for the extension listing ``order``."""
        return tuple(self.omega[x] for x in order)


class PermStats(NamedTuple):
    maj: int
    inv: int
    descents: frozenset[int]


def descent_positions(sigma: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i in range(1, len(sigma)) if sigma[i - 1] > sigma[i])


def major_index(sigma: Sequence[int]) -> int:
    return sum(descent_positions(sigma))


def inversions(sigma: Sequence[int]) -> int:
    n = len(sigma)
    return sum(1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j])


def perm_stats(sigma: Sequence[int]) -> PermStats:
    des = descent_positions(sigma)
    return PermStats(sum(des), inversions(sigma), des)


# -- statistics of labeled posets ----------------------------------------


def poset_descents(lp: LabeledPoset) -> frozenset[int]:
    """Elements ``x`` with some cover ``x < y`` labeled ``omega(x) > omega(y)``."""
    w = lp.omega
    return frozenset(x for x, y in lp.poset.covers if w[x] > w[y])


def labeled_inv(lp: LabeledPoset) -> int:
    w = lp.omega
    return sum(1 for x, y in lp.poset.relations() if w[x] > w[y])


def is_natural(lp: LabeledPoset) -> bool:
    w = lp.omega
    return all(w[x] < w[y] for x, y in lp.poset.relations())


def is_regular(lp: LabeledPoset) -> bool:
    """Literal check over all triples ``x < z``, ``y``."""
    p, w = lp.poset, lp.omega
    for x, z in p.relations():
        lo, hi = sorted((w[x], w[z]))
        for y in range(p.n):
            if lo < w[y] < hi and not (p.less(x, y) or p.less(y, z)):
                return False
    return True


def is_block_partitioned(lp: LabeledPoset, blocks: Sequence[Sequence[int]]) -> bool:
    """Every label in ``blocks[i]`` is smaller than every label in ``blocks[j]``, i < j."""
    prev_max = 0
    for block in blocks:
        labels = [lp.omega[x] for x in block]
        if not labels:
            continue
        if min(labels) < prev_max:
            return False
        prev_max = max(labels)
    return True


# -- constructions -------------------------------------------------------


def natural_labeling(poset: Poset) -> LabeledPoset:
    omega = [0] * poset.n
    for label, x in enumerate(poset.topological_order(), start=1):
        omega[x] = label
    return LabeledPoset(poset, tuple(omega))


def subtree_block_order(poset: Poset) -> list[int]:
    """Postorder of a rooted forest: children (ascending) before the parent.

    Each subtree ends up contiguous and finishes at its root.
    """
    for x in range(poset.n):
        if len(poset.upper_covers(x)) > 1:
            raise NotRootedTreeError(f"element {x} has {len(poset.upper_covers(x))} upper covers")
    order: list[int] = []

    def visit(x: int) -> None:
        for c in poset.lower_covers(x):
            visit(c)
        order.append(x)

    for root in poset.maximal():
        visit(root)
    return order


def tree_regular_labeling(poset: Poset, start: int = 1) -> tuple[int, ...]:
    """Labels ``start..`` in subtree-consecutive postorder; regular and natural."""
    omega = [0] * poset.n
    for label, x in enumerate(subtree_block_order(poset), start=start):
        omega[x] = label
    return tuple(omega)
