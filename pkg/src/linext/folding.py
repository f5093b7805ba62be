"""Folding bridges: component trees, path orders, component arrays and the
determinant engine that turns a path-ordered component array into ``e(P)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, lcm
from typing import Callable, Sequence

from .errors import NonIntegralError, NotBridgeError, NotConnectedError, NotPathOrderError
from .poset import CoverPair, Poset, fold, full_fold, ominus
from . import oracle

Evaluator = Callable[[Poset], Fraction]


@dataclass(frozen=True)
class ComponentTree:
    """Components of ``P - F`` (vertices) joined by one edge per fold."""

    components: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[int, int, CoverPair], ...]

    def degree(self, v: int) -> int:
        return sum(v in (a, b) for a, b, _ in self.edges)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in self.components]
        for a, b, _ in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def is_path(self) -> bool:
        return all(self.degree(v) <= 2 for v in range(len(self.components)))


@dataclass(frozen=True)
class ComponentArray:
    """Triangular array of induced subposets of the folded poset.

    ``entry(i, j)`` is the subposet on components ``order[i..j]``; its
    element ``t`` is the original element ``elements(i, j)[t]``.
    """

    k: int
    order: tuple[int, ...]
    folded: Poset
    _entries: dict

    def entry(self, i: int, j: int) -> Poset:
        return self._entries[i, j][0]

    def elements(self, i: int, j: int) -> tuple[int, ...]:
        return self._entries[i, j][1]


def component_tree(poset: Poset, folds: Sequence[CoverPair]) -> ComponentTree:
    if not poset.is_connected():
        raise NotConnectedError("component trees need a connected poset")
    for pair in folds:
        if not poset.is_bridge(pair):
            raise NotBridgeError(f"fold {pair} is not a bridge")
    comps = ominus(poset, folds).components()
    where = {x: i for i, comp in enumerate(comps) for x in comp}
    edges = tuple((where[x], where[y], (x, y)) for x, y in folds)
    return ComponentTree(tuple(comps), edges)


def path_orders(tree: ComponentTree) -> list[tuple[int, ...]]:
    """Both end-to-end traversals of a path, one order for a single vertex, else none."""
    m = len(tree.components)
    if m == 1:
        return [(0,)]
    if not tree.is_path() or len(tree.edges) != m - 1:
        return []
    adj = tree.adjacency()
    ends = [v for v in range(m) if len(adj[v]) == 1]
    if len(ends) != 2:
        return []
    walk = [ends[0]]
    prev = None
    while len(walk) < m:
        nxt = [u for u in adj[walk[-1]] if u != prev]
        prev = walk[-1]
        walk.append(nxt[0])
    return [tuple(walk), tuple(reversed(walk))]


def component_array(poset: Poset, folds: Sequence[CoverPair], order: Sequence[int],
                    tree: ComponentTree | None = None) -> ComponentArray:
    """Build the array for a total order of the component tree's vertices.

    Raises :class:`NotPathOrderError` when some entry is disconnected.
    """
    if tree is None:
        tree = component_tree(poset, folds)
    order = tuple(order)
    if sorted(order) != list(range(len(tree.components))):
        raise ValueError(f"{order} is not an ordering of {len(tree.components)} components")
    folded = full_fold(poset, folds)
    k = len(order) - 1
    entries = {}
    for i in range(k + 1):
        for j in range(i, k + 1):
            elems = tuple(sorted(x for v in order[i:j + 1] for x in tree.components[v]))
            sub = folded.subposet(elems)
            if not sub.is_connected():
                raise NotPathOrderError(f"entry ({i},{j}) of order {order} is disconnected")
            entries[i, j] = (sub, elems)
    return ComponentArray(k, order, folded, entries)


# -- determinants -------------------------------------------------------


def _bareiss(rows: list[list[int]]) -> int:
    """Integer determinant by fraction-free elimination with row swaps."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, n) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        piv = a[c][c]
        for r in range(c + 1, n):
            for s in range(c + 1, n):
                a[r][s] = (a[r][s] * piv - a[r][c] * a[c][s]) // prev
            a[r][c] = 0
        prev = piv
    return sign * a[n - 1][n - 1]


def hessenberg_matrix(k: int, entry: Callable[[int, int], Fraction]) -> list[list[Fraction]]:
    """``(k+1) x (k+1)`` matrix: ``entry(i, j)`` on and above the diagonal,
    ones on the subdiagonal, zeros below."""
    rows = []
    for i in range(k + 1):
        row = []
        for j in range(k + 1):
            if j >= i:
                row.append(Fraction(entry(i, j)))
            elif j == i - 1:
                row.append(Fraction(1))
            else:
                row.append(Fraction(0))
        rows.append(row)
    return rows


def det_engine(k: int, entry: Callable[[int, int], Fraction]) -> Fraction:
    """Exact determinant of the Hessenberg matrix built from ``entry``.

    Each column is scaled to a common integer denominator, the integer
    matrix goes through Bareiss elimination, and the column scales are
    divided out at the end.
    """
    m = hessenberg_matrix(k, entry)
    scales = [lcm(*(m[i][j].denominator for i in range(k + 1))) for j in range(k + 1)]
    ints = [[int(m[i][j] * scales[j]) for j in range(k + 1)] for i in range(k + 1)]
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(_bareiss(ints), denom)


def alternating_det(k: int, entry: Callable[[int, int], Fraction]) -> Fraction:
    """The same determinant as a signed sum over cut sets.

    With ``g(i, j + 1) = entry(i, j)``, this is
    ``sum (-1)^(k - |cuts|) g(0, c1) g(c1, c2) ... g(cm, k + 1)`` over all
    increasing ``cuts`` drawn from ``1..k``.  Independent of elimination.
    """
    total = Fraction(0)
    for size in range(k + 1):
        for cuts in combinations(range(1, k + 1), size):
            bounds = (0,) + cuts + (k + 1,)
            term = Fraction(1)
            for a, b in zip(bounds, bounds[1:]):
                term *= entry(a, b - 1)
            total += term if (k - size) % 2 == 0 else -term
    return total


def det_count(poset: Poset, folds: Sequence[CoverPair], order: Sequence[int] | None = None,
              evaluator: Evaluator | None = None) -> int:
    """``n! * det`` of the ``ebar`` matrix of a path-ordered component array.

    ``evaluator`` maps each (connected) array entry to its ``ebar``; the
    oracle is used when none is given.  ``order`` defaults to the first path
    order of the component tree.
    """
    tree = component_tree(poset, folds)
    if order is None:
        orders = path_orders(tree)
        if not orders:
            raise NotPathOrderError("component tree is not a path")
        order = orders[0]
    arr = component_array(poset, folds, order, tree)
    ev = evaluator or oracle.ebar
    cache = {(i, j): ev(arr.entry(i, j)) for i in range(arr.k + 1) for j in range(i, arr.k + 1)}
    det = det_engine(arr.k, lambda i, j: cache[i, j])
    value = det * factorial(poset.n)
    if value.denominator != 1:
        raise NonIntegralError(f"n! * det = {value} is not an integer")
    return value.numerator


def alternating_sum_count(poset: Poset, folds: Sequence[CoverPair], limit: int | None = None) -> int:
    """``sum over S of (-1)^|S| e(P_{S,F})`` with every term from the oracle."""
    folds = list(folds)
    total = 0
    for size in range(len(folds) + 1):
        for subset in combinations(folds, size):
            term = oracle.count(fold(poset, subset, folds), limit)
            total += -term if size % 2 else term
    return total
