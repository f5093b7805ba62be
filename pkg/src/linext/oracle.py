"""Brute-force ground truth for small posets.

Everything here enumerates linear extensions directly (or, for
:func:`count`, walks the lattice of down-sets), so nothing depends on the
folding or hook-length machinery it is used to check.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from math import factorial
from typing import Iterator, Literal

from .errors import LimitError
from .labeling import LabeledPoset
from .poset import Poset, bits
from .qpoly import QPoly

DEFAULT_LIMIT = 12

Stat = Literal["maj", "inv"]


def _guard(poset: Poset, limit: int | None) -> None:
    limit = DEFAULT_LIMIT if limit is None else limit
    if poset.n > limit:
        raise LimitError(f"poset has {poset.n} elements, oracle limit is {limit}")


def linear_extensions(poset: Poset, limit: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield every linear extension as the tuple ``(f^-1(1), ..., f^-1(n))``.

    Extensions come out in lexicographic order of that tuple.
    """
    _guard(poset, limit)
    n = poset.n
    down = [poset.down_mask(x) for x in range(n)]
    order: list[int] = []

    def rec(placed: int):
        if len(order) == n:
            yield tuple(order)
            return
        for x in range(n):
            if not placed >> x & 1 and down[x] & ~placed == 0:
                order.append(x)
                yield from rec(placed | 1 << x)
                order.pop()

    yield from rec(0)


def count_ideals(poset: Poset, limit: int | None = None) -> int:
    """Count extensions by memoized recursion over down-sets.

    A down-set ``D`` contributes ``sum e(D - m)`` over its maximal elements
    ``m``; the memo is keyed by the down-set bitmask.
    """
    _guard(poset, limit)
    n = poset.n
    up = [poset.up_mask(x) for x in range(n)]
    memo = {0: 1}

    def rec(mask: int) -> int:
        hit = memo.get(mask)
        if hit is not None:
            return hit
        total = 0
        for x in bits(mask):
            if not up[x] & mask:
                total += rec(mask & ~(1 << x))
        memo[mask] = total
        return total

    return rec((1 << n) - 1)


def count(poset: Poset, limit: int | None = None) -> int:
    """Number of linear extensions ``e(P)``."""
    return count_ideals(poset, limit)


def count_by_enumeration(poset: Poset, limit: int | None = None) -> int:
    return sum(1 for _ in linear_extensions(poset, limit))


def ebar(poset: Poset, limit: int | None = None) -> Fraction:
    """``e(P) / n!``."""
    return Fraction(count(poset, limit), factorial(poset.n))


def _stat_walk(lp: LabeledPoset, limit: int | None, visit) -> None:
    # Incremental maj/inv along the backtracking; visit(order, maj, inv).
    poset = lp.poset
    _guard(poset, limit)
    n = poset.n
    w = lp.omega
    down = [poset.down_mask(x) for x in range(n)]
    order: list[int] = []

    def rec(placed: int, seen_labels: int, maj: int, inv: int, last: int):
        pos = len(order)
        if pos == n:
            visit(order, maj, inv)
            return
        for x in range(n):
            if not placed >> x & 1 and down[x] & ~placed == 0:
                label = w[x]
                d_maj = pos if pos and last > label else 0
                d_inv = (seen_labels >> label).bit_count()
                order.append(x)
                rec(placed | 1 << x, seen_labels | 1 << label, maj + d_maj, inv + d_inv, label)
                order.pop()

    rec(0, 0, 0, 0, 0)


def _poly(counter: dict[int, int]) -> QPoly:
    if not counter:
        return QPoly()
    out = [0] * (max(counter) + 1)
    for e, c in counter.items():
        out[e] = c
    return QPoly(out)


def stat_gen_poly(lp: LabeledPoset, stat: Stat, limit: int | None = None) -> QPoly:
    """``sum q^stat(omega o f^-1)`` over the linear extensions ``f``."""
    if stat not in ("maj", "inv"):
        raise ValueError(f"unknown statistic {stat!r}")
    acc: dict[int, int] = defaultdict(int)
    if stat == "maj":
        _stat_walk(lp, limit, lambda order, maj, inv: acc.__setitem__(maj, acc[maj] + 1))
    else:
        _stat_walk(lp, limit, lambda order, maj, inv: acc.__setitem__(inv, acc[inv] + 1))
    return _poly(acc)


def spectrum(poset: Poset, a: int, limit: int | None = None) -> tuple[int, ...]:
    """Entry ``i`` (0-based) counts extensions putting ``a`` at position ``i + 1``."""
    poset._check(a)
    values = [0] * poset.n
    for order in linear_extensions(poset, limit):
        values[order.index(a)] += 1
    return tuple(values)


def q_spectrum(lp: LabeledPoset, a: int, limit: int | None = None) -> tuple[QPoly, ...]:
    """Like :func:`spectrum` but each extension weighted by ``q^inv``."""
    lp.poset._check(a)
    acc = [defaultdict(int) for _ in range(lp.n)]

    def visit(order, maj, inv):
        acc[order.index(a)][inv] += 1

    _stat_walk(lp, limit, visit)
    return tuple(_poly(c) for c in acc)
