"""Spectra of tree posets by recursive splitting (Atkinson), with an
inversion q-analogue.

The spectrum of ``a`` is indexed from position 1: entry ``0`` counts the
extensions putting ``a`` first.
"""

from __future__ import annotations

from math import comb
from typing import Sequence

from .errors import DimensionError, IncompatibleLabelingError, NotTreePosetError
from .labeling import LabeledPoset
from .poset import Poset
from .qpoly import QPoly, q_binomial


def _dims(alpha, beta, u, v):
    if u is None:
        u = len(alpha)
    if v is None:
        v = len(beta)
    if len(alpha) != u or len(beta) != v or u < 1 or v < 1:
        raise DimensionError(f"spectra of lengths {len(alpha)}, {len(beta)} for parts of sizes {u}, {v}")
    return u, v


def atkinson_combine(alpha: Sequence[int], beta: Sequence[int],
                     u: int | None = None, v: int | None = None) -> tuple[int, ...]:
    """Spectrum of ``a`` after joining ``a`` (spectrum ``alpha``) below ``b`` (spectrum ``beta``)."""
    u, v = _dims(alpha, beta, u, v)
    tail = [0] * (v + 2)  # tail[j] = beta_j + ... + beta_v, 1-based
    for j in range(v, 0, -1):
        tail[j] = tail[j + 1] + beta[j - 1]
    out = []
    for r in range(1, u + v + 1):
        total = 0
        for i in range(max(1, r - v), min(u, r) + 1):
            total += alpha[i - 1] * comb(r - 1, i - 1) * comb(u + v - r, u - i) * tail[r - i + 1]
        out.append(total)
    return tuple(out)


def q_atkinson_combine(alpha: Sequence[QPoly], beta: Sequence[QPoly],
                       u: int | None = None, v: int | None = None) -> tuple[QPoly, ...]:
    """q-version; the part containing ``a`` must carry the smaller labels."""
    u, v = _dims(alpha, beta, u, v)
    tail = [QPoly()] * (v + 2)
    for j in range(v, 0, -1):
        tail[j] = tail[j + 1] + beta[j - 1]
    out = []
    for r in range(1, u + v + 1):
        total = QPoly()
        for i in range(max(1, r - v), min(u, r) + 1):
            term = (alpha[i - 1] * q_binomial(r - 1, i - 1) * q_binomial(u + v - r, u - i)
                    * tail[r - i + 1])
            total = total + term.shift((u - i + 1) * (r - i))
        out.append(total)
    return tuple(out)


# -- recursion over a tree poset ------------------------------------------


def _require_tree(poset: Poset) -> None:
    if not poset.is_tree():
        raise NotTreePosetError("Hasse diagram is not a tree")


def _split(poset: Poset, elems: frozenset[int], a: int, y: int) -> tuple[frozenset[int], frozenset[int]]:
    """Cut the edge ``a - y`` inside ``elems``: (side of ``a``, side of ``y``)."""
    seen = {y}
    stack = [y]
    while stack:
        u = stack.pop()
        for w in poset.neighbors(u):
            if w in elems and w not in seen and not (u == y and w == a):
                seen.add(w)
                stack.append(w)
    side_y = frozenset(seen)
    return elems - side_y, side_y


def _spectrum(poset: Poset, elems: frozenset[int], a: int) -> tuple[int, ...]:
    nbrs = [y for y in poset.neighbors(a) if y in elems]
    if not nbrs:
        return (1,)
    y = nbrs[0]
    side_a, side_y = _split(poset, elems, a, y)
    sa = _spectrum(poset, side_a, a)
    sy = _spectrum(poset, side_y, y)
    if poset.covered_by(a, y):
        return atkinson_combine(sa, sy)
    # a sits above y: work in the dual, where a is below
    return atkinson_combine(sa[::-1], sy[::-1])[::-1]


def atkinson_spectrum(poset: Poset, a: int) -> tuple[int, ...]:
    _require_tree(poset)
    poset._check(a)
    return _spectrum(poset, frozenset(range(poset.n)), a)


def atkinson_count(poset: Poset) -> int:
    return sum(atkinson_spectrum(poset, 0))


def _compatible(omega: Sequence[int], low: frozenset[int], high: frozenset[int]) -> bool:
    return max(omega[x] for x in low) < min(omega[x] for x in high)


def _q_spectrum(poset: Poset, omega: Sequence[int], elems: frozenset[int], a: int) -> tuple[QPoly, ...]:
    nbrs = [y for y in poset.neighbors(a) if y in elems]
    if not nbrs:
        return (QPoly([1]),)
    for y in nbrs:
        side_a, side_y = _split(poset, elems, a, y)
        a_below = poset.covered_by(a, y)
        low, high = (side_a, side_y) if a_below else (side_y, side_a)
        if _compatible(omega, low, high):
            break
    else:
        raise IncompatibleLabelingError(
            f"no split at element {a} puts the smaller labels on the lower side")
    sa = _q_spectrum(poset, omega, side_a, a)
    sy = _q_spectrum(poset, omega, side_y, y)
    if a_below:
        return q_atkinson_combine(sa, sy)
    # reversing extensions and complementing labels keeps inv
    return q_atkinson_combine(sa[::-1], sy[::-1])[::-1]


def q_atkinson_spectrum(lp: LabeledPoset, a: int) -> tuple[QPoly, ...]:
    """inv-weighted spectrum of ``a``; splits are chosen so each is label-compatible."""
    _require_tree(lp.poset)
    lp.poset._check(a)
    return _q_spectrum(lp.poset, lp.omega, frozenset(range(lp.n)), a)


def compatible_labeling(poset: Poset, a: int) -> LabeledPoset:
    """A labeling under which :func:`q_atkinson_spectrum` succeeds for ``a``.

    Each split along the recursion hands the lower side the lower label block.
    """
    _require_tree(poset)
    poset._check(a)
    omega = [0] * poset.n

    def assign(elems: frozenset[int], root: int, lo: int) -> None:
        nbrs = [y for y in poset.neighbors(root) if y in elems]
        if not nbrs:
            omega[root] = lo
            return
        y = nbrs[0]
        side_a, side_y = _split(poset, elems, root, y)
        if poset.covered_by(root, y):
            assign(side_a, root, lo)
            assign(side_y, y, lo + len(side_a))
        else:
            assign(side_y, y, lo)
            assign(side_a, root, lo + len(side_y))

    assign(frozenset(range(poset.n)), a, 1)
    return LabeledPoset(poset, tuple(omega))
