"""d-complete posets: interval scan, recognition, hook lengths and the
hook-product formulas (plain and q-analogue).

Recognition is exhaustive: every interval is tested against the
double-tailed diamond ``d_k(1)``, which is the ordinal sum
``chain(k-2) (+) antichain(2) (+) chain(k-2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod
from typing import NamedTuple

from .errors import (
    AmbiguityError,
    LimitError,
    NonIntegralError,
    NotDCompleteError,
    NotRegularLabelingError,
    NotRootedTreeError,
    UnsupportedLabelingError,
)
from .labeling import LabeledPoset, is_natural, is_regular, labeled_inv, poset_descents
from .poset import Poset, bits
from .qpoly import QPoly, q_hook_quotient

VERIFY_LIMIT = 25


@dataclass(frozen=True)
class DkInterval:
    """A ``d_k``-interval ``[w, z]``; ``neck`` lists the ``k-2`` elements above the side pair."""

    k: int
    w: int
    z: int
    side_pair: tuple[int, int]
    neck: tuple[int, ...]
    elements: frozenset[int]


@dataclass(frozen=True)
class DkMinusSet:
    """A convex set isomorphic to ``d_k(1)`` with its top removed."""

    k: int
    w: int
    tops: tuple[int, ...]
    side_pair: tuple[int, int]
    elements: frozenset[int]


class Violation(NamedTuple):
    clause: int
    message: str


def double_tailed_diamond(k: int) -> Poset:
    """``d_k(1)``: a ``(k-2)``-chain, then an incomparable pair, then a ``(k-2)``-chain."""
    if k < 3:
        raise ValueError("d_k(1) needs k >= 3")
    t = k - 2
    covers = [(i, i + 1) for i in range(t - 1)]
    x, y = t, t + 1
    covers += [(t - 1, x), (t - 1, y), (x, t + 2), (y, t + 2)]
    covers += [(i, i + 1) for i in range(t + 2, 2 * t + 1)]
    return Poset(2 * t + 2, covers)


def _guard(poset: Poset, limit: int | None) -> None:
    limit = VERIFY_LIMIT if limit is None else limit
    if poset.n > limit:
        raise LimitError(f"poset has {poset.n} elements, d-complete check limit is {limit}")


def _diamond_shape(poset: Poset, elements: tuple[int, ...]):
    """Split ``elements`` as lower chain / side pair / upper chain, or None.

    Succeeds iff the set has exactly one incomparable pair; then every other
    element lies below both or above both of that pair.
    """
    pair = None
    for i, x in enumerate(elements):
        for y in elements[i + 1:]:
            if not poset.comparable(x, y):
                if pair is not None:
                    return None
                pair = (x, y)
    if pair is None:
        return None
    x, y = pair
    lower = tuple(t for t in elements if poset.less(t, x))
    upper = tuple(t for t in elements if poset.less(x, t))
    return lower, pair, upper


def _by_height(poset: Poset, elems) -> tuple[int, ...]:
    return tuple(sorted(elems, key=lambda t: poset.down_mask(t).bit_count()))


def find_dk_intervals(poset: Poset, limit: int | None = None) -> list[DkInterval]:
    _guard(poset, limit)
    found = []
    for z in range(poset.n):
        for w in bits(poset.down_mask(z)):
            elems = poset.interval_elements(w, z)
            if len(elems) < 4 or len(elems) % 2:
                continue
            shape = _diamond_shape(poset, elems)
            if shape is None:
                continue
            lower, pair, upper = shape
            if len(lower) != len(upper) or not lower:
                continue
            found.append(
                DkInterval(
                    k=len(upper) + 2,
                    w=w,
                    z=z,
                    side_pair=pair,
                    neck=_by_height(poset, upper),
                    elements=frozenset(elems),
                )
            )
    found.sort(key=lambda d: (d.z, d.k, d.w))
    return found


def find_dk_minus_convex_sets(poset: Poset, limit: int | None = None) -> list[DkMinusSet]:
    _guard(poset, limit)
    found = []
    # k = 3: an element with two upper covers (never an interval)
    for w in range(poset.n):
        ups = poset.upper_covers(w)
        for i, x in enumerate(ups):
            for y in ups[i + 1:]:
                found.append(DkMinusSet(3, w, (x, y), (x, y), frozenset((w, x, y))))
    # k >= 4: the intervals chain(k-2) (+) 2 (+) chain(k-3)
    for t in range(poset.n):
        for w in bits(poset.down_mask(t)):
            elems = poset.interval_elements(w, t)
            if len(elems) < 5 or len(elems) % 2 == 0:
                continue
            shape = _diamond_shape(poset, elems)
            if shape is None:
                continue
            lower, pair, upper = shape
            if len(upper) != len(lower) - 1 or not upper:
                continue
            found.append(DkMinusSet(len(lower) + 2, w, (t,), pair, frozenset(elems)))
    found.sort(key=lambda d: (d.k, d.w, d.tops))
    return found


def d_complete_violation(poset: Poset, limit: int | None = None) -> Violation | None:
    """The first failed d-completeness condition, or None if ``poset`` is d-complete.

    Clause 1: every d_k^- convex set is completed by an element covering its tops.
    Clause 2: the top of a d_k-interval covers nothing outside it.
    Clause 3: no two d_k^- convex sets differ only in their bottom element.
    """
    intervals = find_dk_intervals(poset, limit)
    minus_sets = find_dk_minus_convex_sets(poset, limit)
    by_bottom = {}
    for d in intervals:
        by_bottom.setdefault((d.w, d.k), []).append(d)

    for m in minus_sets:
        completions = [
            d for d in by_bottom.get((m.w, m.k), ())
            if d.elements == m.elements | {d.z}
            and all(poset.covered_by(t, d.z) for t in m.tops)
        ]
        if not completions:
            return Violation(1, f"d_{m.k}^- convex set {sorted(m.elements)} has no completing top")

    for d in intervals:
        outside = [c for c in poset.lower_covers(d.z) if c not in d.elements]
        if outside:
            return Violation(2, f"top {d.z} of d_{d.k}-interval [{d.w},{d.z}] covers {outside[0]} outside it")

    seen = {}
    for m in minus_sets:
        key = (m.k, m.elements - {m.w})
        other = seen.setdefault(key, m.w)
        if other != m.w:
            return Violation(3, f"d_{m.k}^- convex sets with bottoms {other} and {m.w} share their upper part")
    return None


def is_d_complete(poset: Poset, limit: int | None = None) -> bool:
    return d_complete_violation(poset, limit) is None


def require_connected_d_complete(poset: Poset, limit: int | None = None) -> None:
    if not poset.is_connected():
        raise NotDCompleteError("poset is not connected")
    v = d_complete_violation(poset, limit)
    if v is not None:
        raise NotDCompleteError(v.message, clause=v.clause, witness=v)


def neck_elements(poset: Poset, limit: int | None = None) -> frozenset[int]:
    return frozenset(t for d in find_dk_intervals(poset, limit) for t in d.neck)


def top_tree_and_acyclic(poset: Poset, limit: int | None = None) -> tuple[frozenset[int], frozenset[int]]:
    """The top tree (elements whose up-set has no element with two upper
    covers) and its acyclic elements (those outside every neck)."""
    require_connected_d_complete(poset, limit)
    branching = [len(poset.upper_covers(y)) > 1 for y in range(poset.n)]
    top = frozenset(
        x for x in range(poset.n)
        if not branching[x] and not any(branching[y] for y in bits(poset.up_mask(x)))
    )
    return top, top - neck_elements(poset, limit)


def hook_lengths(poset: Poset, verify: bool = True, checked: bool = True,
                 limit: int | None = None) -> tuple[int, ...]:
    """Hook length of every element of a connected d-complete poset.

    Elements outside every neck get their down-set size.  A neck element
    ``z`` is the top of some d_l-interval ``[w, z]`` with side pair
    ``x, y`` and gets ``h(x) + h(y) - h(w)``.  With ``checked`` every such
    interval is evaluated and they must agree.
    """
    if verify:
        require_connected_d_complete(poset, limit)
    tops: dict[int, list[DkInterval]] = {}
    for d in find_dk_intervals(poset, limit):
        tops.setdefault(d.z, []).append(d)
    hooks = [0] * poset.n
    for z in poset.topological_order():
        cands = tops.get(z)
        if not cands:
            hooks[z] = poset.down_size(z)
            continue
        values = []
        for d in cands if checked else cands[:1]:
            x, y = d.side_pair
            values.append(hooks[x] + hooks[y] - hooks[d.w])
        if checked and len(set(values)) > 1:
            raise AmbiguityError(f"neck element {z} gets hook lengths {sorted(set(values))}")
        hooks[z] = values[0]
    return tuple(hooks)


def hook_product(poset: Poset, verify: bool = True, limit: int | None = None) -> int:
    return prod(hook_lengths(poset, verify=verify, limit=limit))


def hook_count(poset: Poset, verify: bool = True, limit: int | None = None) -> int:
    """``n! / prod h(x)``; raises :class:`NonIntegralError` if that is not an integer."""
    num, den = factorial(poset.n), hook_product(poset, verify, limit)
    if num % den:
        raise NonIntegralError(f"{num}/{den} is not an integer")
    return num // den


def hook_ebar(poset: Poset, verify: bool = True, limit: int | None = None) -> Fraction:
    return Fraction(1, hook_product(poset, verify, limit))


def maj_labeled(lp: LabeledPoset, hooks: tuple[int, ...] | None = None) -> int:
    """Sum of hook lengths over the descents of the labeling."""
    if hooks is None:
        hooks = hook_lengths(lp.poset)
    return sum(hooks[x] for x in poset_descents(lp))


def maj_formula_applies(lp: LabeledPoset) -> bool:
    """Whether ``q^maj [n]_q! / prod [h]_q`` is known to be the maj polynomial.

    Any labeling works on a rooted tree.  Off trees only natural labelings are
    accepted: the reversed diamond already gives q^5+q^7 against q^4+q^6.
    """
    return is_natural(lp) or lp.poset.is_rooted_tree()


def q_hook_maj(lp: LabeledPoset, verify: bool = True, limit: int | None = None) -> QPoly:
    """``q^maj(P, w) [n]_q! / prod [h(x)]_q`` for a connected d-complete poset.

    Raises :class:`UnsupportedLabelingError` outside :func:`maj_formula_applies`.
    """
    if not maj_formula_applies(lp):
        raise UnsupportedLabelingError("labeling is neither natural nor on a rooted tree")
    hooks = hook_lengths(lp.poset, verify=verify, limit=limit)
    return q_hook_quotient(lp.n, hooks).shift(maj_labeled(lp, hooks))


def q_inv_rooted_tree(lp: LabeledPoset) -> QPoly:
    """``q^inv(P, w) [n]_q! / prod [h(x)]_q`` for a regularly labeled rooted tree."""
    if not lp.poset.is_rooted_tree():
        raise NotRootedTreeError("poset is not a rooted tree")
    if not is_regular(lp):
        raise NotRegularLabelingError("labeling is not regular")
    hooks = [lp.poset.down_size(x) for x in range(lp.n)]
    return q_hook_quotient(lp.n, hooks).shift(labeled_inv(lp))
