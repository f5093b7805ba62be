"""q-analogues of the mobile determinant.

maj: any labeling of a mobile tree, natural labelings otherwise.  inv:
mobile trees whose labeling increases block by block along the path order
and is regular on every entry of the component array.  Regularity on each
block alone is not enough; see :func:`inv_det_applies`.
"""

from __future__ import annotations

from itertools import combinations, islice, permutations
from typing import Callable, Sequence

from . import oracle
from .dcomplete import hook_lengths
from .errors import (
    DivisionError, LimitError, NonPolynomialError, NotMobileTreeError, NotPartitionedRegularError, UnsupportedLabelingError,
)
from .folding import component_tree
from .labeling import LabeledPoset, is_block_partitioned, is_natural, is_regular, labeled_inv, poset_descents
from .mobile import MobileSpec, Realization, realize
from .poset import CoverPair, Poset, fold
from .qpoly import QFraction, QPoly, poly_gcd, q_factorial, q_int

QEntry = Callable[[int, int], QFraction]


def poly_lcm(a: QPoly, b: QPoly) -> QPoly:
    return (a * b).exact_div(poly_gcd(a, b)).primitive()


def _bareiss_poly(rows: list[list[QPoly]]) -> QPoly:
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return QPoly([1])
    sign = 1
    prev = QPoly([1])
    for c in range(n - 1):
        if not a[c][c]:
            swap = next((r for r in range(c + 1, n) if a[r][c]), None)
            if swap is None:
                return QPoly()
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        piv = a[c][c]
        for r in range(c + 1, n):
            for s in range(c + 1, n):
                a[r][s] = (a[r][s] * piv - a[r][c] * a[c][s]).exact_div(prev)
            a[r][c] = QPoly()
        prev = piv
    return a[n - 1][n - 1] * sign


def q_det_engine(k: int, entry: QEntry) -> QFraction:
    """Determinant of the Hessenberg matrix with q-rational entries.

    Columns are cleared by the lcm of their denominators, the polynomial
    matrix goes through Bareiss elimination over Z[q], and the lcms are
    divided out at the end.
    """
    one = QFraction(1)
    zero = QFraction(0)
    m = [[entry(i, j) if j >= i else (one if j == i - 1 else zero) for j in range(k + 1)]
         for i in range(k + 1)]
    scales = []
    for j in range(k + 1):
        s = QPoly([1])
        for i in range(k + 1):
            s = poly_lcm(s, m[i][j].den)
        scales.append(s)
    ints = [[m[i][j].num * scales[j].exact_div(m[i][j].den) for j in range(k + 1)] for i in range(k + 1)]
    denom = QPoly([1])
    for s in scales:
        denom = denom * s
    return QFraction(_bareiss_poly(ints), denom)


def _polynomial(value: QFraction, n: int) -> QPoly:
    try:
        return (value * q_factorial(n)).to_poly()
    except DivisionError as exc:
        raise NonPolynomialError(f"[n]_q! * det is not a polynomial: {exc}") from exc


def _as_realization(spec: MobileSpec | Realization) -> Realization:
    return spec if isinstance(spec, Realization) else realize(spec)


def _hook_denominator(hooks: Sequence[int]) -> QPoly:
    out = QPoly([1])
    for h in hooks:
        out = out * q_int(h)
    return out


def q_maj_det(spec: MobileSpec | Realization, omega: Sequence[int], check: bool = True) -> QPoly:
    """``e_q^maj`` of a labeled mobile from ``q^maj / prod [h]_q`` array entries.

    Entries that are not rooted trees need ``omega`` natural on the whole
    mobile; otherwise :class:`UnsupportedLabelingError` is raised.  With
    ``check=False`` the formula is evaluated regardless.
    """
    real = _as_realization(spec)
    arr = real.array()
    folded = LabeledPoset(arr.folded, tuple(omega))
    natural = is_natural(LabeledPoset(real.poset, tuple(omega)))
    cache = {}
    for i in range(arr.k + 1):
        for j in range(i, arr.k + 1):
            sub = folded.restrict(arr.elements(i, j))
            if check and not natural and not sub.poset.is_rooted_tree():
                raise UnsupportedLabelingError(f"entry ({i}, {j}) is not a rooted tree and the labeling is not natural")
            hooks = hook_lengths(sub.poset, verify=False, limit=max(sub.n, 25))
            maj = sum(hooks[x] for x in poset_descents(sub))
            cache[i, j] = QFraction(QPoly.monomial(maj), _hook_denominator(hooks))
    return _polynomial(q_det_engine(arr.k, lambda i, j: cache[i, j]), real.poset.n)


def _require_mobile_tree(real: Realization) -> None:
    for _, hanger in real.spec.hangers:
        if not hanger.is_rooted_tree():
            raise NotMobileTreeError("every hanger must be a rooted tree")
    for anchor in real.spec.anchors:
        if not anchor.poset.is_rooted_tree():
            raise NotMobileTreeError("the anchor must be a rooted tree")


def component_blocks(real: Realization) -> list[tuple[int, ...]]:
    """Components of ``P - F`` in the induced path order."""
    tree = component_tree(real.poset, real.folds())
    return [tree.components[v] for v in real.path_order()]


def is_sigma_partitioned_regular(real: Realization, omega: Sequence[int]) -> bool:
    """Blocks increase along the path order and each block is regular on its own."""
    lp = LabeledPoset(real.poset, tuple(omega))
    blocks = component_blocks(real)
    return is_block_partitioned(lp, blocks) and all(is_regular(lp.restrict(b)) for b in blocks)


def _entry_sets(real: Realization) -> tuple[Poset, list[list[tuple[int, ...]]]]:
    """Folded poset and, per last block ``j``, the element sets of entries ``(i, j)``."""
    arr = real.array()
    return arr.folded, [[arr.elements(i, j) for i in range(j + 1)] for j in range(arr.k + 1)]


def inv_det_applies(real: Realization, omega: Sequence[int]) -> bool:
    """Partitioned along the path order and regular on every array entry.

    This is what makes each entry a regularly labeled rooted tree.  The
    ribbon ``z1 > z2 < z3`` with a 2-chain resting its top on ``z2`` has
    block-regular labelings but none that pass here, and the inv determinant
    is wrong for all of them.
    """
    if not is_block_partitioned(LabeledPoset(real.poset, tuple(omega)), component_blocks(real)):
        return False
    folded, entries = _entry_sets(real)
    lp = LabeledPoset(folded, tuple(omega))
    return all(is_regular(lp.restrict(e)) for row in entries for e in row)


def _interval_orders(poset: Poset, x: int):
    """Orders of the down-set of ``x`` in which every subtree is contiguous."""
    kids = poset.lower_covers(x)
    if not kids:
        yield (x,)
        return
    for arrangement in permutations((x,) + kids):
        def expand(i):
            if i == len(arrangement):
                yield ()
                return
            head = arrangement[i]
            parts = [(head,)] if head == x else _interval_orders(poset, head)
            for part in parts:
                for rest in expand(i + 1):
                    yield part + rest
        yield from expand(0)


def _block_candidates(sub: Poset, budget: int):
    """Labelings of one block: subtree-contiguous orders first, then everything small."""
    seen = set()
    (root,) = sub.maximal()
    for order in islice(_interval_orders(sub, root), budget):
        labels = [0] * sub.n
        for pos, y in enumerate(order):
            labels[y] = pos
        seen.add(tuple(labels))
        yield tuple(labels)
    if sub.n <= 7:
        for labels in permutations(range(sub.n)):
            if labels not in seen:
                yield labels


def sigma_partitioned_regular_labeling(spec: MobileSpec | Realization, budget: int = 200_000) -> LabeledPoset:
    """A labeling accepted by :func:`inv_det_applies`, found by backtracking.

    Raises :class:`NotPartitionedRegularError` when the search space is
    exhausted and :class:`LimitError` when ``budget`` candidate blocks have
    been tried.
    """
    real = _as_realization(spec)
    _require_mobile_tree(real)
    blocks = component_blocks(real)
    folded, entries = _entry_sets(real)
    starts = [sum(len(b) for b in blocks[:j]) + 1 for j in range(len(blocks))]
    subs = [real.poset.subposet(b) for b in blocks]
    omega = [0] * real.poset.n
    tried = 0

    def place(j: int) -> bool:
        nonlocal tried
        if j == len(blocks):
            return True
        for labels in _block_candidates(subs[j], budget):
            tried += 1
            if tried > budget:
                raise LimitError(f"no labeling found within {budget} candidate blocks")
            for x, offset in zip(blocks[j], labels):
                omega[x] = starts[j] + offset
            if j + 1 < len(blocks):
                # labels above this block are still unset; give them the top range
                filler = list(range(starts[j + 1], real.poset.n + 1))
                for x, label in zip((y for b in blocks[j + 1:] for y in b), filler):
                    omega[x] = label
            lp = LabeledPoset(folded, tuple(omega))
            if all(is_regular(lp.restrict(e)) for e in entries[j]) and place(j + 1):
                return True
        return False

    if not place(0):
        raise NotPartitionedRegularError("no partitioned labeling is regular on every array entry")
    return LabeledPoset(real.poset, tuple(omega))


def q_inv_det(spec: MobileSpec | Realization, omega: Sequence[int], check: bool = True) -> QPoly:
    """``e_q^inv`` of a labeled mobile tree from ``q^inv / prod [h]_q`` array entries.

    Raises :class:`NotPartitionedRegularError` unless :func:`inv_det_applies`;
    ``check=False`` only keeps the mobile tree requirement.
    """
    real = _as_realization(spec)
    _require_mobile_tree(real)
    if check and not inv_det_applies(real, omega):
        raise NotPartitionedRegularError("labeling is not partitioned and regular on every array entry")
    arr = real.array()
    folded = LabeledPoset(arr.folded, tuple(omega))
    cache = {}
    for i in range(arr.k + 1):
        for j in range(i, arr.k + 1):
            sub = folded.restrict(arr.elements(i, j))
            hooks = [sub.poset.down_size(x) for x in range(sub.n)]
            cache[i, j] = QFraction(QPoly.monomial(labeled_inv(sub)), _hook_denominator(hooks))
    return _polynomial(q_det_engine(arr.k, lambda i, j: cache[i, j]), real.poset.n)


def q_alternating_sum(lp: LabeledPoset, folds: Sequence[CoverPair], stat: str,
                      limit: int | None = None) -> QPoly:
    """``sum over S of (-1)^|S|`` of the oracle generating polynomials of ``P_{S,F}``."""
    folds = list(folds)
    total = QPoly()
    for size in range(len(folds) + 1):
        for subset in combinations(folds, size):
            term = oracle.stat_gen_poly(LabeledPoset(fold(lp.poset, subset, folds), lp.omega), stat, limit)
            total = total - term if size % 2 else total + term
    return total
