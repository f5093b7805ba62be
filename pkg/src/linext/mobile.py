"""Mobile posets: a ribbon with d-complete posets hung below its elements
and at most one d-complete poset resting on top of one ribbon element.

Ribbon element ``z_i`` (1-based) is always element ``i - 1`` of a realized
mobile.  Hangers and the anchor follow, in the order they are listed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

from .dcomplete import hook_ebar, require_connected_d_complete, top_tree_and_acyclic
from .errors import (
    ClosedFormMismatchError,
    InterpolationMismatchError,
    LimitError,
    MultipleAnchorError,
    NonIntegralError,
    NotDCompleteError,
    NotTreePosetError,
)
from .folding import ComponentArray, component_array, component_tree, det_engine
from .poset import CoverPair, Poset, chain, disjoint_sum, full_fold, oplus, slant_sum

RECOGNITION_LIMIT = 15


# -- ribbons ---------------------------------------------------------------


def _check_descents(n: int, descents: Iterable[int]) -> frozenset[int]:
    if n < 1:
        raise ValueError("a ribbon needs at least one element")
    s = frozenset(descents)
    bad = sorted(i for i in s if not 1 <= i <= n - 1)
    if bad:
        raise IndexError(f"descent {bad[0]} out of range 1..{n - 1}")
    return s


def ribbon(n: int, descents: Iterable[int]) -> Poset:
    """``z_{i+1} < z_i`` for ``i`` in ``descents``, ``z_i < z_{i+1}`` otherwise."""
    s = _check_descents(n, descents)
    return Poset(n, [(i, i - 1) if i in s else (i - 1, i) for i in range(1, n)])


def macmahon_count(n: int, descents: Iterable[int]) -> int:
    """Permutations of ``n`` with the given descent set, as ``n! det(1/(s_{j+1}-s_i)!)``."""
    s = [0] + sorted(_check_descents(n, descents)) + [n]
    k = len(s) - 2
    det = det_engine(k, lambda i, j: Fraction(1, factorial(s[j + 1] - s[i])))
    return _integral(det * factorial(n))


def _integral(value: Fraction) -> int:
    if value.denominator != 1:
        raise NonIntegralError(f"n! * det = {value} is not an integer")
    return value.numerator


# -- specs and realization --------------------------------------------------


@dataclass(frozen=True)
class Anchor:
    """``poset`` rests on ribbon element ``z`` (1-based): ``z < q``."""

    z: int
    poset: Poset
    q: int


@dataclass(frozen=True)
class MobileSpec:
    n: int
    descents: frozenset[int]
    hangers: tuple[tuple[int, Poset], ...] = ()
    anchors: tuple[Anchor, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "descents", frozenset(self.descents))
        object.__setattr__(self, "hangers", tuple(self.hangers))
        object.__setattr__(self, "anchors", tuple(self.anchors))

    @classmethod
    def build(cls, n: int, descents: Iterable[int],
              hangers: Mapping[int, Sequence[Poset]] | None = None,
              anchor: Anchor | None = None) -> MobileSpec:
        hung = tuple((z, h) for z in sorted(hangers or {}) for h in hangers[z])
        return cls(n, frozenset(descents), hung, () if anchor is None else (anchor,))

    @property
    def anchor(self) -> Anchor | None:
        if len(self.anchors) > 1:
            raise MultipleAnchorError(f"{len(self.anchors)} anchors given, at most one allowed")
        return self.anchors[0] if self.anchors else None

    @property
    def free_standing(self) -> bool:
        return self.anchor is None

    @property
    def size(self) -> int:
        return self.n + sum(h.n for _, h in self.hangers) + sum(a.poset.n for a in self.anchors)


@dataclass(frozen=True)
class Part:
    kind: str  # "hanger" or "anchor"
    z: int
    elements: tuple[int, ...]


@dataclass(frozen=True)
class Realization:
    spec: MobileSpec
    poset: Poset
    parts: tuple[Part, ...] = field(default=())

    @property
    def ribbon(self) -> tuple[int, ...]:
        return tuple(range(self.spec.n))

    def folds(self) -> tuple[CoverPair, ...]:
        return path_folds(self.spec)

    def path_order(self) -> tuple[int, ...]:
        """Vertices of the component tree sorted by the ribbon elements they contain."""
        tree = component_tree(self.poset, self.folds())
        first = [min(x for x in comp if x < self.spec.n) for comp in tree.components]
        return tuple(sorted(range(len(first)), key=first.__getitem__))

    def array(self) -> ComponentArray:
        folds = self.folds()
        tree = component_tree(self.poset, folds)
        return component_array(self.poset, folds, self.path_order(), tree)


def _root(poset: Poset, what: str) -> int:
    tops = poset.maximal()
    if len(tops) != 1:
        raise NotDCompleteError(f"{what} has {len(tops)} maximal elements")
    return tops[0]


def realize(spec: MobileSpec, check: bool = True) -> Realization:
    """Concrete poset of ``spec``; ``check`` verifies every part is d-complete."""
    anchor = spec.anchor
    base = ribbon(spec.n, spec.descents)
    parts = []
    for z, hanger in spec.hangers:
        if not 1 <= z <= spec.n:
            raise IndexError(f"hanger attached to z_{z}, ribbon has {spec.n} elements")
        if check:
            require_connected_d_complete(hanger, limit=max(hanger.n, 25))
        start = base.n
        base = slant_sum(base, z - 1, hanger, _root(hanger, "hanger"))
        parts.append(Part("hanger", z, tuple(range(start, base.n))))
    if anchor is not None:
        if not 1 <= anchor.z <= spec.n:
            raise IndexError(f"anchor rests on z_{anchor.z}, ribbon has {spec.n} elements")
        q_poset = anchor.poset
        q_poset._check(anchor.q)
        if check:
            _, acyclic = top_tree_and_acyclic(q_poset, limit=max(q_poset.n, 25))
            if anchor.q not in acyclic:
                raise NotDCompleteError(f"anchor element {anchor.q} is not acyclic")
        start = base.n
        base = oplus(disjoint_sum(base, q_poset), [(anchor.z - 1, start + anchor.q)])
        parts.append(Part("anchor", anchor.z, tuple(range(start, base.n))))
    return Realization(spec, base, tuple(parts))


def path_folds(spec: MobileSpec) -> tuple[CoverPair, ...]:
    """Ribbon covers to fold, listed along the ribbon.

    Free-standing: every descent cover.  Anchored at ``z_j``: descents
    before ``j`` and ascents from ``j`` on.
    """
    s = spec.descents
    anchor = spec.anchor
    out = []
    for i in range(1, spec.n):
        lo, hi = i - 1, i  # z_i, z_{i+1}
        if anchor is None or i < anchor.z:
            if i in s:
                out.append((hi, lo))
        elif i not in s:
            out.append((lo, hi))
    return tuple(out)


def mobile_ebar_matrix(real: Realization, check: bool = True) -> tuple[ComponentArray, dict]:
    arr = real.array()
    entries = {}
    for i in range(arr.k + 1):
        for j in range(i, arr.k + 1):
            e = arr.entry(i, j)
            entries[i, j] = hook_ebar(e, verify=check, limit=max(e.n, 25))
    return arr, entries


def count_mobile(spec: MobileSpec | Realization, check: bool = True) -> int:
    """``n! det`` of the hook-product matrix over the path-ordered component array."""
    real = spec if isinstance(spec, Realization) else realize(spec, check)
    arr, entries = mobile_ebar_matrix(real, check)
    det = det_engine(arr.k, lambda i, j: entries[i, j])
    return _integral(det * factorial(real.poset.n))


# -- recognition ----------------------------------------------------------


@dataclass(frozen=True)
class Recognition:
    """``spec`` realizes the input poset; realized element ``t`` is ``element_map[t]``."""

    spec: MobileSpec
    ribbon: tuple[int, ...]
    folds: tuple[CoverPair, ...]
    element_map: tuple[int, ...]


def _simple_paths(poset: Poset) -> list[tuple[int, ...]]:
    paths = []

    def grow(path: list[int]):
        paths.append(tuple(path))
        for v in poset.neighbors(path[-1]):
            if v not in path:
                path.append(v)
                grow(path)
                path.pop()

    for start in range(poset.n):
        grow([start])
    return sorted(paths)


def _branch(poset: Poset, root: int, parent: int) -> tuple[int, ...]:
    """Elements reachable from ``root`` without using the edge to ``parent``."""
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in poset.neighbors(u):
            if v not in seen and not (u == root and v == parent):
                seen.add(v)
                stack.append(v)
    return tuple(sorted(seen))


def _try_ribbon(poset: Poset, path: tuple[int, ...]) -> Recognition | None:
    on_path = set(path)
    descents = [i for i in range(1, len(path)) if poset.covered_by(path[i], path[i - 1])]
    hangers: dict[int, list[Poset]] = {}
    hang_elems: list[tuple[int, ...]] = []
    anchor = None
    anchor_elems: tuple[int, ...] = ()
    for pos, z in enumerate(path, start=1):
        for y in poset.neighbors(z):
            if y in on_path:
                continue
            elems = _branch(poset, y, z)
            sub = poset.subposet(elems)
            if not sub.is_rooted_tree():
                return None
            if poset.covered_by(y, z):
                if sub.maximal() != (elems.index(y),):
                    return None
                hangers.setdefault(pos, []).append(sub)
                hang_elems.append(elems)
            else:
                if anchor is not None:
                    return None
                anchor = Anchor(pos, sub, elems.index(y))
                anchor_elems = elems
    spec = MobileSpec.build(len(path), descents, hangers, anchor)
    mapping = list(path)
    # hangers are realized in ascending z order, which is how hang_elems was filled
    for elems in hang_elems:
        mapping.extend(elems)
    mapping.extend(anchor_elems)
    real = realize(spec, check=False)
    if sorted(mapping) != list(range(poset.n)) or real.poset.relabel(mapping) != poset:
        return None
    folds = tuple((mapping[x], mapping[y]) for x, y in path_folds(spec))
    return Recognition(spec, path, folds, tuple(mapping))


def recognize_mobile_tree(poset: Poset, limit: int | None = None) -> Recognition | None:
    """First ribbon (lexicographic over Hasse paths) presenting ``poset`` as a mobile tree."""
    limit = RECOGNITION_LIMIT if limit is None else limit
    if poset.n > limit:
        raise LimitError(f"poset has {poset.n} elements, recognition limit is {limit}")
    if not poset.is_tree():
        raise NotTreePosetError("Hasse diagram is not a tree")
    for path in _simple_paths(poset):
        found = _try_ribbon(poset, path)
        if found is not None:
            return found
    return None


def has_rooted_path_folding(poset: Poset) -> bool:
    """Brute force: some fold set makes ``P_F`` a rooted tree with a path component tree."""
    if not poset.is_tree():
        raise NotTreePosetError("Hasse diagram is not a tree")
    covers = sorted(poset.covers)
    for size in range(len(covers) + 1):
        for folds in combinations(covers, size):
            if not full_fold(poset, folds).is_rooted_tree():
                continue
            tree = component_tree(poset, folds)
            if tree.is_path():
                return True
    return False


# -- Euler-type families -----------------------------------------------------


def euler_spec(kind: str, p: int, k: int) -> MobileSpec:
    """Up-down ``2k``-ribbon with a ``p``-chain (``chain``) or ``p`` single
    elements (``antichain``) hung under each minimum."""
    if p < 0 or k < 1:
        raise ValueError("need p >= 0 and k >= 1")
    if kind == "chain":
        under = [chain(p)] if p else []
    elif kind == "antichain":
        under = [chain(1)] * p
    else:
        raise ValueError(f"unknown family {kind!r}")
    minima = range(1, 2 * k, 2)
    return MobileSpec.build(2 * k, range(2, 2 * k - 1, 2), {z: under for z in minima})


def euler_closed_form(kind: str, p: int, k: int, printed: bool = False) -> Fraction:
    """``((p+2)k)! det(c)`` with the closed-form entries for each family.

    For ``antichain``, ``printed=True`` uses the factor ``rp + rk - 1`` in
    place of ``rp + 2r - 1``; the two agree only when ``k = 2``.
    """
    if kind == "chain":
        def factor(r):
            return factorial(p) * (r * p + 2 * r - 1) * (r * p + 2 * r)
    elif kind == "antichain":
        def factor(r):
            first = r * p + r * k - 1 if printed else r * p + 2 * r - 1
            return first * (r * p + 2 * r)
    else:
        raise ValueError(f"unknown family {kind!r}")
    det = det_engine(k - 1, lambda i, j: Fraction(1, prod(factor(r) for r in range(1, j - i + 2))))
    return det * factorial((p + 2) * k)


def euler_family(kind: str, p: int, k: int, closed_form: bool = False) -> tuple[Poset, int]:
    """The family member and its count from the general mobile pipeline.

    With ``closed_form`` the closed-form determinant is also evaluated and
    must agree.
    """
    spec = euler_spec(kind, p, k)
    real = realize(spec)
    value = count_mobile(real)
    if closed_form:
        other = euler_closed_form(kind, p, k)
        if other != value:
            raise ClosedFormMismatchError(f"closed form gives {other}, pipeline gives {value}")
    return real.poset, value


# -- descent polynomials ------------------------------------------------------


@dataclass(frozen=True)
class BinomialPolynomial:
    """``sum coeffs[t] * binom(N, t)``."""

    coeffs: tuple[Fraction, ...]

    def __call__(self, n: int) -> Fraction:
        return sum((c * comb(n, t) for t, c in enumerate(self.coeffs)), Fraction(0))

    @property
    def degree(self) -> int:
        nz = [t for t, c in enumerate(self.coeffs) if c]
        return nz[-1] if nz else -1

    def __str__(self) -> str:
        terms = []
        for t in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[t]
            if not c:
                continue
            mag = abs(c)
            mag_s = str(mag) if mag.denominator == 1 else f"({mag})"
            if t == 0:
                body = mag_s
            else:
                body = f"binom(N,{t})" if mag == 1 else f"{mag_s}*binom(N,{t})"
            if not terms:
                terms.append(body if c > 0 else "-" + body)
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms) if terms else "0"


def extend_ribbon(spec: MobileSpec, m: int) -> MobileSpec:
    """Append ``z_{k+1} < ... < z_m`` above the last ribbon element."""
    if spec.anchors:
        raise ValueError("descent polynomials need a free-standing mobile")
    if m < spec.n:
        raise ValueError(f"m = {m} is shorter than the ribbon ({spec.n})")
    return MobileSpec(m, spec.descents, spec.hangers)


def descent_degree(spec: MobileSpec) -> int:
    """Size of the part left of the last descent cover; 0 without descents."""
    if not spec.descents:
        return 0
    i = max(spec.descents)
    return i + sum(h.n for z, h in spec.hangers if z <= i)


def _solve(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    # Gauss-Jordan over the rationals; the system here is square and unitriangular-ish.
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for c in range(n):
        piv = next(r for r in range(c, n) if a[r][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [a[i][n] / a[i][i] for i in range(n)]


def descent_polynomial(spec: MobileSpec, check_points: int = 1) -> BinomialPolynomial:
    """``e(P_{Z,m})`` as a polynomial in ``N = |P_{Z,m}|`` in the binomial basis.

    Samples ``m = k .. k+d`` through the mobile pipeline and interpolates
    exactly; ``check_points`` further values of ``m`` must then agree.
    """
    d = descent_degree(spec)
    base = spec.size
    k = spec.n
    ns = [base + t for t in range(d + 1)]
    values = [Fraction(count_mobile(extend_ribbon(spec, k + t))) for t in range(d + 1)]
    coeffs = _solve([[Fraction(comb(n, t)) for t in range(d + 1)] for n in ns], values)
    poly = BinomialPolynomial(tuple(coeffs))
    for extra in range(d + 1, d + 1 + check_points):
        got = count_mobile(extend_ribbon(spec, k + extra))
        want = poly(base + extra)
        if got != want:
            raise InterpolationMismatchError(f"at N = {base + extra}: interpolated {want}, counted {got}")
    return poly
