"""Shared generators and small posets for the test suite."""

import random
from pathlib import Path

from hypothesis import strategies as st

from linext.cli.dsl import parse
from linext.dcomplete import double_tailed_diamond, top_tree_and_acyclic
from linext.labeling import LabeledPoset, is_regular
from linext.mobile import Anchor, MobileSpec
from linext.poset import Poset, chain, from_covers

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "linext" / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


def load_fixture(name):
    return parse((FIXTURES / name).read_text(encoding="utf-8"))


# -- small named posets --------------------------------------------------------

DIAMOND = from_covers(4, [(0, 1), (0, 2), (1, 3), (2, 3)])
# seven elements a..g, bridges (c,e) and (d,g)
BRIDGED = from_covers(7, [(0, 2), (0, 3), (1, 4), (2, 4), (2, 5), (3, 5), (3, 6)])
X_POSET = from_covers(5, [(0, 2), (1, 2), (2, 3), (2, 4)])


def young_diagram(shape):
    """Cells of a partition; (0, 0) is the top, each cell covered by its left/upper neighbour."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    index = {c: t for t, c in enumerate(cells)}
    covers = []
    for (i, j), t in index.items():
        for nb in ((i - 1, j), (i, j - 1)):
            if nb in index:
                covers.append((t, index[nb]))
    return Poset(len(cells), covers)


def shifted_diagram(shape):
    """Shifted shape: row i starts in column i."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(i, i + row)]
    index = {c: t for t, c in enumerate(cells)}
    covers = []
    for (i, j), t in index.items():
        for nb in ((i - 1, j), (i, j - 1)):
            if nb in index:
                covers.append((t, index[nb]))
    return Poset(len(cells), covers)


# -- random generators (seeded, deterministic) -----------------------------------


def random_tree(rng, n, rooted=False):
    """Random tree poset on n elements; with ``rooted`` every element gets one upper cover."""
    covers = []
    for i in range(1, n):
        j = rng.randrange(i)
        if rooted or rng.random() < 0.5:
            covers.append((i, j))
        else:
            covers.append((j, i))
    perm = list(range(n))
    rng.shuffle(perm)
    return Poset(n, [(perm[a], perm[b]) for a, b in covers])


def random_connected_poset(rng, n, extra=0.25):
    """A random tree with a few extra relations: connected, usually with some bridges."""
    while True:
        base = random_tree(rng, n)
        order = base.topological_order()
        pos = {x: i for i, x in enumerate(order)}
        pairs = list(base.covers)
        for a in range(n):
            for b in range(n):
                if pos[a] < pos[b] and rng.random() < extra / n * 2:
                    pairs.append((a, b))
        p = Poset(n, pairs)
        if p.is_connected():
            return p


def random_rooted_tree(rng, n):
    return random_tree(rng, n, rooted=True)


HANGER_POOL = [chain(1), chain(2), chain(3), DIAMOND, double_tailed_diamond(4)]


def _acyclic_choices(q):
    return sorted(top_tree_and_acyclic(q)[1])


def random_mobile(rng, max_n, trees_only=False):
    """Random MobileSpec with at most ``max_n`` elements."""
    while True:
        r = rng.randint(1, min(6, max_n))
        descents = frozenset(i for i in range(1, r) if rng.random() < 0.5)
        budget = max_n - r
        hangers = []
        for z in range(1, r + 1):
            while budget > 0 and rng.random() < 0.35:
                if trees_only:
                    h = random_rooted_tree(rng, rng.randint(1, min(3, budget)))
                else:
                    pool = [h for h in HANGER_POOL if h.n <= budget]
                    if rng.random() < 0.3 and budget >= 1:
                        h = random_rooted_tree(rng, rng.randint(1, min(3, budget)))
                    else:
                        h = rng.choice(pool)
                hangers.append((z, h))
                budget -= h.n
        anchors = ()
        if budget > 0 and rng.random() < 0.5:
            if trees_only or rng.random() < 0.5:
                q = random_rooted_tree(rng, rng.randint(1, min(3, budget)))
            else:
                pool = [h for h in HANGER_POOL if h.n <= budget]
                q = rng.choice(pool)
            anchors = (Anchor(rng.randint(1, r), q, rng.choice(_acyclic_choices(q))),)
        spec = MobileSpec(r, descents, tuple(hangers), anchors)
        if spec.size >= 2:
            return spec


def random_labeling(rng, poset):
    labels = list(range(1, poset.n + 1))
    rng.shuffle(labels)
    return LabeledPoset(poset, tuple(labels))


def random_block_regular(rng, poset, blocks, tries=30):
    """Labels increasing block to block, each block regular; random where possible."""
    from linext.labeling import tree_regular_labeling

    omega = [0] * poset.n
    start = 1
    for block in blocks:
        sub = poset.subposet(block)
        chosen = None
        for _ in range(tries):
            labels = list(range(1, len(block) + 1))
            rng.shuffle(labels)
            if is_regular(LabeledPoset(sub, tuple(labels))):
                chosen = labels
                break
        if chosen is None:
            chosen = list(tree_regular_labeling(sub))
        for x, w in zip(block, chosen):
            omega[x] = w + start - 1
        start += len(block)
    return tuple(omega)


# -- hypothesis strategies ----------------------------------------------------------


@st.composite
def posets(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return Poset(n, [(a, b) for a, b in pairs if a < b])


@st.composite
def trees(draw, max_n=9):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_n))
    return random_tree(random.Random(seed), n)


__all__ = [
    "BRIDGED", "DIAMOND", "X_POSET", "double_tailed_diamond", "young_diagram", "shifted_diagram",
    "random_tree", "random_connected_poset", "random_rooted_tree", "random_mobile",
    "random_labeling", "random_block_regular", "posets", "trees", "load_fixture",
]
