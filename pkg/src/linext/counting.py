"""One entry point for ``e(P)`` by any of the four methods.

Disconnected posets are split into components; the counts combine as
``multinomial(n; n_1, ..., n_c) * prod e(P_i)``.
"""

from __future__ import annotations

from math import factorial
from typing import Literal, Sequence

from . import oracle
from .atkinson import atkinson_count
from .dcomplete import hook_count
from .errors import LinextError, NotMobileTreeError
from .folding import det_count
from .mobile import count_mobile, recognize_mobile_tree
from .poset import CoverPair, Poset

Method = Literal["oracle", "det", "hook", "atkinson"]
METHODS = ("oracle", "det", "hook", "atkinson")


def _connected(poset: Poset, method: str, limit: int | None) -> int:
    if method == "oracle":
        return oracle.count(poset, limit)
    if method == "hook":
        return hook_count(poset, limit=max(poset.n, 25))
    if method == "atkinson":
        return atkinson_count(poset)
    if method == "det":
        if poset.n == 1:
            return 1
        found = recognize_mobile_tree(poset) if poset.is_tree() else None
        if found is None:
            raise NotMobileTreeError("det without explicit folds needs a mobile tree poset")
        return count_mobile(found.spec)
    raise ValueError(f"unknown method {method!r}")


def count(poset: Poset, method: Method = "oracle", folds: Sequence[CoverPair] | None = None,
          limit: int | None = None) -> int:
    """``e(P)``; with ``folds`` the det method uses the oracle on array entries."""
    if folds:
        if method != "det":
            raise LinextError("explicit folds only apply to the det method")
        return det_count(poset, folds, evaluator=lambda e: oracle.ebar(e, limit))
    comps = poset.components()
    if len(comps) == 1:
        return _connected(poset, method, limit)
    total = factorial(poset.n)
    for comp in comps:
        total //= factorial(len(comp))
    for comp in comps:
        total *= _connected(poset.subposet(comp), method, limit)
    return total
