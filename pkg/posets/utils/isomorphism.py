"""
Order-isomorphism search between finite posets.

Elements are first bucketed by an invariant vector; the backtracking only
pairs elements from matching buckets and checks comparabilities against the
partial assignment as it grows.
"""
import logging
from collections import Counter
from typing import Dict, List, Optional, Tuple

from posets.utils.poset import FinitePoset, MonotoneMap, popcount

logger = logging.getLogger(__name__)


def element_invariants(poset: FinitePoset) -> List[Tuple[int, ...]]:
    """(level, co-level, #upper covers, #lower covers, |U_x|, |F_x|) per element."""
    return [
        (
            poset.levels[i],
            poset.co_levels[i],
            len(poset.upper_covers[i]),
            len(poset.lower_covers[i]),
            popcount(poset.down_masks[i]),
            popcount(poset.up_masks[i]),
        )
        for i in range(poset.n)
    ]


def _search_order(poset: FinitePoset, invariants, class_sizes) -> List[int]:
    # rarest invariant first, then grow through comparable elements
    order: List[int] = []
    placed = 0
    remaining = set(range(poset.n))
    while remaining:
        touching = [i for i in remaining if poset.comparable_masks[i] & placed]
        pool = touching or list(remaining)
        nxt = min(pool, key=lambda i: (class_sizes[invariants[i]], i))
        order.append(nxt)
        placed |= 1 << nxt
        remaining.discard(nxt)
    return order


def find_isomorphism(X: FinitePoset, Y: FinitePoset) -> Optional[MonotoneMap]:
    """
    Look for an order-isomorphism X -> Y.

    Returns:
        The first isomorphism found (deterministic for fixed element orders),
        or None when X and Y are not isomorphic.
    """
    if X.n != Y.n or len(X.covers) != len(Y.covers):
        return None
    inv_x = element_invariants(X)
    inv_y = element_invariants(Y)
    sizes = Counter(inv_x)
    if sizes != Counter(inv_y):
        return None

    by_class: Dict[Tuple[int, ...], List[int]] = {}
    for j, key in enumerate(inv_y):
        by_class.setdefault(key, []).append(j)

    order = _search_order(X, inv_x, sizes)
    images: List[Optional[int]] = [None] * X.n
    used = 0

    def consistent(x: int, y: int, depth: int) -> bool:
        for p in range(depth):
            x2 = order[p]
            y2 = images[x2]
            if X.leq[x, x2] != Y.leq[y, y2] or X.leq[x2, x] != Y.leq[y2, y]:
                return False
        return True

    def backtrack(depth: int) -> bool:
        nonlocal used
        if depth == X.n:
            return True
        x = order[depth]
        for y in by_class[inv_x[x]]:
            if used & (1 << y) or not consistent(x, y, depth):
                continue
            images[x] = y
            used |= 1 << y
            if backtrack(depth + 1):
                return True
            used &= ~(1 << y)
            images[x] = None
        return False

    if not backtrack(0):
        return None
    return MonotoneMap(X, Y, images, check=False)


def is_isomorphic(X: FinitePoset, Y: FinitePoset) -> bool:
    return find_isomorphism(X, Y) is not None
