"""
Beat points, cores and bp-retracts of finite T0-spaces.

``homotopy_equivalent`` relies on the uniqueness of cores up to isomorphism,
a standard fact of finite-space homotopy theory that is not re-proved here.
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

from posets.exceptions import EmptySubsetError, PosetError
from posets.utils.isomorphism import find_isomorphism
from posets.utils.poset import FinitePoset, MonotoneMap, bits

logger = logging.getLogger(__name__)

DOWN = "down"
UP = "up"


@dataclass(frozen=True)
class BeatPointReport:
    element: str
    kind: str
    witness: str

    def __str__(self):
        relation = "max" if self.kind == DOWN else "min"
        return f"{self.element} ({self.kind} beat point, {relation} = {self.witness})"


@dataclass(frozen=True)
class Retraction:
    """A retraction onto a subspace together with the subspace inclusion."""

    kind: str
    retraction: MonotoneMap
    inclusion: MonotoneMap

    @property
    def subspace(self) -> FinitePoset:
        return self.retraction.target


# ----------------------------------------------------------
# Beat points
# ----------------------------------------------------------
def _down_witness(poset: FinitePoset, mask: int, i: int) -> Optional[int]:
    below = poset.down_masks[i] & mask & ~(1 << i)
    return poset.maximum_of(below) if below else None


def _up_witness(poset: FinitePoset, mask: int, i: int) -> Optional[int]:
    above = poset.up_masks[i] & mask & ~(1 << i)
    return poset.minimum_of(above) if above else None


def _beat_point_in(poset: FinitePoset, mask: int, i: int, kind: str) -> Optional[int]:
    return _down_witness(poset, mask, i) if kind == DOWN else _up_witness(poset, mask, i)


def find_beat_points(X: FinitePoset) -> List[BeatPointReport]:
    reports = []
    full = X.full_mask
    for i in range(X.n):
        for kind in (DOWN, UP):
            witness = _beat_point_in(X, full, i, kind)
            if witness is not None:
                reports.append(BeatPointReport(X.labels[i], kind, X.labels[witness]))
    return reports


def core_with_removals(X: FinitePoset) -> Tuple[FinitePoset, List[BeatPointReport]]:
    """
    Remove beat points one at a time until none is left.

    At each step the lowest-index beat point goes first, down before up.
    """
    mask = X.full_mask
    removed: List[BeatPointReport] = []
    while True:
        step = None
        for i in bits(mask):
            for kind in (DOWN, UP):
                witness = _beat_point_in(X, mask, i, kind)
                if witness is not None:
                    step = BeatPointReport(X.labels[i], kind, X.labels[witness])
                    mask &= ~(1 << i)
                    break
            if step:
                break
        if step is None:
            break
        removed.append(step)
    logger.debug(f"core of {X.n}-point space has {bin(mask).count('1')} points")
    return X.subposet(mask), removed


def core(X: FinitePoset) -> FinitePoset:
    return core_with_removals(X)[0]


def is_contractible(X: FinitePoset) -> bool:
    return X.n > 0 and core(X).n == 1


def homotopy_equivalent(X: FinitePoset, Y: FinitePoset) -> bool:
    return find_isomorphism(core(X), core(Y)) is not None


# ----------------------------------------------------------
# dbp / ubp retracts
# ----------------------------------------------------------
def _retraction(X: FinitePoset, mask: int, kind: str) -> Optional[Retraction]:
    if not mask:
        raise EmptySubsetError("A retract must be nonempty")
    sub = X.subposet(mask)
    images = []
    for x in range(X.n):
        if kind == DOWN:
            target = X.maximum_of(X.down_masks[x] & mask)
        else:
            target = X.minimum_of(X.up_masks[x] & mask)
        if target is None:
            return None
        images.append(sub.index[X.labels[target]])
    retraction = MonotoneMap(X, sub, images, check=False)
    return Retraction(kind, retraction, MonotoneMap.inclusion(sub, X))


def dbp_retraction(X: FinitePoset, mask: int) -> Optional[Retraction]:
    """r(x) = max(U_x & A) when every such maximum exists."""
    return _retraction(X, mask, DOWN)


def ubp_retraction(X: FinitePoset, mask: int) -> Optional[Retraction]:
    """r(x) = min(F_x & A) when every such minimum exists."""
    return _retraction(X, mask, UP)


def is_dbp_retract(X: FinitePoset, A: Iterable) -> Optional[Retraction]:
    return dbp_retraction(X, X.mask(A))


def is_ubp_retract(X: FinitePoset, A: Iterable) -> Optional[Retraction]:
    return ubp_retraction(X, X.mask(A))


def reachable_by_removals(X: FinitePoset, A: Iterable, kind: str = DOWN) -> bool:
    """
    Explicit search: can A be reached from X by removing one ``kind`` beat
    point at a time? Beat points are recomputed in the current subspace.
    """
    if kind not in (DOWN, UP):
        raise PosetError(f"Unknown beat point kind: {kind!r}")
    target = X.mask(A)
    if not target:
        raise EmptySubsetError("A retract must be nonempty")
    seen = set()
    stack = [X.full_mask]
    while stack:
        mask = stack.pop()
        if mask == target:
            return True
        if mask in seen:
            continue
        seen.add(mask)
        for i in bits(mask & ~target):
            if _beat_point_in(X, mask, i, kind) is not None:
                stack.append(mask & ~(1 << i))
    return False


# ----------------------------------------------------------
# Homotopy of maps
# ----------------------------------------------------------
def is_fence(maps: Sequence[MonotoneMap]) -> bool:
    """
    Consecutive maps share source and target, are order-preserving and are
    pointwise comparable, so the first map is homotopic to the last one.
    """
    if not maps:
        return False
    for first, second in zip(maps, maps[1:]):
        if first.source != second.source or first.target != second.target:
            return False
        if not (first.leq(second) or second.leq(first)):
            return False
    return all(f.is_monotone() for f in maps)


def _single_point_moves(source: FinitePoset, target: FinitePoset, images: Tuple[int, ...]):
    for x in range(source.n):
        current = images[x]
        candidates = target.comparable_masks[current] & ~(1 << current)
        for y in source.lower_covers[x]:
            candidates &= target.up_masks[images[y]]
        for z in source.upper_covers[x]:
            candidates &= target.down_masks[images[z]]
        for v in bits(candidates):
            yield images[:x] + (v,) + images[x + 1:]


def homotopic(f: MonotoneMap, g: MonotoneMap) -> bool:
    """
    Decide f ~ g by searching for a fence f = f0 <= f1 >= f2 ... fn = g.

    Two comparable maps are joined by maps that differ from each other at a
    single point, so the search only moves one image at a time.
    """
    if f.source != g.source or f.target != g.target:
        raise PosetError("Maps between different spaces cannot be homotopic")
    if f.leq(g) or g.leq(f):
        return True
    source, target = f.source, f.target
    seen = {f.images}
    queue = deque([f.images])
    while queue:
        current = queue.popleft()
        for candidate in _single_point_moves(source, target, current):
            if candidate == g.images:
                return True
            if candidate not in seen:
                seen.add(candidate)
                queue.append(candidate)
    logger.debug(f"no fence found after visiting {len(seen)} maps")
    return False
