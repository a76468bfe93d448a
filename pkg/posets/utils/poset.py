"""
Finite posets read as finite T0-spaces.

A ``FinitePoset`` stores the full order as a read-only boolean numpy matrix
(``leq[i, j]`` iff element i <= element j) over elements indexed 0..n-1 in
declaration order. Subsets of a poset are plain ``int`` bitmasks over that
indexing, so minimal open sets, closures and their intersections are single
bitwise operations.

The module-level functions (``build_poset``, ``down_set``, ``up_set``,
``connected_components`` ...) speak in element labels; the methods of
``FinitePoset`` and ``MonotoneMap`` speak in indices and masks.
"""
import logging
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from posets.exceptions import (
    CycleError,
    DuplicateLabelError,
    PosetError,
    UnknownElementError,
)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------
# Bitmask helpers
# ----------------------------------------------------------
def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def transitive_closure(relation: np.ndarray) -> np.ndarray:
    """Reflexive-transitive closure of a square boolean matrix (Warshall)."""
    closure = np.array(relation, dtype=bool)
    np.fill_diagonal(closure, True)
    for k in range(len(closure)):
        closure |= closure[:, k, None] & closure[None, k, :]
    return closure


def is_partial_order(rel: np.ndarray) -> bool:
    """Check that ``rel`` is reflexive, antisymmetric and transitive."""
    if not rel[np.diag_indices_from(rel)].all():
        return False
    if (rel & rel.T).sum() > len(rel):
        return False
    composed = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
    return not (composed & ~rel).any()


# ----------------------------------------------------------
# Finite posets
# ----------------------------------------------------------
class FinitePoset:
    """
    Immutable finite partial order, equivalently a finite T0-space.

    Conventions:
        - ``leq[i, j]`` is True iff i <= j.
        - ``down_masks[i]`` is U_i (the minimal open set of i).
        - ``up_masks[i]`` is F_i (the closure of i).
        - ``covers`` lists (i, j) with j covering i (the Hasse diagram).
    """

    def __init__(self, labels: Sequence, leq):
        labels = tuple(str(label) for label in labels)
        index: Dict[str, int] = {}
        for i, label in enumerate(labels):
            if label in index:
                raise DuplicateLabelError(f"Duplicate element label: {label!r}")
            index[label] = i

        leq = np.array(leq, dtype=bool).reshape(len(labels), len(labels))
        if (leq & leq.T).sum() > len(labels):
            raise CycleError("Relation is not antisymmetric (cycle among covers)")
        if not is_partial_order(leq):
            raise PosetError("Relation is not a partial order")
        leq.flags.writeable = False

        self.labels = labels
        self.index = index
        self.leq = leq
        self.n = len(labels)

    @classmethod
    def from_covers(cls, labels: Sequence, covers: Iterable[Tuple[int, int]]) -> "FinitePoset":
        n = len(labels)
        relation = np.zeros((n, n), dtype=bool)
        for i, j in covers:
            if i == j:
                raise CycleError(f"Element {labels[i]!r} declared below itself")
            relation[i, j] = True
        closure = transitive_closure(relation)
        if (closure & closure.T).sum() > n:
            raise CycleError("Covers contain a cycle; not a partial order")
        return cls(labels, closure)

    # Representation

    def __len__(self):
        return self.n

    def __repr__(self):
        covers = ", ".join(f"{a}<{b}" for a, b in self.cover_labels)
        return f"FinitePoset([{' '.join(self.labels)}]; {covers})"

    def __eq__(self, other):
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.labels == other.labels and np.array_equal(self.leq, other.leq)

    def __hash__(self):
        return hash((self.labels, self.leq.tobytes()))

    # Label lookups

    def idx(self, label) -> int:
        try:
            return self.index[str(label)]
        except KeyError:
            raise UnknownElementError(f"Unknown element: {label!r}") from None

    def mask(self, labels: Iterable) -> int:
        return mask_of(self.idx(label) for label in labels)

    def labels_of(self, mask: int) -> Tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    # Order structure

    @cached_property
    def cover_matrix(self) -> np.ndarray:
        """out[i, j] iff j covers i (nothing in between)."""
        strict = self.leq.copy()
        np.fill_diagonal(strict, False)
        between = (strict.astype(np.int64) @ strict.astype(np.int64)) > 0
        child = strict & ~between
        child.flags.writeable = False
        return child

    @cached_property
    def covers(self) -> Tuple[Tuple[int, int], ...]:
        rows, cols = np.nonzero(self.cover_matrix)
        return tuple(sorted(zip(rows.tolist(), cols.tolist())))

    @cached_property
    def cover_labels(self) -> Tuple[Tuple[str, str], ...]:
        return tuple((self.labels[i], self.labels[j]) for i, j in self.covers)

    @cached_property
    def lower_covers(self) -> Tuple[Tuple[int, ...], ...]:
        child = self.cover_matrix
        return tuple(tuple(np.nonzero(child[:, j])[0].tolist()) for j in range(self.n))

    @cached_property
    def upper_covers(self) -> Tuple[Tuple[int, ...], ...]:
        child = self.cover_matrix
        return tuple(tuple(np.nonzero(child[i, :])[0].tolist()) for i in range(self.n))

    @cached_property
    def down_masks(self) -> Tuple[int, ...]:
        return tuple(mask_of(np.nonzero(self.leq[:, i])[0].tolist()) for i in range(self.n))

    @cached_property
    def up_masks(self) -> Tuple[int, ...]:
        return tuple(mask_of(np.nonzero(self.leq[i, :])[0].tolist()) for i in range(self.n))

    @cached_property
    def comparable_masks(self) -> Tuple[int, ...]:
        return tuple(d | u for d, u in zip(self.down_masks, self.up_masks))

    def is_leq(self, i: int, j: int) -> bool:
        return bool(self.leq[i, j])

    def down_mask(self, i: int, punctured: bool = False) -> int:
        mask = self.down_masks[i]
        return mask & ~(1 << i) if punctured else mask

    def up_mask(self, i: int, punctured: bool = False) -> int:
        mask = self.up_masks[i]
        return mask & ~(1 << i) if punctured else mask

    @cached_property
    def maximal_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self.up_masks[i] == 1 << i)

    @cached_property
    def minimal_mask(self) -> int:
        return mask_of(i for i in range(self.n) if self.down_masks[i] == 1 << i)

    def maximum_of(self, mask: int) -> Optional[int]:
        """The maximum of the subset ``mask``, if it has one."""
        for i in bits(mask):
            if mask & ~self.down_masks[i] == 0:
                return i
        return None

    def minimum_of(self, mask: int) -> Optional[int]:
        for i in bits(mask):
            if mask & ~self.up_masks[i] == 0:
                return i
        return None

    @property
    def maximum(self) -> Optional[int]:
        return self.maximum_of(self.full_mask)

    @property
    def minimum(self) -> Optional[int]:
        return self.minimum_of(self.full_mask)

    @cached_property
    def toposort(self) -> Tuple[int, ...]:
        """A linear extension: strictly smaller elements have smaller down-sets."""
        return tuple(sorted(range(self.n), key=lambda i: (popcount(self.down_masks[i]), i)))

    @cached_property
    def levels(self) -> Tuple[int, ...]:
        """Length of the longest chain ending at each element."""
        level = [0] * self.n
        for j in self.toposort:
            for i in self.lower_covers[j]:
                level[j] = max(level[j], level[i] + 1)
        return tuple(level)

    @cached_property
    def co_levels(self) -> Tuple[int, ...]:
        """Length of the longest chain starting at each element."""
        level = [0] * self.n
        for i in reversed(self.toposort):
            for j in self.upper_covers[i]:
                level[i] = max(level[i], level[j] + 1)
        return tuple(level)

    # Connectivity

    def component_of(self, mask: int, seed: int) -> int:
        """The connected component of ``mask`` containing index ``seed``."""
        comparable = self.comparable_masks
        component = 1 << seed
        frontier = component
        while frontier:
            reached = 0
            for i in bits(frontier):
                reached |= comparable[i]
            reached &= mask
            frontier = reached & ~component
            component |= reached
        return component

    def components(self, mask: Optional[int] = None) -> List[int]:
        """Partition ``mask`` into order-connected components, by lowest index."""
        remaining = self.full_mask if mask is None else mask
        found = []
        while remaining:
            seed = (remaining & -remaining).bit_length() - 1
            component = self.component_of(remaining, seed)
            found.append(component)
            remaining &= ~component
        return found

    def is_connected(self, mask: Optional[int] = None) -> bool:
        mask = self.full_mask if mask is None else mask
        if not mask:
            return False
        return len(self.components(mask)) == 1

    # Derived posets

    def subposet(self, mask: int) -> "FinitePoset":
        domain = list(bits(mask))
        sub = FinitePoset([self.labels[i] for i in domain], self.leq[np.ix_(domain, domain)])
        return sub

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.labels, self.leq.T)


# ----------------------------------------------------------
# Monotone maps
# ----------------------------------------------------------
class MonotoneMap:
    """Order-preserving map ``source -> target`` stored as a tuple of image indices."""

    def __init__(self, source: FinitePoset, target: FinitePoset, images: Sequence[int], check: bool = True):
        images = tuple(int(v) for v in images)
        if len(images) != source.n:
            raise PosetError(f"Map assigns {len(images)} images to {source.n} elements")
        if any(v < 0 or v >= target.n for v in images):
            raise UnknownElementError("Map image outside of the target poset")
        self.source = source
        self.target = target
        self.images = images
        if check and not self.is_monotone():
            raise PosetError("Map is not order-preserving")

    @classmethod
    def from_labels(cls, source: FinitePoset, target: FinitePoset, assignment: Dict) -> "MonotoneMap":
        missing = [label for label in source.labels if label not in {str(k) for k in assignment}]
        if missing:
            raise UnknownElementError(f"No image given for: {', '.join(missing)}")
        lookup = {str(k): v for k, v in assignment.items()}
        return cls(source, target, [target.idx(lookup[label]) for label in source.labels])

    @classmethod
    def identity(cls, poset: FinitePoset) -> "MonotoneMap":
        return cls(poset, poset, range(poset.n), check=False)

    @classmethod
    def constant(cls, source: FinitePoset, target: FinitePoset, value: int) -> "MonotoneMap":
        return cls(source, target, [value] * source.n, check=False)

    @classmethod
    def inclusion(cls, sub: FinitePoset, poset: FinitePoset) -> "MonotoneMap":
        return cls(sub, poset, [poset.idx(label) for label in sub.labels])

    def is_monotone(self) -> bool:
        if not self.images:
            return True
        image_order = self.target.leq[np.ix_(self.images, self.images)]
        return bool(np.all(image_order | ~self.source.leq))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other):
        if not isinstance(other, MonotoneMap):
            return NotImplemented
        return (self.source, self.target, self.images) == (other.source, other.target, other.images)

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        pairs = ", ".join(f"{a}->{b}" for a, b in self.as_label_dict().items())
        return f"MonotoneMap({pairs})"

    def as_label_dict(self) -> Dict[str, str]:
        return {self.source.labels[i]: self.target.labels[v] for i, v in enumerate(self.images)}

    def compose(self, inner: "MonotoneMap") -> "MonotoneMap":
        """``self o inner``."""
        if inner.target != self.source:
            raise PosetError("Maps are not composable")
        return MonotoneMap(inner.source, self.target, [self.images[v] for v in inner.images], check=False)

    def image_mask(self, mask: int) -> int:
        return mask_of(self.images[i] for i in bits(mask))

    def fixed_points(self) -> List[int]:
        if self.source != self.target:
            raise PosetError("Fixed points only make sense for self-maps")
        return [i for i, v in enumerate(self.images) if i == v]

    def is_fixed_point_free(self) -> bool:
        return not self.fixed_points()

    def is_bijective(self) -> bool:
        return self.source.n == self.target.n and len(set(self.images)) == self.target.n

    def is_isomorphism(self) -> bool:
        """Bijective, order-preserving and order-reflecting."""
        if not self.is_bijective():
            return False
        return bool(np.array_equal(self.target.leq[np.ix_(self.images, self.images)], self.source.leq))

    def leq(self, other: "MonotoneMap") -> bool:
        """Pointwise comparison ``self <= other``."""
        return all(self.target.is_leq(a, b) for a, b in zip(self.images, other.images))


# ----------------------------------------------------------
# Monotone map enumeration
# ----------------------------------------------------------
def greedy_linear_extension(poset: FinitePoset) -> List[int]:
    """
    Linear extension that keeps the search local: among the elements whose
    lower covers are already placed, take the one comparable to the most
    placed elements (lowest index on ties).
    """
    placed = 0
    order = []
    pending = [len(poset.lower_covers[i]) for i in range(poset.n)]
    available = [i for i in range(poset.n) if pending[i] == 0]
    comparable = poset.comparable_masks
    while available:
        best = max(available, key=lambda i: (popcount(comparable[i] & placed), -i))
        available.remove(best)
        order.append(best)
        placed |= 1 << best
        for j in poset.upper_covers[best]:
            pending[j] -= 1
            if pending[j] == 0:
                available.append(j)
    return order


def iter_monotone_maps(
    source: FinitePoset,
    target: FinitePoset,
    allowed: Optional[Sequence[int]] = None,
    order: Optional[Sequence[int]] = None,
) -> Iterator[Tuple[int, ...]]:
    """
    All order-preserving maps source -> target as image tuples.

    Backtracks over a linear extension of ``source``; the candidates of an
    element are its ``allowed`` mask cut down by the closures of the images of
    its lower covers, which are always assigned already.
    """
    n = source.n
    full = target.full_mask
    allowed = [full] * n if allowed is None else list(allowed)
    order = greedy_linear_extension(source) if order is None else list(order)
    below = [source.lower_covers[x] for x in order]
    up = target.up_masks
    images: List[Optional[int]] = [None] * n

    def backtrack(p):
        if p == n:
            yield tuple(images)
            return
        x = order[p]
        candidates = allowed[x]
        for y in below[p]:
            candidates &= up[images[y]]
        for value in bits(candidates):
            images[x] = value
            yield from backtrack(p + 1)
        images[x] = None

    yield from backtrack(0)


def random_monotone_map(
    source: FinitePoset,
    target: FinitePoset,
    seed: int,
    allowed: Optional[Sequence[int]] = None,
) -> MonotoneMap:
    """Seeded random order-preserving map whose images lie in ``allowed``."""
    rng = np.random.default_rng(seed)
    n = source.n
    allowed = [target.full_mask] * n if allowed is None else list(allowed)
    order = source.toposort
    up = target.up_masks
    images: List[Optional[int]] = [None] * n

    def backtrack(p):
        if p == n:
            return True
        x = order[p]
        candidates = allowed[x]
        for y in source.lower_covers[x]:
            candidates &= up[images[y]]
        choices = list(bits(candidates))
        rng.shuffle(choices)
        for value in choices:
            images[x] = value
            if backtrack(p + 1):
                return True
        images[x] = None
        return False

    if not backtrack(0):
        raise PosetError("No order-preserving map satisfies the allowed images")
    return MonotoneMap(source, target, images, check=False)


# ----------------------------------------------------------
# Label-level operations
# ----------------------------------------------------------
def build_poset(elements: Sequence, covers: Iterable[Tuple]) -> FinitePoset:
    """
    Build a poset from a Hasse-diagram presentation.

    Args:
        elements: unique element labels, in the order that fixes their indices.
        covers: pairs (x, y) meaning x < y; redundant pairs are dropped.

    Returns:
        The poset whose order is the reflexive-transitive closure of ``covers``.
    """
    labels = [str(e) for e in elements]
    seen = set()
    for label in labels:
        if label in seen:
            raise DuplicateLabelError(f"Duplicate element label: {label!r}")
        seen.add(label)
    index = {label: i for i, label in enumerate(labels)}
    pairs = []
    for low, high in covers:
        for label in (str(low), str(high)):
            if label not in index:
                raise UnknownElementError(f"Cover references unknown element: {label!r}")
        pairs.append((index[str(low)], index[str(high)]))
    return FinitePoset.from_covers(labels, pairs)


def chain(n: int) -> FinitePoset:
    return build_poset(range(n), [(i, i + 1) for i in range(n - 1)])


def antichain(n: int) -> FinitePoset:
    return build_poset(range(n), [])


def down_set(poset: FinitePoset, x, punctured: bool = False) -> frozenset:
    """U_x, or its punctured version U_x - {x}."""
    return frozenset(poset.labels_of(poset.down_mask(poset.idx(x), punctured)))


def up_set(poset: FinitePoset, x, punctured: bool = False) -> frozenset:
    """F_x, or its punctured version F_x - {x}."""
    return frozenset(poset.labels_of(poset.up_mask(poset.idx(x), punctured)))


def connected_components(poset: FinitePoset, subset: Iterable) -> List[frozenset]:
    return [frozenset(poset.labels_of(c)) for c in poset.components(poset.mask(subset))]


def opposite(poset: FinitePoset) -> FinitePoset:
    return poset.opposite()


def extremes(poset: FinitePoset) -> Tuple[frozenset, frozenset]:
    """(mxl[X], mnl[X]) as label sets."""
    return frozenset(poset.labels_of(poset.maximal_mask)), frozenset(poset.labels_of(poset.minimal_mask))


def induced_subposet(poset: FinitePoset, subset: Iterable) -> FinitePoset:
    return poset.subposet(poset.mask(subset))


def random_poset(n: int, density: float, seed: int, connected: bool = False) -> FinitePoset:
    """
    Seeded random poset on labels "0".."n-1".

    Sampling: ``numpy.random.default_rng(seed).random((n, n)) < density``, keep
    the strict upper triangle as relations i < j, close transitively. With
    ``connected`` the largest component is kept (lowest index on ties).
    """
    if n < 1:
        raise PosetError("A random poset needs at least one element")
    if not 0 <= density <= 1:
        raise PosetError(f"Density must lie in [0, 1], got {density}")
    rng = np.random.default_rng(seed)
    relation = np.triu(rng.random((n, n)) < density, k=1)
    poset = FinitePoset([str(i) for i in range(n)], transitive_closure(relation))
    if connected:
        components = poset.components()
        largest = max(components, key=lambda c: (popcount(c), -((c & -c).bit_length())))
        poset = poset.subposet(largest)
    return poset
