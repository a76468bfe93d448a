"""
The families U(X), F(X) and the space C(X) of a finite T0-space X.

U(X) collects the connected components of every nonempty intersection U_A of
minimal open sets over nonempty sets A of maximal elements; F(X) is the dual
built from closures of minimal elements. C(X) is their disjoint union ordered
by inclusion on U(X), reverse inclusion on F(X), and F <= U whenever the two
regions meet.

Regions are stored as bitmasks over the ambient poset. Inside a CSpace a
region is identified by (tag, members).
"""
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from posets.conf import finspace_settings
from posets.exceptions import (
    DisconnectedSubsetError,
    EmptySubsetError,
    EnumerationLimitError,
    OverlappingFamiliesError,
    PosetError,
)
from posets.utils.homotopy import DOWN, UP, _down_witness, dbp_retraction, ubp_retraction
from posets.utils.isomorphism import find_isomorphism
from posets.utils.poset import FinitePoset, MonotoneMap, bits, mask_of, popcount

logger = logging.getLogger(__name__)

U_SIDE = "U"
F_SIDE = "F"
C_SIDE = "C"


# ----------------------------------------------------------
# Regions and spaces of regions
# ----------------------------------------------------------
@dataclass(frozen=True)
class Region:
    ambient: FinitePoset = field(compare=False, repr=False)
    members: int
    tag: str

    @property
    def member_labels(self) -> Tuple[str, ...]:
        return self.ambient.labels_of(self.members)

    @property
    def label(self) -> str:
        return f"{self.tag}[{','.join(self.member_labels)}]"

    @property
    def size(self) -> int:
        return popcount(self.members)

    def as_set(self) -> frozenset:
        return frozenset(self.member_labels)

    def __str__(self):
        return self.label


def region_poset(region: Region) -> FinitePoset:
    """The region as an induced subposet of its ambient space."""
    return region.ambient.subposet(region.members)


def _region_key(region: Region):
    return (region.tag != U_SIDE, region.size, tuple(bits(region.members)))


def region_leq(first: Region, second: Region) -> bool:
    if first.tag == U_SIDE and second.tag == U_SIDE:
        return first.members & ~second.members == 0
    if first.tag == F_SIDE and second.tag == F_SIDE:
        return second.members & ~first.members == 0
    if first.tag == F_SIDE and second.tag == U_SIDE:
        return bool(first.members & second.members)
    return False


@dataclass(frozen=True)
class CSpace:
    """
    U(X), F(X) or C(X) as a poset of regions.

    ``order`` is a FinitePoset whose element i is ``regions[i]``. ``overlap``
    tells whether U(X) and F(X) share a member set; it is only computed for
    kind "C".
    """

    ambient: FinitePoset
    kind: str
    regions: Tuple[Region, ...]
    order: FinitePoset = field(repr=False)
    overlap: Optional[bool] = None

    def __len__(self):
        return len(self.regions)

    @cached_property
    def _lookup(self) -> Dict[Tuple[str, int], int]:
        return {(r.tag, r.members): i for i, r in enumerate(self.regions)}

    def find(self, tag: str, members: int) -> Optional[int]:
        return self._lookup.get((tag, members))

    def index_of(self, region: Region) -> int:
        i = self.find(region.tag, region.members)
        if i is None:
            raise PosetError(f"{region.label} is not a region of this space")
        return i

    def regions_of(self, mask: int) -> List[Region]:
        return [self.regions[i] for i in bits(mask)]

    def by_label(self, label: str) -> Region:
        return self.regions[self.order.idx(label)]


def _make_space(X: FinitePoset, kind: str, regions: Iterable[Region], overlap=None) -> CSpace:
    regions = tuple(sorted(regions, key=_region_key))
    n = len(regions)
    leq = np.zeros((n, n), dtype=bool)
    for i, first in enumerate(regions):
        for j, second in enumerate(regions):
            leq[i, j] = region_leq(first, second)
    order = FinitePoset([r.label for r in regions], leq)
    return CSpace(X, kind, regions, order, overlap)


# ----------------------------------------------------------
# U_A, F_A, sharp and flat
# ----------------------------------------------------------
def _intersect(masks: Tuple[int, ...], X: FinitePoset, A: int) -> int:
    if not A:
        raise EmptySubsetError("Cannot intersect over an empty set")
    result = X.full_mask
    for a in bits(A):
        result &= masks[a]
    return result


def u_of(X: FinitePoset, A: int) -> int:
    return _intersect(X.down_masks, X, A)


def f_of(X: FinitePoset, A: int) -> int:
    return _intersect(X.up_masks, X, A)


def intersect_minimal_opens(X: FinitePoset, A: Iterable) -> frozenset:
    """U_A, the intersection of the minimal open sets of the elements of A."""
    return frozenset(X.labels_of(u_of(X, X.mask(A))))


def intersect_closures(X: FinitePoset, A: Iterable) -> frozenset:
    """F_A, the intersection of the closures of the elements of A."""
    return frozenset(X.labels_of(f_of(X, X.mask(A))))


def sharp_mask(X: FinitePoset, B: int) -> int:
    if not B:
        raise EmptySubsetError("B must be nonempty")
    return mask_of(a for a in bits(X.maximal_mask) if B & ~X.down_masks[a] == 0)


def flat_mask(X: FinitePoset, B: int) -> int:
    if not B:
        raise EmptySubsetError("B must be nonempty")
    return mask_of(a for a in bits(X.minimal_mask) if B & ~X.up_masks[a] == 0)


def sharp(X: FinitePoset, B: Iterable) -> frozenset:
    """Maximal elements a with B contained in U_a."""
    return frozenset(X.labels_of(sharp_mask(X, X.mask(B))))


def flat(X: FinitePoset, B: Iterable) -> frozenset:
    """Minimal elements a with B contained in F_a."""
    return frozenset(X.labels_of(flat_mask(X, X.mask(B))))


# ----------------------------------------------------------
# The families
# ----------------------------------------------------------
def _components_of_intersections(X: FinitePoset, extremes: int, masks: Tuple[int, ...]) -> set:
    points = list(bits(extremes))
    limit = finspace_settings("MAX_MAXIMAL_ELEMENTS")
    if len(points) > limit:
        logger.warning(f"Refusing to enumerate 2^{len(points)} subsets (limit {limit})")
        raise EnumerationLimitError(
            f"{len(points)} extreme elements exceed the enumeration limit of {limit}"
        )
    # intersections[s] is the intersection over the subset encoded by s
    intersections = [X.full_mask] * (1 << len(points))
    distinct = set()
    for s in range(1, 1 << len(points)):
        low = s & -s
        current = intersections[s ^ low] & masks[points[low.bit_length() - 1]]
        intersections[s] = current
        if current:
            distinct.add(current)
    found = set()
    for mask in distinct:
        found.update(X.components(mask))
    return found


def u_family(X: FinitePoset) -> CSpace:
    members = _components_of_intersections(X, X.maximal_mask, X.down_masks)
    return _make_space(X, U_SIDE, (Region(X, m, U_SIDE) for m in members))


def f_family(X: FinitePoset) -> CSpace:
    members = _components_of_intersections(X, X.minimal_mask, X.up_masks)
    return _make_space(X, F_SIDE, (Region(X, m, F_SIDE) for m in members))


def c_space(X: FinitePoset) -> CSpace:
    us = u_family(X).regions
    fs = f_family(X).regions
    overlap = bool({r.members for r in us} & {r.members for r in fs})
    if overlap:
        logger.warning("U(X) and F(X) share a member set; C(f) is undefined on this space")
    return _make_space(X, C_SIDE, us + fs, overlap)


def family(X: FinitePoset, side: str) -> CSpace:
    builders = {U_SIDE: u_family, F_SIDE: f_family, C_SIDE: c_space}
    try:
        return builders[side](X)
    except KeyError:
        raise PosetError(f"Unknown side {side!r}; expected U, F or C") from None


# ----------------------------------------------------------
# Minimum connected containing regions
# ----------------------------------------------------------
def min_containing_mask(X: FinitePoset, B: int, side: str) -> Optional[Region]:
    """
    side U: the minimum region of U(X) containing B, i.e. the component of
    U_{B#} containing B, or None when B# is empty. Side F is dual.
    """
    if not B:
        raise EmptySubsetError("B must be nonempty")
    if not X.is_connected(B):
        raise DisconnectedSubsetError(f"{{{', '.join(X.labels_of(B))}}} is not connected")
    if side == U_SIDE:
        extremes = sharp_mask(X, B)
        whole = u_of(X, extremes) if extremes else 0
    elif side == F_SIDE:
        extremes = flat_mask(X, B)
        whole = f_of(X, extremes) if extremes else 0
    else:
        raise PosetError(f"Unknown side {side!r}; expected U or F")
    if not extremes:
        return None
    seed = (B & -B).bit_length() - 1
    return Region(X, X.component_of(whole, seed), side)


def min_containing(X: FinitePoset, B: Iterable, side: str) -> Optional[Region]:
    return min_containing_mask(X, X.mask(B), side)


def c_u(X: FinitePoset, x) -> Region:
    """C_U(x), the smallest region of U(X) containing x."""
    return min_containing_mask(X, 1 << X.idx(x), U_SIDE)


def c_f(X: FinitePoset, x) -> Region:
    """C_F(x), the largest region of F(X) containing x."""
    return min_containing_mask(X, 1 << X.idx(x), F_SIDE)


# ----------------------------------------------------------
# Induced maps
# ----------------------------------------------------------
@dataclass(frozen=True)
class InducedMap:
    source: CSpace
    target: CSpace
    map: MonotoneMap

    def __call__(self, region: Region) -> Region:
        return self.target.regions[self.map(self.source.index_of(region))]

    def fixed_regions(self) -> List[Region]:
        return [self.source.regions[i] for i in self.map.fixed_points()]

    def as_label_dict(self) -> Dict[str, str]:
        return self.map.as_label_dict()


def induced_map(
    f: MonotoneMap,
    side: str,
    source: Optional[CSpace] = None,
    target: Optional[CSpace] = None,
) -> InducedMap:
    """
    U(f)(C) = min{D in U(Y) : f(C) in D}, F(f)(C) = max{D in F(Y) : f(C) in D},
    and C(f) acting as U(f) on U-regions and F(f) on F-regions.

    Precomputed ``source``/``target`` spaces may be passed to share region
    indexing between several induced maps.
    """
    source = source or family(f.source, side)
    target = target or family(f.target, side)
    if side == C_SIDE and (source.overlap or target.overlap):
        logger.warning("C(f) requested on a space whose families overlap")
        raise OverlappingFamiliesError("C(f) is only defined when U(X) and F(X) are disjoint")
    images = []
    for region in source.regions:
        image = f.image_mask(region.members)
        best = min_containing_mask(f.target, image, region.tag)
        if best is None:
            raise PosetError(f"No region of the target contains the image of {region.label}")
        images.append(target.index_of(best))
    return InducedMap(source, target, MonotoneMap(source.order, target.order, images))


# ----------------------------------------------------------
# X', Kolmogorov quotient, idempotence
# ----------------------------------------------------------
@dataclass(frozen=True)
class XPrime:
    elements: frozenset
    subspace: FinitePoset
    phi: Dict[str, str]
    psi: Dict[str, str]
    retract_verified: bool


def x_prime(X: FinitePoset) -> Optional[XPrime]:
    """
    X' = {max C : C in U(X)} when every region has a maximum, with the
    mutually inverse maps C -> max C and z -> U_z.

    Raises:
        PosetError: the two maps are not inverse order-isomorphisms.
    """
    space = u_family(X)
    phi = {}
    psi = {}
    chosen = 0
    for region in space.regions:
        top = X.maximum_of(region.members)
        if top is None:
            return None
        phi[region.label] = X.labels[top]
        psi[X.labels[top]] = region.label
        chosen |= 1 << top
    subspace = X.subposet(chosen)
    forward = MonotoneMap.from_labels(space.order, subspace, phi)
    backward = MonotoneMap.from_labels(subspace, space.order, psi)
    if not (
        forward.is_isomorphism()
        and backward.compose(forward) == MonotoneMap.identity(space.order)
        and forward.compose(backward) == MonotoneMap.identity(subspace)
    ):
        raise PosetError("C -> max C and z -> U_z are not inverse isomorphisms")
    retract_verified = ubp_retraction(X, chosen) is not None
    if not retract_verified:
        logger.warning("X' failed the ubp-retract check")
    return XPrime(frozenset(X.labels_of(chosen)), subspace, phi, psi, retract_verified)


@dataclass(frozen=True)
class KolmogorovReport:
    classes: Tuple[frozenset, ...]
    embedding: Dict[frozenset, str]
    injective: bool
    order_embedding: bool
    monotone: bool
    preorders_agree: bool


def kolmogorov_comparison(X: FinitePoset) -> KolmogorovReport:
    """
    Compare X with the coarser topology generated by U(X).

    The preorder x <~ y iff C_U(x) in C_U(y) is checked against the
    specialization preorder of the generated topology (every basic open
    containing y contains x).
    """
    space = u_family(X)
    cu = [c_u(X, X.labels[i]).members for i in range(X.n)]
    classes: Dict[int, int] = {}
    for i, members in enumerate(cu):
        classes[members] = classes.get(members, 0) | (1 << i)
    class_sets = tuple(frozenset(X.labels_of(m)) for m in classes.values())
    embedding = {
        frozenset(X.labels_of(m)): space.regions[space.find(U_SIDE, members)].label
        for members, m in classes.items()
    }
    region_list = [members for members in classes]
    injective = len(set(embedding.values())) == len(class_sets)
    order_embedding = all(
        (a & ~b == 0) == space.order.is_leq(space.find(U_SIDE, a), space.find(U_SIDE, b))
        for a in region_list
        for b in region_list
    )
    monotone = all(cu[x] & ~cu[y] == 0 for x in range(X.n) for y in range(X.n) if X.is_leq(x, y))
    agree = True
    for x in range(X.n):
        for y in range(X.n):
            by_cu = cu[x] & ~cu[y] == 0
            by_basis = all(
                r.members >> x & 1 for r in space.regions if r.members >> y & 1
            )
            agree = agree and by_cu == by_basis
    return KolmogorovReport(class_sets, embedding, injective, order_embedding, monotone, agree)


@dataclass(frozen=True)
class Idempotence:
    uux: CSpace
    ux: CSpace
    phi: MonotoneMap
    psi: MonotoneMap

    @property
    def inverse_pair(self) -> bool:
        return (
            self.phi.compose(self.psi) == MonotoneMap.identity(self.ux.order)
            and self.psi.compose(self.phi) == MonotoneMap.identity(self.uux.order)
        )


def idempotence_maps(X: FinitePoset) -> Idempotence:
    """phi: U(U(X)) -> U(X), D -> max D and psi: C -> U_C taken in U(X)."""
    ux = u_family(X)
    uux = u_family(ux.order)
    phi = []
    for region in uux.regions:
        top = ux.order.maximum_of(region.members)
        if top is None:
            raise PosetError(f"{region.label} has no maximum in U(X)")
        phi.append(top)
    psi = []
    for c in range(len(ux)):
        i = uux.find(U_SIDE, ux.order.down_masks[c])
        if i is None:
            raise PosetError(f"U_C for {ux.regions[c].label} is not a region of U(U(X))")
        psi.append(i)
    return Idempotence(
        uux,
        ux,
        MonotoneMap(uux.order, ux.order, phi),
        MonotoneMap(ux.order, uux.order, psi),
    )


def is_isomorphic_to_u_family(X: FinitePoset) -> bool:
    """X is U(Y) for some Y exactly when X is isomorphic to U(X)."""
    return find_isomorphism(X, u_family(X).order) is not None


def components_of_u_b(X: FinitePoset, B: Iterable) -> Tuple[set, set]:
    """
    Both sides of the components law in U(X) for a set B of maximal regions.

    Returns:
        (components of U_B computed in U(X), {U_M : M component of U_A in X})
        as sets of region-label frozensets, where A = {a : U_a in B}.
    """
    space = u_family(X)
    order = space.order
    B_mask = order.mask(B)
    if B_mask & ~order.maximal_mask:
        raise PosetError("B must consist of maximal regions of U(X)")
    left = {frozenset(order.labels_of(c)) for c in order.components(u_of(order, B_mask))}
    A = 0
    for i in bits(B_mask):
        region = space.regions[i]
        top = X.maximum_of(region.members)
        A |= 1 << top
    right = set()
    for component in X.components(u_of(X, A)):
        m = space.find(U_SIDE, component)
        right.add(frozenset(order.labels_of(order.down_masks[m])))
    return left, right


def check_components_law(X: FinitePoset) -> Tuple[int, int]:
    """Check the components law for every nonempty B; returns (checked, violations)."""
    order = u_family(X).order
    tops = list(bits(order.maximal_mask))
    limit = finspace_settings("MAX_MAXIMAL_ELEMENTS")
    if len(tops) > limit:
        raise EnumerationLimitError(f"{len(tops)} maximal regions exceed the limit of {limit}")
    checked = violations = 0
    for s in range(1, 1 << len(tops)):
        B = [order.labels[tops[j]] for j in bits(s)]
        left, right = components_of_u_b(X, B)
        checked += 1
        violations += left != right
    return checked, violations


# ----------------------------------------------------------
# Beat points against the construction
# ----------------------------------------------------------
@dataclass(frozen=True)
class PropagationReport:
    element: str
    witness: str
    case: str
    holds: bool
    detail: str


def _relabel_regions(space: CSpace, ambient: FinitePoset) -> List[int]:
    # member masks of ``space`` re-expressed over ``ambient``
    return [ambient.mask(r.member_labels) for r in space.regions]


def propagate_down_beat_point(X: FinitePoset, a) -> PropagationReport:
    """
    For a maximal down beat point a with b = max of U_a minus a:
    case "a" (b not maximal in X - a): U_a is a down beat point of U(X) and
    U(X - a) is an ubp-retract of U(X) - U_a; case "b": U(X) is isomorphic to
    U(X - a).
    """
    i = X.idx(a)
    if not X.maximal_mask >> i & 1:
        raise PosetError(f"{a} is not maximal")
    b = _down_witness(X, X.full_mask, i)
    if b is None:
        raise PosetError(f"{a} is not a down beat point")
    rest = X.full_mask & ~(1 << i)
    smaller = X.subposet(rest)
    ux = u_family(X)
    ux_minus = u_family(smaller)
    b_label = X.labels[b]
    if not smaller.maximal_mask >> smaller.idx(b_label) & 1:
        ua = ux.find(U_SIDE, X.down_masks[i])
        witness_index = ux.find(U_SIDE, X.down_masks[b])
        beat = _down_witness(ux.order, ux.order.full_mask, ua)
        is_beat = beat is not None and beat == witness_index
        remaining = ux.order.full_mask & ~(1 << ua)
        sub_indices = []
        for members in _relabel_regions(ux_minus, X):
            sub_indices.append(ux.find(U_SIDE, members))
        contained = all(j is not None and j != ua for j in sub_indices)
        is_retract = False
        if contained:
            sub_mask = mask_of(sub_indices)
            reduced = ux.order.subposet(remaining)
            inner = reduced.mask(ux.order.labels_of(sub_mask))
            is_retract = ubp_retraction(reduced, inner) is not None
        holds = is_beat and contained and is_retract
        detail = (
            f"U_{a} down beat point of U(X): {is_beat}; U(X-{a}) inside U(X)-U_{a}: {contained}; "
            f"ubp-retract: {is_retract}"
        )
        return PropagationReport(X.labels[i], b_label, "a", holds, detail)
    iso = find_isomorphism(ux.order, ux_minus.order) is not None
    return PropagationReport(X.labels[i], b_label, "b", iso, f"U(X) isomorphic to U(X-{a}): {iso}")


@dataclass
class RetractReport:
    kind: str
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())


def retract_report(X: FinitePoset, A: Iterable) -> Optional[RetractReport]:
    """
    Check the behaviour of U and F along a bp-retraction r: X -> A.

    Every check is only recorded when its hypotheses hold. Returns None when A
    is neither a dbp- nor an ubp-retract.
    """
    mask = X.mask(A)
    retraction = dbp_retraction(X, mask)
    kind = DOWN
    if retraction is None:
        retraction = ubp_retraction(X, mask)
        kind = UP
    if retraction is None:
        return None
    r, i = retraction.retraction, retraction.inclusion
    sub = retraction.subspace
    report = RetractReport(kind)

    cx = c_space(X)
    report.checks["r(C) = C & A"] = all(
        r.image_mask(region.members) == sub.mask(X.labels_of(region.members & mask))
        for region in cx.regions
    )

    ux, ua = u_family(X), u_family(sub)
    fx, fa = f_family(X), f_family(sub)
    u_r = induced_map(r, U_SIDE, ux, ua)
    u_i = induced_map(i, U_SIDE, ua, ux)
    f_r = induced_map(r, F_SIDE, fx, fa)
    f_i = induced_map(i, F_SIDE, fa, fx)
    holds_max = X.maximal_mask & ~mask == 0
    holds_min = X.minimal_mask & ~mask == 0

    if holds_max:
        report.checks["U(r)(C) = r(C)"] = all(
            u_r(region).as_set() == frozenset(sub.labels_of(r.image_mask(region.members)))
            for region in ux.regions
        )
        report.checks["U(r)U(i) = id"] = u_r.map.compose(u_i.map) == MonotoneMap.identity(ua.order)
    if holds_min:
        report.checks["F(r)(C) = r(C)"] = all(
            f_r(region).as_set() == frozenset(sub.labels_of(r.image_mask(region.members)))
            for region in fx.regions
        )
        report.checks["F(r)F(i) = id"] = f_r.map.compose(f_i.map) == MonotoneMap.identity(fa.order)
    if kind == UP:
        report.checks["U(r) isomorphism"] = u_r.map.is_isomorphism()
        if holds_min:
            report.checks["F(i)F(r) >= id"] = MonotoneMap.identity(fx.order).leq(f_i.map.compose(f_r.map))
    else:
        report.checks["F(r) isomorphism"] = f_r.map.is_isomorphism()
        if holds_max:
            report.checks["U(i)U(r) <= id"] = u_i.map.compose(u_r.map).leq(MonotoneMap.identity(ux.order))
    return report
