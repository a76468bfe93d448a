"""
Fixed point property decision engine.

Ground truth is the exhaustive search for a fixed-point-free order-preserving
self-map. Under that search every element may only be sent to elements it is
not comparable with (a map sending some x to a comparable point has a fixed
point), which is what keeps the larger catalog spaces tractable.

``has_fpp`` layers cheap proofs in front of the search:

    1. disconnected          -> lacks (explicit witness)
    2. maximum or minimum    -> has
    3. contractible core     -> has
    4. C-criterion           -> has, when U(X), F(X) or C(X) has the property
                                and so does each of its regions
    5. exhaustive search     -> witness (lacks) or exhaustion (has)

Nested calls made by step 4 never apply the criterion again unless
CRITERION_DEPTH allows it.
"""
import logging
import time
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from joblib import Parallel, delayed

from posets.conf import finspace_settings
from posets.exceptions import EnumerationLimitError, NotACrownError, PosetError, UndecidedError
from posets.utils.cconstruction import C_SIDE, F_SIDE, U_SIDE, family, induced_map, region_poset
from posets.utils.homotopy import core_with_removals
from posets.utils.poset import (
    FinitePoset,
    MonotoneMap,
    bits,
    greedy_linear_extension,
    iter_monotone_maps,
    popcount,
)

logger = logging.getLogger(__name__)

HAS_FPP = "has_fpp"
LACKS_FPP = "lacks_fpp"
METHODS = ("auto", "brute", "criterion")


# ----------------------------------------------------------
# Evidence
# ----------------------------------------------------------
@dataclass(frozen=True)
class MaxOrMin:
    extreme: str
    element: str

    def describe(self) -> str:
        return f"has a {self.extreme} ({self.element})"


@dataclass(frozen=True)
class Contractible:
    removed: Tuple[str, ...]

    def describe(self) -> str:
        return f"contractible: core is a point after removing {len(self.removed)} beat points"


@dataclass(frozen=True)
class BruteForceExhausted:
    nodes: int
    seconds: float

    def describe(self) -> str:
        return f"exhaustive search found no fixed-point-free map ({self.nodes} search nodes, {self.seconds:.3f}s)"


@dataclass(frozen=True)
class Witness:
    map: MonotoneMap
    reason: str = "search"

    def describe(self) -> str:
        pairs = " ".join(f"{a}->{b}" for a, b in self.map.as_label_dict().items())
        if self.reason == "disconnected":
            return f"not connected; fixed-point-free map: {pairs}"
        return f"fixed-point-free map: {pairs}"


@dataclass(frozen=True)
class CCriterion:
    side: str
    space_certificate: "FppCertificate"
    region_certificates: Tuple[Tuple[str, "FppCertificate"], ...]

    def describe(self) -> str:
        name = {U_SIDE: "U(X)", F_SIDE: "F(X)", C_SIDE: "C(X)"}[self.side]
        return f"C-criterion on {name}: the space and all {len(self.region_certificates)} regions have the property"


Evidence = Union[MaxOrMin, Contractible, BruteForceExhausted, Witness, CCriterion]


@dataclass(frozen=True)
class FppCertificate:
    verdict: str
    evidence: Evidence

    def __post_init__(self):
        if (self.verdict == LACKS_FPP) != isinstance(self.evidence, Witness):
            raise PosetError("A lacks_fpp verdict needs a witness and only a witness")

    @property
    def has_fpp(self) -> bool:
        return self.verdict == HAS_FPP

    def check(self) -> bool:
        """A witness must really be a fixed-point-free monotone self-map."""
        if isinstance(self.evidence, Witness):
            f = self.evidence.map
            return f.source == f.target and f.is_monotone() and f.is_fixed_point_free()
        return True

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        lines = [f"{pad}verdict: {self.verdict}", f"{pad}evidence: {self.evidence.describe()}"]
        if isinstance(self.evidence, CCriterion):
            lines.append(f"{pad}  space:")
            lines.append(self.evidence.space_certificate.render(indent + 2))
            for label, certificate in self.evidence.region_certificates:
                lines.append(f"{pad}  region {label}:")
                lines.append(certificate.render(indent + 2))
        return "\n".join(lines)


# ----------------------------------------------------------
# Exhaustive search
# ----------------------------------------------------------
def incomparable_masks(X: FinitePoset) -> List[int]:
    return [X.full_mask & ~X.comparable_masks[i] for i in range(X.n)]


def enumerate_endomaps(X: FinitePoset, fixed_point_free_only: bool = False) -> Iterator[MonotoneMap]:
    """Every order-preserving self-map of X, optionally only fixed-point-free ones."""
    allowed = incomparable_masks(X) if fixed_point_free_only else None
    for images in iter_monotone_maps(X, X, allowed):
        yield MonotoneMap(X, X, images, check=False)


def _first_witness(X: FinitePoset, allowed: Sequence[int], order: Sequence[int]) -> Tuple[Optional[Tuple[int, ...]], int]:
    n = X.n
    below = [X.lower_covers[x] for x in order]
    up = X.up_masks
    images: List[Optional[int]] = [None] * n
    nodes = 0

    def backtrack(p):
        nonlocal nodes
        nodes += 1
        if p == n:
            return True
        x = order[p]
        candidates = allowed[x]
        for y in below[p]:
            candidates &= up[images[y]]
        for value in bits(candidates):
            images[x] = value
            if backtrack(p + 1):
                return True
        images[x] = None
        return False

    found = backtrack(0)
    return (tuple(images) if found else None), nodes


def _branch(X: FinitePoset, allowed: Sequence[int], order: Sequence[int], value: int):
    restricted = list(allowed)
    restricted[order[0]] = 1 << value
    return _first_witness(X, restricted, order)


@dataclass
class SearchResult:
    witness: Optional[MonotoneMap]
    nodes: int
    seconds: float = 0.0


def find_fixed_point_free_map(X: FinitePoset, n_jobs: Optional[int] = None) -> SearchResult:
    """
    Search for a fixed-point-free self-map.

    The witness is the least one in the lexicographic order of image tuples
    read along the search's linear extension. With ``n_jobs`` other than 1 the
    first decision level is split across joblib workers and the coordinator
    keeps the branch with the smallest first image that succeeded.
    """
    n_jobs = finspace_settings("FPP_N_JOBS") if n_jobs is None else n_jobs
    started = time.perf_counter()
    if X.n == 0:
        return SearchResult(MonotoneMap(X, X, []), 1)
    allowed = incomparable_masks(X)
    order = greedy_linear_extension(X)
    if n_jobs == 1:
        images, nodes = _first_witness(X, allowed, order)
    else:
        branches = list(bits(allowed[order[0]]))
        results = Parallel(n_jobs=n_jobs)(delayed(_branch)(X, allowed, order, v) for v in branches)
        nodes = 1 + sum(count for _, count in results)
        images = next((found for found, _ in results if found is not None), None)
    elapsed = time.perf_counter() - started
    logger.debug(f"fixed-point-free search on {X.n} points: {nodes} nodes in {elapsed:.3f}s")
    witness = MonotoneMap(X, X, images, check=False) if images is not None else None
    return SearchResult(witness, nodes, elapsed)


# ----------------------------------------------------------
# Decision cascade
# ----------------------------------------------------------
def _disconnected_witness(X: FinitePoset) -> MonotoneMap:
    components = X.components()
    images = [0] * X.n
    for k, component in enumerate(components):
        nxt = components[(k + 1) % len(components)]
        target = (nxt & -nxt).bit_length() - 1
        for i in bits(component):
            images[i] = target
    return MonotoneMap(X, X, images, check=False)


def _criterion(X: FinitePoset, side: str, depth: int, n_jobs) -> Optional[CCriterion]:
    try:
        space = family(X, side)
    except EnumerationLimitError as e:
        logger.debug(f"{side}-criterion skipped: {e}")
        return None
    if side == C_SIDE and space.overlap:
        return None
    regions = []
    for region in space.regions:
        certificate = has_fpp(region_poset(region), "auto", depth - 1, n_jobs)
        if not certificate.has_fpp:
            logger.debug(f"{side}-criterion fails: region {region.label} lacks the property")
            return None
        regions.append((region.label, certificate))
    space_certificate = has_fpp(space.order, "auto", depth - 1, n_jobs)
    if not space_certificate.has_fpp:
        return None
    return CCriterion(side, space_certificate, tuple(regions))


def has_fpp(
    X: FinitePoset,
    method: str = "auto",
    depth: Optional[int] = None,
    n_jobs: Optional[int] = None,
) -> FppCertificate:
    """
    Decide whether X has the fixed point property.

    Args:
        method: "auto" runs the whole cascade, "brute" goes straight to the
            exhaustive search, "criterion" never searches X itself and raises
            UndecidedError when no proof applies.
        depth: how many nested levels may still use the C-criterion; defaults
            to the CRITERION_DEPTH setting.
    """
    if method not in METHODS:
        raise PosetError(f"Unknown method {method!r}; expected one of {', '.join(METHODS)}")
    depth = finspace_settings("CRITERION_DEPTH") if depth is None else depth

    if X.n == 0 or not X.is_connected():
        return FppCertificate(LACKS_FPP, Witness(_disconnected_witness(X), "disconnected"))

    if method != "brute":
        if X.maximum is not None:
            return FppCertificate(HAS_FPP, MaxOrMin("maximum", X.labels[X.maximum]))
        if X.minimum is not None:
            return FppCertificate(HAS_FPP, MaxOrMin("minimum", X.labels[X.minimum]))
        reduced, removed = core_with_removals(X)
        if reduced.n == 1:
            return FppCertificate(HAS_FPP, Contractible(tuple(str(r) for r in removed)))
        if depth > 0:
            for side in (U_SIDE, F_SIDE, C_SIDE):
                evidence = _criterion(X, side, depth, n_jobs)
                if evidence is not None:
                    logger.info(f"{X.n}-point space has the fixed point property by the {side}-criterion")
                    return FppCertificate(HAS_FPP, evidence)
        if method == "criterion":
            raise UndecidedError("No proof strategy applies; rerun with method 'auto' or 'brute'")

    result = find_fixed_point_free_map(X, n_jobs)
    if result.witness is not None:
        logger.info(f"{X.n}-point space lacks the fixed point property")
        return FppCertificate(LACKS_FPP, Witness(result.witness))
    return FppCertificate(HAS_FPP, BruteForceExhausted(result.nodes, result.seconds))


# ----------------------------------------------------------
# Crowns and exhaustive lemma checks
# ----------------------------------------------------------
def crown_order(X: FinitePoset) -> Optional[int]:
    """n when X is a 2n-crown, else None."""
    if X.n < 4 or X.n % 2:
        return None
    lower, upper = X.minimal_mask, X.maximal_mask
    if lower & upper or lower | upper != X.full_mask or popcount(lower) != popcount(upper):
        return None
    if any(len(X.lower_covers[i]) + len(X.upper_covers[i]) != 2 for i in range(X.n)):
        return None
    if not X.is_connected():
        return None
    return X.n // 2


@dataclass(frozen=True)
class CrownLemmaReport:
    order: int
    bijective: int
    non_bijective: int
    fixed_point_free_maps: int
    violations: int


def check_crown_lemma(X: FinitePoset) -> CrownLemmaReport:
    """
    Every non-bijective self-map of a crown has a fixed point. All
    order-preserving self-maps are enumerated; a non-bijective one without a
    fixed point counts as a violation.
    """
    order = crown_order(X)
    if order is None:
        raise NotACrownError("Input is not a 2n-crown")
    bijective = non_bijective = fixed_point_free = violations = 0
    for f in enumerate_endomaps(X):
        free = f.is_fixed_point_free()
        fixed_point_free += free
        if f.is_bijective():
            bijective += 1
        else:
            non_bijective += 1
            violations += free
    return CrownLemmaReport(order, bijective, non_bijective, fixed_point_free, violations)


@dataclass(frozen=True)
class LiftingReport:
    has_fixed_point: bool
    fixed_u: Tuple[str, ...]
    fixed_f: Tuple[str, ...]
    holds: bool


def check_fixed_point_lifting(X: FinitePoset, f: MonotoneMap, spaces=None) -> LiftingReport:
    """If f fixes a point, U(f) and F(f) must fix a region each."""
    if f.source != X or f.target != X:
        raise PosetError("f must be a self-map of X")
    ux, fx = spaces if spaces else (family(X, U_SIDE), family(X, F_SIDE))
    fixed_u = tuple(r.label for r in induced_map(f, U_SIDE, ux, ux).fixed_regions())
    fixed_f = tuple(r.label for r in induced_map(f, F_SIDE, fx, fx).fixed_regions())
    has_fixed = bool(f.fixed_points())
    holds = not has_fixed or bool(fixed_u and fixed_f)
    return LiftingReport(has_fixed, fixed_u, fixed_f, holds)


@dataclass(frozen=True)
class ImageReport:
    subset: Tuple[str, ...]
    maps_checked: int
    violations: int


def check_fixed_point_free_image(X: FinitePoset, S) -> ImageReport:
    """Exhaustively check f(S) = S for every fixed-point-free self-map f."""
    mask = X.mask(S)
    checked = violations = 0
    for f in enumerate_endomaps(X, fixed_point_free_only=True):
        checked += 1
        violations += f.image_mask(mask) != mask
    return ImageReport(X.labels_of(mask), checked, violations)
