"""
End-to-end reproduction suite run by the ``verify_paper`` command.

Every check recomputes its values from the catalog spaces (or from seeded
random posets) and compares them with the expected shapes, member sets and
verdicts. Checks never raise on a mismatch; they report it.
"""
import logging
import time
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Tuple

import numpy as np

from posets.conf import finspace_settings
from posets.services import catalog
from posets.services.fpp import (
    check_crown_lemma,
    check_fixed_point_free_image,
    check_fixed_point_lifting,
    find_fixed_point_free_map,
    has_fpp,
)
from posets.utils.cconstruction import (
    C_SIDE,
    F_SIDE,
    U_SIDE,
    c_space,
    f_family,
    idempotence_maps,
    induced_map,
    kolmogorov_comparison,
    min_containing_mask,
    region_poset,
    retract_report,
    u_family,
    x_prime,
)
from posets.utils.grothendieck import verify_integral_identities
from posets.utils.homotopy import (
    DOWN,
    UP,
    core,
    dbp_retraction,
    find_beat_points,
    homotopic,
    homotopy_equivalent,
    is_contractible,
    is_fence,
    ubp_retraction,
)
from posets.utils.isomorphism import find_isomorphism
from posets.utils.poset import FinitePoset, MonotoneMap, bits, random_monotone_map, random_poset

logger = logging.getLogger(__name__)

XNK_RANGE = [(n, k) for n in range(4, 7) for k in range(2, n)]
XNK_SHAPE_CASES = [(4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 3)]


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _timed(name: str, check: Callable[[], Tuple[bool, str]]) -> CheckResult:
    started = time.perf_counter()
    try:
        passed, detail = check()
    except Exception as e:
        logger.exception(f"check {name} raised")
        passed, detail = False, f"raised {type(e).__name__}: {e}"
    return CheckResult(name, passed, detail, time.perf_counter() - started)


def _sets(space) -> set:
    return {(r.tag, r.as_set()) for r in space.regions}


def _fs(*labels) -> frozenset:
    return frozenset(str(label) for label in labels)


# ----------------------------------------------------------
# Fixed examples
# ----------------------------------------------------------
def check_ex_easy() -> Tuple[bool, str]:
    X = catalog.load("ex-easy")
    space = c_space(X)
    expected = {
        (U_SIDE, _fs(0, 2)), (U_SIDE, _fs(0, 1, 3)), (U_SIDE, _fs(0, 1, 4)),
        (U_SIDE, _fs(0)), (U_SIDE, _fs(1)),
        (F_SIDE, _fs(0, 2, 3, 4)), (F_SIDE, _fs(1, 3, 4)), (F_SIDE, _fs(3)), (F_SIDE, _fs(4)),
    }
    expected_covers = {
        ("U[0]", "U[0,2]"), ("U[0]", "U[0,1,3]"), ("U[0]", "U[0,1,4]"),
        ("U[1]", "U[0,1,3]"), ("U[1]", "U[0,1,4]"),
        ("F[0,2,3,4]", "F[3]"), ("F[0,2,3,4]", "F[4]"), ("F[1,3,4]", "F[3]"), ("F[1,3,4]", "F[4]"),
        ("F[0,2,3,4]", "U[0]"), ("F[1,3,4]", "U[1]"), ("F[3]", "U[0,1,3]"), ("F[4]", "U[0,1,4]"),
    }
    covers = set(space.order.cover_labels)
    ok = _sets(space) == expected and covers == expected_covers
    return ok, f"{len(space)} regions, {len(covers)} covers"


def check_nonfunctorial() -> Tuple[bool, str]:
    X = catalog.load("ex-nonfunctorial")
    f, g = catalog.nonfunctorial_maps(X)
    ux = u_family(X)
    u_f = induced_map(f, U_SIDE, ux, ux)
    u_g = induced_map(g, U_SIDE, ux, ux)
    u_fg = induced_map(f.compose(g), U_SIDE, ux, ux)
    start = ux.regions[ux.find(U_SIDE, X.mask(["2"]))]
    composite = u_f(u_g(start)).as_set()
    direct = u_fg(start).as_set()
    ok = composite == _fs(0, 1, 2, 3) and direct == _fs(2)
    return ok, f"U(f)U(g)({{2}}) = {sorted(composite)}, U(fg)({{2}}) = {sorted(direct)}"


def check_ex_2() -> Tuple[bool, str]:
    X = catalog.load("ex-2")
    ux, fx = u_family(X), f_family(X)
    bottom = ux.order.minimum
    swap = catalog.ex_2_swap(X)
    lifting = check_fixed_point_lifting(X, swap, (ux, fx))
    ok = (
        len(ux) == 3
        and bottom is not None
        and ux.regions[bottom].as_set() == _fs(0, 1, 2, 3)
        and swap.is_fixed_point_free()
        and bool(lifting.fixed_u)
        and bool(lifting.fixed_f)
    )
    return ok, f"U(f) fixes {', '.join(lifting.fixed_u)}; F(f) fixes {', '.join(lifting.fixed_f)}"


def check_fpp_verdicts() -> Tuple[bool, str]:
    failures = []
    with_fpp = [("P3323",), ("P343_1",), ("P343_2",)] + [("Xnk", n, k) for n, k in XNK_RANGE]
    for entry in with_fpp:
        result = find_fixed_point_free_map(catalog.load(*entry))
        if result.witness is not None:
            failures.append(" ".join(map(str, entry)))
    for n in range(2, 6):
        result = find_fixed_point_free_map(catalog.load("crown", n))
        if result.witness is None or not result.witness.is_fixed_point_free():
            failures.append(f"crown {n}")
    return not failures, "mismatches: " + ", ".join(failures) if failures else f"{len(with_fpp) + 4} spaces"


def check_c_p343_1() -> Tuple[bool, str]:
    space = c_space(catalog.load("P343_1"))
    ok = homotopy_equivalent(space.order, catalog.load("P3323"))
    return ok, f"C(P343_1) has {len(space)} regions"


def check_p3323_families() -> Tuple[bool, str]:
    X = catalog.load("P3323")
    ux, fx = u_family(X), f_family(X)
    u_min = ux.order.minimum
    f_max = fx.order.maximum
    non_contractible = {
        (r.tag, r.as_set()) for space in (ux, fx) for r in space.regions if not is_contractible(region_poset(r))
    }
    ok = (
        len(ux) == 7
        and len(fx) == 7
        and u_min is not None
        and ux.regions[u_min].as_set() == _fs(0, 1, 2, 4, 5)
        and f_max is not None
        and fx.regions[f_max].as_set() == _fs(6, 7, 8, 9, 10)
        and non_contractible == {(U_SIDE, _fs(0, 1, 2, 3, 4, 5)), (F_SIDE, _fs(3, 6, 7, 8, 9, 10))}
    )
    return ok, f"|U| = {len(ux)}, |F| = {len(fx)}, {len(non_contractible)} non-contractible regions"


def check_xnk_shape() -> Tuple[bool, str]:
    shape = catalog.load("lemma-A")
    failures = []
    for n, k in XNK_SHAPE_CASES:
        X = catalog.load("Xnk", n, k)
        ux = u_family(X)
        lower = {r.as_set() for i, r in enumerate(ux.regions) if not ux.order.maximal_mask >> i & 1}
        if find_isomorphism(ux.order, shape) is None or lower != set(catalog.xnk_regions(n, k).values()):
            failures.append(f"({n},{k})")
    return not failures, "mismatches: " + ", ".join(failures) if failures else f"{len(XNK_SHAPE_CASES)} cases"


def check_xnk_cardinality() -> Tuple[bool, str]:
    failures = []
    for n, k in XNK_RANGE:
        regions = catalog.xnk_regions(n, k)
        size_a, size_b = len(regions["A"]), len(regions["B"])
        if not (size_a == 2 * n - 3 and size_a > n - k + 2 >= size_b):
            failures.append(f"({n},{k})")
    return not failures, "mismatches: " + ", ".join(failures) if failures else f"{len(XNK_RANGE)} cases"


def check_crowns() -> Tuple[bool, str]:
    reports = [check_crown_lemma(catalog.load("crown", n)) for n in (2, 3, 4)]
    ok = all(r.violations == 0 for r in reports)
    counts = ", ".join(f"n={r.order}: {r.bijective} bijective, {r.non_bijective} non-bijective" for r in reports)
    return ok, counts


def check_lemma_spaces() -> Tuple[bool, str]:
    reports = [check_fixed_point_free_image(catalog.load(name), ["3", "4", "5"]) for name in ("lemma-A", "lemma-B")]
    ok = all(r.violations == 0 for r in reports)
    return ok, ", ".join(f"{r.maps_checked} maps" for r in reports)


def check_counterexamples() -> Tuple[bool, str]:
    X = catalog.load("ex-fig3")
    report = retract_report(X, ["0", "1", "2", "3"])
    ux = u_family(X)
    A = X.mask(["0", "1", "2", "3"])
    retraction = dbp_retraction(X, A)
    sub = retraction.subspace
    ua = u_family(sub)
    u_r = induced_map(retraction.retraction, U_SIDE, ux, ua)
    u_i = induced_map(retraction.inclusion, U_SIDE, ua, ux)
    region = ux.regions[ux.find(U_SIDE, X.mask(["0", "2", "4"]))]
    image = u_r(region).as_set()
    plain = frozenset(sub.labels_of(retraction.retraction.image_mask(region.members)))
    # U(i)U(r) is not below the identity once a maximal point is removed
    round_trip = u_i(u_r(region))
    escapes = round_trip.members & ~region.members != 0
    fig3 = report is not None and image == _fs(0, 1, 2, 3) and plain == _fs(0, 2) and escapes

    Y = catalog.load("ex-fig4")
    smaller = Y.subposet(Y.full_mask & ~(1 << Y.idx("1")))
    fig4 = find_isomorphism(u_family(Y).order, u_family(smaller).order) is None
    detail = (
        f"U(r)({{0,2,4}}) = {sorted(image)}, r({{0,2,4}}) = {sorted(plain)}, "
        f"U(i)U(r)({{0,2,4}}) = {sorted(round_trip.member_labels)}"
    )
    return fig3 and fig4, detail


# ----------------------------------------------------------
# Randomised properties
# ----------------------------------------------------------
PROPERTIES = (
    "op-duality",
    "extremes of C(X)",
    "region invariants",
    "monotonicity",
    "lax functoriality",
    "homotopic maps induce homotopic maps",
    "lax composites homotopic",
    "homotopy equivalences induced",
    "fixed-point lifting",
    "FPP homotopy invariance",
    "certificate soundness",
    "U(X) without up beat points",
    "U(U(X)) = U(X)",
    "X' of U(X)",
    "Kolmogorov comparison",
    "integral identities",
    "bp-retract propositions",
    "fixed region criteria",
)


@dataclass
class PropertyTally:
    samples: int = 0
    violations: Dict[str, int] = field(default_factory=lambda: {name: 0 for name in PROPERTIES})

    def record(self, name: str, holds: bool, X: FinitePoset):
        if not holds:
            self.violations[name] += 1
            logger.warning(f"property '{name}' violated on {X!r}")

    @property
    def total(self) -> int:
        return sum(self.violations.values())


def random_suite_posets(seed: int, samples: int, max_size: int) -> Iterator[FinitePoset]:
    rng = np.random.default_rng(seed)
    for i in range(samples):
        n = int(rng.integers(2, max_size + 1))
        density = float(rng.choice([0.25, 0.4, 0.55, 0.7]))
        yield random_poset(n, density, seed + i, connected=True)


def _op_duality(X: FinitePoset) -> bool:
    cx, cop = c_space(X), c_space(X.opposite())
    swap = {U_SIDE: F_SIDE, F_SIDE: U_SIDE}
    images = []
    for region in cop.regions:
        j = cx.find(swap[region.tag], region.members)
        if j is None:
            return False
        images.append(j)
    witness = MonotoneMap(cop.order, cx.order.opposite(), images, check=False)
    return witness.is_isomorphism()


def _extremes(X: FinitePoset) -> bool:
    cx = c_space(X)
    tops = {(cx.regions[i].tag, cx.regions[i].members) for i in bits(cx.order.maximal_mask)}
    bottoms = {(cx.regions[i].tag, cx.regions[i].members) for i in bits(cx.order.minimal_mask)}
    return tops == {(U_SIDE, X.down_masks[a]) for a in bits(X.maximal_mask)} and bottoms == {
        (F_SIDE, X.up_masks[a]) for a in bits(X.minimal_mask)
    }


def _region_invariants(X: FinitePoset, ux, fx) -> bool:
    for space, masks in ((ux, X.down_masks), (fx, X.up_masks)):
        for region in space.regions:
            closure = 0
            for i in bits(region.members):
                closure |= masks[i]
            if closure != region.members:
                return False
            best = min_containing_mask(X, region.members, region.tag)
            if best is None or best.members != region.members:
                return False
    return True


def _fixed_region_criteria(X: FinitePoset, f: MonotoneMap, ux, fx, cache: Dict[int, bool]) -> bool:
    def fpp(mask):
        if mask not in cache:
            cache[mask] = find_fixed_point_free_map(X.subposet(mask), 1).witness is None
        return cache[mask]

    has_fixed = bool(f.fixed_points())
    if has_fixed:
        return True
    u_f = induced_map(f, U_SIDE, ux, ux)
    f_f = induced_map(f, F_SIDE, fx, fx)
    for region in ux.regions:
        image = u_f(region)
        if image.members & ~region.members == 0 and fpp(region.members):
            return False
        for a in bits(X.maximal_mask):
            if image.members == X.down_masks[a] and region.members & ~X.down_masks[a] == 0:
                return False
    for region in fx.regions:
        if f_f(region).members & ~region.members == 0 and fpp(region.members):
            return False
    for x in range(X.n):
        for punctured, closed in ((X.down_mask(x, True), X.down_masks[x]), (X.up_mask(x, True), X.up_masks[x])):
            if punctured and f.image_mask(punctured) & ~closed == 0 and fpp(punctured):
                return False
    return True


def _induced(f: MonotoneMap, side: str, source, target) -> MonotoneMap:
    return induced_map(f, side, source, target).map


def _homotopic_induced_maps(fence, spaces) -> bool:
    """A fence of self-maps of X induces a fence on each space of regions."""
    for side, space in spaces:
        if not is_fence([_induced(f, side, space, space) for f in fence]):
            return False
    return True


def _lax_composites_homotopic(both, outer, inner, X_spaces, Y_spaces) -> bool:
    for side in (U_SIDE, F_SIDE):
        sx, sy = X_spaces[side], Y_spaces[side]
        composite = _induced(outer, side, sy, sx).compose(_induced(inner, side, sx, sy))
        if not homotopic(_induced(both, side, sx, sx), composite):
            return False
    cx, cy = X_spaces[C_SIDE], Y_spaces[C_SIDE]
    if cx.overlap or cy.overlap:
        return True
    direct = _induced(both, C_SIDE, cx, cx)
    composite = _induced(outer, C_SIDE, cy, cx).compose(_induced(inner, C_SIDE, cx, cy))
    # U(f)U(g) on U-regions and C(fg) on F-regions sits above both
    middle = MonotoneMap(
        cx.order,
        cx.order,
        [composite(i) if region.tag == U_SIDE else direct(i) for i, region in enumerate(cx.regions)],
        check=False,
    )
    return is_fence([direct, middle, composite])


def _equivalences_induce_equivalences(X: FinitePoset, ux, fx) -> bool:
    beats = find_beat_points(X)
    if X.n < 2 or not beats:
        return True
    beat = beats[0]
    rest = X.full_mask & ~(1 << X.idx(beat.element))
    retraction = dbp_retraction(X, rest) if beat.kind == DOWN else ubp_retraction(X, rest)
    if retraction is None:
        return False
    r, i = retraction.retraction, retraction.inclusion
    sub = retraction.subspace
    for side, sx, sa in ((U_SIDE, ux, u_family(sub)), (F_SIDE, fx, f_family(sub))):
        r_ = _induced(r, side, sx, sa)
        i_ = _induced(i, side, sa, sx)
        if not homotopic(r_.compose(i_), MonotoneMap.identity(sa.order)):
            return False
        round_trip = _induced(i.compose(r), side, sx, sx)
        if not is_fence([MonotoneMap.identity(sx.order), round_trip, i_.compose(r_)]):
            return False
    return True


def _kolmogorov_flags(X: FinitePoset) -> bool:
    report = kolmogorov_comparison(X)
    return report.injective and report.order_embedding and report.monotone and report.preorders_agree


def _x_prime_of_u_family(ux) -> bool:
    prime = x_prime(ux.order)
    return prime is not None and prime.retract_verified


def run_property_suite(seed: int, samples: int, max_size: Optional[int] = None) -> PropertyTally:
    max_size = max_size or finspace_settings("RANDOM_MAX_SIZE")
    tally = PropertyTally()
    rng = np.random.default_rng(seed + 1)
    for X in random_suite_posets(seed, samples, max_size):
        tally.samples += 1
        ux, fx = u_family(X), f_family(X)
        tally.record("op-duality", _op_duality(X), X)
        tally.record("extremes of C(X)", _extremes(X), X)
        tally.record("region invariants", _region_invariants(X, ux, fx), X)

        f = random_monotone_map(X, X, int(rng.integers(2**31)))
        g = random_monotone_map(X, X, int(rng.integers(2**31)), allowed=[X.up_masks[v] for v in f.images])
        monotone = all(
            induced_map(f, side, space, space).map.leq(induced_map(g, side, space, space).map)
            for side, space in ((U_SIDE, ux), (F_SIDE, fx))
        )
        tally.record("monotonicity", monotone, X)

        Y = random_poset(int(rng.integers(1, max_size + 1)), 0.5, int(rng.integers(2**31)))
        uy, fy = u_family(Y), f_family(Y)
        inner = random_monotone_map(X, Y, int(rng.integers(2**31)))
        outer = random_monotone_map(Y, X, int(rng.integers(2**31)))
        both = outer.compose(inner)
        lax = induced_map(both, U_SIDE, ux, ux).map.leq(
            induced_map(outer, U_SIDE, uy, ux).map.compose(induced_map(inner, U_SIDE, ux, uy).map)
        ) and induced_map(outer, F_SIDE, fy, fx).map.compose(induced_map(inner, F_SIDE, fx, fy).map).leq(
            induced_map(both, F_SIDE, fx, fx).map
        )
        tally.record("lax functoriality", lax, X)

        X_spaces = {U_SIDE: ux, F_SIDE: fx, C_SIDE: c_space(X)}
        Y_spaces = {U_SIDE: uy, F_SIDE: fy, C_SIDE: c_space(Y)}
        h = random_monotone_map(X, X, int(rng.integers(2**31)), allowed=[X.down_masks[v] for v in g.images])
        sides = [(side, X_spaces[side]) for side in (U_SIDE, F_SIDE)]
        if not X_spaces[C_SIDE].overlap:
            sides.append((C_SIDE, X_spaces[C_SIDE]))
        tally.record("homotopic maps induce homotopic maps", _homotopic_induced_maps([f, g, h], sides), X)
        tally.record(
            "lax composites homotopic", _lax_composites_homotopic(both, outer, inner, X_spaces, Y_spaces), X
        )
        tally.record("homotopy equivalences induced", _equivalences_induce_equivalences(X, ux, fx), X)

        tally.record("fixed-point lifting", check_fixed_point_lifting(X, f, (ux, fx)).holds, X)

        certificate = has_fpp(X)
        ground_truth = find_fixed_point_free_map(X, 1).witness is None
        tally.record("certificate soundness", certificate.has_fpp == ground_truth and certificate.check(), X)
        tally.record(
            "FPP homotopy invariance",
            (find_fixed_point_free_map(core(X), 1).witness is None) == ground_truth,
            X,
        )

        no_beats = not any(r.kind == UP for r in find_beat_points(ux.order)) and not any(
            r.kind == DOWN for r in find_beat_points(fx.order)
        )
        tally.record("U(X) without up beat points", no_beats, X)

        idem = idempotence_maps(X)
        tally.record("U(U(X)) = U(X)", idem.inverse_pair and find_isomorphism(idem.uux.order, ux.order) is not None, X)
        tally.record("X' of U(X)", _x_prime_of_u_family(ux), X)
        tally.record("Kolmogorov comparison", _kolmogorov_flags(X), X)

        integral = verify_integral_identities(X)
        tally.record("integral identities", integral.holds and not integral.quotient_flags, X)

        retracts_ok = True
        for beat in find_beat_points(X):
            if X.n < 2:
                break
            rest = [label for label in X.labels if label != beat.element]
            report = retract_report(X, rest)
            retracts_ok = retracts_ok and report is not None and report.holds
        tally.record("bp-retract propositions", retracts_ok, X)

        tally.record("fixed region criteria", _fixed_region_criteria(X, f, ux, fx, {}), X)
    return tally


# ----------------------------------------------------------
# Suite
# ----------------------------------------------------------
FIXED_CHECKS = [
    ("C(X) of ex-easy", check_ex_easy),
    ("non-functoriality", check_nonfunctorial),
    ("ex-2 lifting converse", check_ex_2),
    ("FPP verdicts by exhaustive search", check_fpp_verdicts),
    ("C(P343_1) homotopy equivalent to P3323", check_c_p343_1),
    ("U and F of P3323", check_p3323_families),
    ("U(X_{n,k}) shape and regions", check_xnk_shape),
    ("X_{n,k} cardinality inequality", check_xnk_cardinality),
    ("crown lemma", check_crowns),
    ("lemma spaces fix {3,4,5}", check_lemma_spaces),
    ("beat point counterexamples", check_counterexamples),
]


def iter_acceptance_checks(seed: Optional[int] = None, samples: Optional[int] = None) -> Iterator[CheckResult]:
    seed = finspace_settings("DEFAULT_SEED") if seed is None else seed
    samples = finspace_settings("RANDOM_SUITE_SIZE") if samples is None else samples
    for name, check in FIXED_CHECKS:
        result = _timed(name, check)
        logger.info(f"{name}: {'pass' if result.passed else 'FAIL'} ({result.seconds:.2f}s)")
        yield result

    def properties():
        tally = run_property_suite(seed, samples)
        broken = [f"{name} ({count})" for name, count in tally.violations.items() if count]
        detail = f"{tally.samples} posets, seed {seed}"
        if broken:
            detail += "; violated: " + ", ".join(broken)
        return not broken, detail

    yield _timed("random property suite", properties)


def run_acceptance_suite(seed: Optional[int] = None, samples: Optional[int] = None) -> List[CheckResult]:
    return list(iter_acceptance_checks(seed, samples))
