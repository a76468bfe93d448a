"""
The Grothendieck construction of the inclusion diagram C -> C over U(X).

Elements are pairs (C, x) with C in U(X) and x in C, ordered by
(C1, x1) <= (C2, x2) iff C1 is contained in C2 and x1 <= x2 in X. Labels read
"(U[0,1,3],1)".
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np

from posets.utils.cconstruction import (
    CSpace,
    U_SIDE,
    c_u,
    idempotence_maps,
    induced_map,
    u_family,
)
from posets.utils.homotopy import dbp_retraction, homotopy_equivalent
from posets.utils.poset import FinitePoset, MonotoneMap, bits, transitive_closure

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GrothendieckPoset:
    base: CSpace
    poset: FinitePoset
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def ambient(self) -> FinitePoset:
        return self.base.ambient

    def index_of(self, region_index: int, x: int) -> int:
        return self.pairs.index((region_index, x))


def build_integral(X: FinitePoset) -> GrothendieckPoset:
    base = u_family(X)
    pairs = [(c, x) for c, region in enumerate(base.regions) for x in bits(region.members)]
    labels = [f"({base.regions[c].label},{X.labels[x]})" for c, x in pairs]
    regions = np.array([c for c, _ in pairs], dtype=np.int64)
    points = np.array([x for _, x in pairs], dtype=np.int64)
    leq = base.order.leq[np.ix_(regions, regions)] & X.leq[np.ix_(points, points)]
    return GrothendieckPoset(base, FinitePoset(labels, leq), tuple(pairs))


def structure_maps(X: FinitePoset, integral: GrothendieckPoset = None) -> Tuple[MonotoneMap, MonotoneMap, MonotoneMap]:
    """
    rho(C, x) = x, iota(x) = (C_U(x), x) and q(C, x) = C.

    Returns:
        (rho, iota, q) as monotone maps.
    """
    integral = integral or build_integral(X)
    base = integral.base
    rho = MonotoneMap(integral.poset, X, [x for _, x in integral.pairs])
    iota = MonotoneMap(
        X,
        integral.poset,
        [integral.index_of(base.index_of(c_u(X, X.labels[x])), x) for x in range(X.n)],
    )
    q = MonotoneMap(integral.poset, base.order, [c for c, _ in integral.pairs])
    return rho, iota, q


def maximal_pairs(integral: GrothendieckPoset) -> List[int]:
    """Indices of the pairs (U_a, a) for the maximal elements a of X."""
    X, base = integral.ambient, integral.base
    found = []
    for a in bits(X.maximal_mask):
        c = base.find(U_SIDE, X.down_masks[a])
        if c is not None:
            found.append(integral.index_of(c, a))
    return found


@dataclass
class IntegralReport:
    checks: Dict[str, bool] = field(default_factory=dict)
    quotient_flags: List[str] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def lines(self) -> List[str]:
        rows = [f"{'ok  ' if passed else 'FAIL'} {name}" for name, passed in self.checks.items()]
        rows.extend(f"flag {note}" for note in self.quotient_flags)
        return rows


def _quotient_discrepancies(integral: GrothendieckPoset, q: MonotoneMap) -> List[str]:
    notes = []
    base = integral.base.order
    if set(q.images) != set(range(base.n)):
        notes.append("q is not surjective onto U(X)")
    # relation on U(X) generated by comparable fibre elements
    relation = np.zeros((base.n, base.n), dtype=bool)
    leq = integral.poset.leq
    for i, ci in enumerate(q.images):
        for j, cj in enumerate(q.images):
            if leq[i, j]:
                relation[ci, cj] = True
    if not np.array_equal(transitive_closure(relation), base.leq):
        notes.append("order induced through q differs from the order of U(X)")
    return notes


def verify_integral_identities(X: FinitePoset) -> IntegralReport:
    integral = build_integral(X)
    rho, iota, q = structure_maps(X, integral)
    report = IntegralReport()

    report.checks["size = sum of |C|"] = integral.poset.n == sum(region.size for region in integral.base.regions)
    report.checks["maximal = (U_a, a)"] = set(bits(integral.poset.maximal_mask)) == set(maximal_pairs(integral))

    identity_x = MonotoneMap.identity(X)
    report.checks["rho iota = id"] = rho.compose(iota) == identity_x
    report.checks["iota rho <= id"] = iota.compose(rho).leq(MonotoneMap.identity(integral.poset))

    image = iota.image_mask(X.full_mask)
    retraction = dbp_retraction(integral.poset, image)
    report.checks["iota(X) dbp-retract"] = retraction is not None

    ux = integral.base
    uint = u_family(integral.poset)
    u_iota = induced_map(iota, U_SIDE, ux, uint)
    u_rho = induced_map(rho, U_SIDE, uint, ux)
    report.checks["U(iota) isomorphism"] = u_iota.map.is_isomorphism()
    report.checks["U(rho) U(iota) = id"] = u_rho.map.compose(u_iota.map) == MonotoneMap.identity(ux.order)
    report.checks["U(iota) U(rho) = id"] = u_iota.map.compose(u_rho.map) == MonotoneMap.identity(uint.order)

    tilde_ok = True
    for c, region in enumerate(ux.regions):
        tilde = 0
        for k, (d, _) in enumerate(integral.pairs):
            if ux.regions[d].members & ~region.members == 0:
                tilde |= 1 << k
        tilde_ok = tilde_ok and u_iota(region).members == tilde
    report.checks["U(iota)(C) = C~"] = tilde_ok

    idem = idempotence_maps(X)
    u_q = induced_map(q, U_SIDE, uint, idem.uux)
    report.checks["phi U(q) = U(rho)"] = idem.phi.compose(u_q.map).images == u_rho.map.images

    report.checks["X ~ integral"] = homotopy_equivalent(X, integral.poset)
    report.quotient_flags = _quotient_discrepancies(integral, q)
    for note in report.quotient_flags:
        logger.warning(note)
    return report
