"""
Generators for the named spaces used throughout the project.

Each generator returns a ``PosetDocument``; ``generate(name, *params)`` is
the single entry point used by the ``gen`` command and the reproduction
suite.
"""
import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from posets.exceptions import CatalogError
from posets.utils.documents import PosetDocument
from posets.utils.poset import FinitePoset, MonotoneMap

logger = logging.getLogger(__name__)

Covers = List[Tuple[str, str]]


def _numbered(n: int) -> List[str]:
    return [str(i) for i in range(n)]


def _pairs(text: str) -> Covers:
    """'0<2 0<3' -> [('0', '2'), ('0', '3')]."""
    return [tuple(item.split("<")) for item in text.split()]


# ----------------------------------------------------------
# Fixed spaces
# ----------------------------------------------------------
def ex_easy():
    return _numbered(5), _pairs("0<2 0<3 0<4 1<3 1<4")


def ex_nonfunctorial():
    return _numbered(5), _pairs("0<1 1<3 1<4 2<3 2<4")


def ex_2():
    return _numbered(6), _pairs("0<2 0<3 1<2 1<3 2<4 2<5 3<4 3<5")


def ex_fig3():
    return _numbered(5), _pairs("0<1 0<2 1<3 2<3 2<4")


def ex_fig4():
    return _numbered(5), _pairs("0<1 0<2 1<3 1<4")


def lemma_a():
    return _numbered(9), _pairs("0<3 0<4 1<3 1<5 2<4 2<5 3<6 3<7 4<6 4<8 5<7 5<8")


def lemma_b():
    return _numbered(9), _pairs("0<3 0<4 0<5 1<3 1<4 1<5 2<3 2<5 3<6 3<7 4<6 4<8 5<7 5<8")


def p3323():
    return _numbered(11), _pairs(
        "0<3 0<4 1<3 1<5 2<4 2<5 3<8 3<10 4<6 4<7 5<6 5<7 6<8 6<9 7<9 7<10"
    )


def _p343_bottom() -> Covers:
    return _pairs("0<3 0<4 0<5 1<3 1<4 1<6 1<7 2<5 2<6 2<7")


def p343_1():
    return _numbered(11), _p343_bottom() + _pairs("3<8 4<8 6<8 7<8 3<9 5<9 7<9 4<10 5<10 6<10")


def p343_2():
    return _numbered(11), _p343_bottom() + _pairs("3<8 4<8 6<8 3<9 5<9 6<9 7<9 4<10 5<10 7<10")


def ex_step_1():
    elements = ["0", "1", "2", "3", "4", "5", "9", "10", "a", "12", "13", "14"]
    covers = _pairs(
        "0<3 0<4 1<3 1<5 2<4 2<5 9<12 9<13 10<12 10<14 a<13 a<14 3<9 5<9 3<10 5<10 4<a"
    )
    return elements, covers


# ----------------------------------------------------------
# Parameterised families
# ----------------------------------------------------------
def crown(n: int):
    if n < 2:
        raise CatalogError("crown needs n >= 2")
    lower = [str(i) for i in range(n)]
    upper = [str(n + i) for i in range(n)]
    covers = []
    for i in range(n):
        covers.append((lower[i], upper[i]))
        covers.append((lower[(i + 1) % n], upper[i]))
    return lower + upper, covers


def chain_space(n: int):
    if n < 1:
        raise CatalogError("chain needs n >= 1")
    return _numbered(n), [(str(i), str(i + 1)) for i in range(n - 1)]


def antichain_space(n: int):
    if n < 1:
        raise CatalogError("antichain needs n >= 1")
    return _numbered(n), []


def _check_xnk(n: int, k: int):
    if n < 4 or not 2 <= k <= n - 1:
        raise CatalogError(f"Xnk needs n >= 4 and 2 <= k <= n-1, got n={n}, k={k}")


def xnk(n: int, k: int):
    """The space whose minimal open sets are listed by element below."""
    _check_xnk(n, k)
    cs = [f"c{j}" for j in range(1, n + 1)]
    bs = [f"b{j}" for j in range(1, n + 1)]
    covers: Covers = []
    for j in range(1, n + 1):
        below = [j - 1, j + 1]
        if j == 1:
            below = [1, 2]
        elif j == n:
            below = [n - 1, n]
        covers.extend((f"c{i}", f"b{j}") for i in below)
    for j in range(1, n + 1):
        if j <= n - 1:
            covers.append((f"b{j}", "a1"))
        if j != n - 1:
            covers.append((f"b{j}", "a2"))
        if j >= k:
            covers.append((f"b{j}", "a3"))
    return cs + bs + ["a1", "a2", "a3"], covers


def xnk_regions(n: int, k: int) -> Dict[str, frozenset]:
    """The six non-top regions of U(X_{n,k}), named A to F."""
    _check_xnk(n, k)
    same = lambda j: (j - n) % 2 == 0

    def b(*conditions):
        return {f"b{j}" for j in range(1, n + 1) if all(c(j) for c in conditions)}

    def c(*conditions):
        return {f"c{j}" for j in range(1, n + 1) if all(cond(j) for cond in conditions)}

    return {
        "A": frozenset(b(lambda j: j <= n - 2) | c(lambda j: j <= n - 1)),
        "B": frozenset(b(lambda j: j >= k, lambda j: not same(j)) | c(lambda j: j >= k - 1, same)),
        "C": frozenset(
            b(lambda j: j >= k, same) | c(lambda j: j >= k - 1, lambda j: not same(j)) | {f"c{n}"}
        ),
        "D": frozenset(
            b(lambda j: k <= j <= n - 3, lambda j: not same(j)) | c(lambda j: k - 1 <= j <= n - 2, same)
        ),
        "E": frozenset(
            b(lambda j: k <= j <= n - 2, same) | c(lambda j: k - 1 <= j <= n - 1, lambda j: not same(j))
        ),
        "F": frozenset({f"c{n}"}),
    }


# ----------------------------------------------------------
# Registry
# ----------------------------------------------------------
@dataclass(frozen=True)
class CatalogEntry:
    builder: Callable
    params: Tuple[str, ...]
    description: str


CATALOG: Dict[str, CatalogEntry] = {
    "ex-easy": CatalogEntry(ex_easy, (), "5 points, two minimal and three maximal"),
    "ex-nonfunctorial": CatalogEntry(ex_nonfunctorial, (), "space where U(fg) differs from U(f)U(g)"),
    "ex-2": CatalogEntry(ex_2, (), "three levels of two points; U(X) has the property, X lacks it"),
    "ex-fig3": CatalogEntry(ex_fig3, (), "dbp-retract where U(r) does not act as r"),
    "ex-fig4": CatalogEntry(ex_fig4, (), "removing a down beat point changes U(X)"),
    "crown": CatalogEntry(crown, ("n",), "the 2n-crown"),
    "chain": CatalogEntry(chain_space, ("n",), "chain of n points"),
    "antichain": CatalogEntry(antichain_space, ("n",), "antichain of n points"),
    "lemma-A": CatalogEntry(lemma_a, (), "9 points; U(X_{n,k}) has this shape"),
    "lemma-B": CatalogEntry(lemma_b, (), "9 points; companion space used for P343_2"),
    "P3323": CatalogEntry(p3323, (), "11 points with levels 3,3,2,3"),
    "P343_1": CatalogEntry(p343_1, (), "11 points with levels 3,4,3 (first)"),
    "P343_2": CatalogEntry(p343_2, (), "11 points with levels 3,4,3 (second)"),
    "ex-step-1": CatalogEntry(ex_step_1, (), "12 points between C(P343_1) and P3323"),
    "Xnk": CatalogEntry(xnk, ("n", "k"), "the family X_{n,k}, n >= 4, 2 <= k <= n-1"),
}


def generate(name: str, *params) -> PosetDocument:
    """
    Build a catalog space.

    Args:
        name: catalog id, e.g. "P3323" or "Xnk".
        params: integer parameters, given as ints or numeric strings.
    """
    try:
        entry = CATALOG[name]
    except KeyError:
        known = ", ".join(sorted(CATALOG))
        raise CatalogError(f"Unknown catalog id {name!r}; known: {known}") from None
    if len(params) != len(entry.params):
        raise CatalogError(f"{name} takes {len(entry.params)} parameter(s): {' '.join(entry.params)}")
    try:
        values = [int(p) for p in params]
    except (TypeError, ValueError):
        raise CatalogError(f"Parameters of {name} must be integers") from None
    elements, covers = entry.builder(*values)
    suffix = "".join(f" {v}" for v in values)
    doc = PosetDocument(f"{name}{suffix}", list(elements), list(covers), {"generator": name})
    doc.to_poset()
    logger.debug(f"generated {doc.name}: {len(elements)} elements, {len(covers)} covers")
    return doc


def load(name: str, *params) -> FinitePoset:
    return generate(name, *params).to_poset()


# ----------------------------------------------------------
# Maps that come with the example spaces
# ----------------------------------------------------------
def nonfunctorial_maps(X: FinitePoset) -> Tuple[MonotoneMap, MonotoneMap]:
    """f and g on ex-nonfunctorial: f as tabulated, g constant at 0."""
    f = MonotoneMap.from_labels(X, X, {"0": "2", "1": "3", "2": "3", "3": "3", "4": "3"})
    g = MonotoneMap.constant(X, X, X.idx("0"))
    return f, g


def ex_2_swap(X: FinitePoset) -> MonotoneMap:
    return MonotoneMap.from_labels(X, X, {"0": "1", "1": "0", "2": "3", "3": "2", "4": "5", "5": "4"})
