from django.test import SimpleTestCase

from posets.exceptions import CycleError, DuplicateLabelError, PosetError, UnknownElementError
from posets.services import catalog
from posets.utils.poset import (
    MonotoneMap,
    antichain,
    build_poset,
    chain,
    connected_components,
    down_set,
    extremes,
    induced_subposet,
    iter_monotone_maps,
    random_monotone_map,
    random_poset,
    up_set,
)


class BuildPosetTests(SimpleTestCase):
    def test_covers_of_ex_easy(self):
        X = catalog.load("ex-easy")
        self.assertEqual(
            set(X.cover_labels),
            {("0", "2"), ("0", "3"), ("0", "4"), ("1", "3"), ("1", "4")},
        )

    def test_redundant_pairs_are_dropped(self):
        X = build_poset("abc", [("a", "b"), ("b", "c"), ("a", "c")])
        self.assertEqual(X.cover_labels, (("a", "b"), ("b", "c")))
        self.assertTrue(X.is_leq(X.idx("a"), X.idx("c")))

    def test_singleton(self):
        X = build_poset(["a"], [])
        self.assertEqual(X.n, 1)
        self.assertEqual(X.maximum, 0)

    def test_cycle_is_rejected(self):
        with self.assertRaises(CycleError):
            build_poset(["a", "b"], [("a", "b"), ("b", "a")])

    def test_self_loop_is_rejected(self):
        with self.assertRaises(CycleError):
            build_poset(["a"], [("a", "a")])

    def test_duplicate_label(self):
        with self.assertRaises(DuplicateLabelError):
            build_poset(["a", "a"], [])

    def test_unknown_element(self):
        with self.assertRaises(UnknownElementError):
            build_poset(["a"], [("a", "z")])


class QueryTests(SimpleTestCase):
    def setUp(self):
        self.X = catalog.load("ex-easy")

    def test_down_and_up_sets(self):
        self.assertEqual(down_set(self.X, "3"), {"0", "1", "3"})
        self.assertEqual(down_set(self.X, "3", punctured=True), {"0", "1"})
        self.assertEqual(up_set(self.X, "0"), {"0", "2", "3", "4"})
        self.assertEqual(up_set(self.X, "2", punctured=True), frozenset())

    def test_extremes(self):
        self.assertEqual(extremes(self.X), ({"2", "3", "4"}, {"0", "1"}))

    def test_chain_has_maximum_and_minimum(self):
        C = chain(4)
        self.assertEqual(C.labels[C.maximum], "3")
        self.assertEqual(C.labels[C.minimum], "0")
        self.assertEqual(C.levels, (0, 1, 2, 3))

    def test_antichain_has_no_maximum(self):
        A = antichain(3)
        self.assertIsNone(A.maximum)
        self.assertFalse(A.is_connected())
        self.assertEqual(len(A.components()), 3)

    def test_connected_components(self):
        X = catalog.load("ex-nonfunctorial")
        parts = connected_components(X, ["0", "1", "2"])
        self.assertEqual(set(parts), {frozenset({"0", "1"}), frozenset({"2"})})

    def test_unknown_label_lookup(self):
        with self.assertRaises(UnknownElementError):
            self.X.idx("9")

    def test_opposite_is_an_involution(self):
        op = self.X.opposite()
        self.assertEqual(extremes(op), ({"0", "1"}, {"2", "3", "4"}))
        self.assertEqual(op.opposite(), self.X)

    def test_induced_subposet_keeps_order(self):
        sub = induced_subposet(self.X, ["0", "3", "4"])
        self.assertEqual(set(sub.cover_labels), {("0", "3"), ("0", "4")})
        self.assertEqual(sub.labels[sub.minimum], "0")


class MonotoneMapTests(SimpleTestCase):
    def setUp(self):
        self.X = catalog.load("ex-nonfunctorial")
        self.f, self.g = catalog.nonfunctorial_maps(self.X)

    def test_non_monotone_map_is_rejected(self):
        C = chain(2)
        with self.assertRaises(PosetError):
            MonotoneMap(C, C, [1, 0])

    def test_composition(self):
        fg = self.f.compose(self.g)
        self.assertEqual(set(fg.images), {self.X.idx("2")})

    def test_fixed_points(self):
        self.assertEqual(self.f.fixed_points(), [self.X.idx("3")])
        self.assertFalse(self.f.is_fixed_point_free())
        self.assertFalse(self.f.is_bijective())

    def test_pointwise_order(self):
        identity = MonotoneMap.identity(self.X)
        self.assertTrue(identity.leq(identity))
        bottom = MonotoneMap.constant(self.X, self.X, self.X.idx("0"))
        self.assertFalse(identity.leq(bottom))

    def test_inclusion(self):
        sub = induced_subposet(self.X, ["1", "3"])
        inclusion = MonotoneMap.inclusion(sub, self.X)
        self.assertEqual(inclusion.as_label_dict(), {"1": "1", "3": "3"})

    def test_enumeration_on_chain(self):
        C = chain(2)
        self.assertEqual(sorted(iter_monotone_maps(C, C)), [(0, 0), (0, 1), (1, 1)])

    def test_random_map_respects_allowed_images(self):
        allowed = [self.X.up_masks[v] for v in self.f.images]
        g = random_monotone_map(self.X, self.X, 7, allowed=allowed)
        self.assertTrue(g.is_monotone())
        self.assertTrue(self.f.leq(g))


class RandomPosetTests(SimpleTestCase):
    def test_same_seed_same_poset(self):
        self.assertEqual(random_poset(7, 0.4, 11), random_poset(7, 0.4, 11))

    def test_connected_option(self):
        for seed in range(20):
            X = random_poset(8, 0.3, seed, connected=True)
            self.assertTrue(X.is_connected())

    def test_density_range(self):
        with self.assertRaises(PosetError):
            random_poset(4, 1.5, 0)
