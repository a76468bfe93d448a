from django.test import SimpleTestCase

from posets.exceptions import CatalogError
from posets.services import catalog
from posets.services.fpp import crown_order
from posets.utils.cconstruction import u_family
from posets.utils.isomorphism import is_isomorphic


class GenerateTests(SimpleTestCase):
    def test_every_fixed_entry_builds(self):
        for name, entry in catalog.CATALOG.items():
            params = [4, 2][: len(entry.params)]
            doc = catalog.generate(name, *params)
            self.assertEqual(doc.metadata, {"generator": name})
            self.assertTrue(doc.to_poset().n > 0)

    def test_sizes(self):
        expected = {
            "ex-easy": (5, 5),
            "ex-2": (6, 8),
            "lemma-A": (9, 12),
            "lemma-B": (9, 14),
            "P3323": (11, 16),
            "P343_1": (11, 20),
            "P343_2": (11, 20),
            "ex-step-1": (12, 17),
        }
        for name, (elements, covers) in expected.items():
            X = catalog.load(name)
            self.assertEqual((X.n, len(X.covers)), (elements, covers), msg=name)

    def test_crown(self):
        X = catalog.load("crown", 2)
        self.assertEqual(X.n, 4)
        self.assertEqual(crown_order(X), 2)

    def test_name_includes_parameters(self):
        self.assertEqual(catalog.generate("Xnk", "5", "3").name, "Xnk 5 3")

    def test_unknown_id(self):
        with self.assertRaises(CatalogError):
            catalog.generate("P999")

    def test_parameter_count(self):
        with self.assertRaises(CatalogError):
            catalog.generate("crown")

    def test_non_integer_parameter(self):
        with self.assertRaises(CatalogError):
            catalog.generate("crown", "x")

    def test_xnk_range(self):
        with self.assertRaises(CatalogError):
            catalog.generate("Xnk", 3, 2)
        with self.assertRaises(CatalogError):
            catalog.generate("Xnk", 5, 5)


class XnkTests(SimpleTestCase):
    def test_size(self):
        self.assertEqual(catalog.load("Xnk", 6, 3).n, 15)

    def test_u_family_shape(self):
        shape = catalog.load("lemma-A")
        for n, k in [(4, 2), (5, 3), (6, 3)]:
            self.assertTrue(is_isomorphic(u_family(catalog.load("Xnk", n, k)).order, shape))

    def test_lower_regions(self):
        n, k = 5, 3
        ux = u_family(catalog.load("Xnk", n, k))
        lower = {r.as_set() for i, r in enumerate(ux.regions) if not ux.order.maximal_mask >> i & 1}
        self.assertEqual(lower, set(catalog.xnk_regions(n, k).values()))

    def test_region_a(self):
        regions = catalog.xnk_regions(4, 2)
        self.assertEqual(regions["A"], {"b1", "b2", "c1", "c2", "c3"})
        self.assertEqual(regions["F"], {"c4"})

    def test_cardinality_inequality(self):
        for n in range(4, 7):
            for k in range(2, n):
                regions = catalog.xnk_regions(n, k)
                self.assertEqual(len(regions["A"]), 2 * n - 3)
                self.assertGreater(len(regions["A"]), n - k + 2)
                self.assertGreaterEqual(n - k + 2, len(regions["B"]))


class ExampleMapTests(SimpleTestCase):
    def test_swap_is_fixed_point_free(self):
        X = catalog.load("ex-2")
        self.assertTrue(catalog.ex_2_swap(X).is_fixed_point_free())

    def test_nonfunctorial_maps_are_monotone(self):
        f, g = catalog.nonfunctorial_maps(catalog.load("ex-nonfunctorial"))
        self.assertTrue(f.is_monotone())
        self.assertTrue(g.is_monotone())
