import itertools

from django.test import SimpleTestCase, override_settings

from posets.exceptions import NotACrownError, PosetError, UndecidedError
from posets.services import catalog
from posets.services.fpp import (
    HAS_FPP,
    LACKS_FPP,
    BruteForceExhausted,
    CCriterion,
    Contractible,
    FppCertificate,
    MaxOrMin,
    Witness,
    check_crown_lemma,
    check_fixed_point_free_image,
    check_fixed_point_lifting,
    crown_order,
    enumerate_endomaps,
    find_fixed_point_free_map,
    has_fpp,
)
from posets.utils.poset import MonotoneMap, antichain, build_poset, chain, random_poset


class CascadeTests(SimpleTestCase):
    def test_chain_has_maximum(self):
        certificate = has_fpp(chain(4))
        self.assertEqual(certificate.verdict, HAS_FPP)
        self.assertIsInstance(certificate.evidence, MaxOrMin)
        self.assertEqual(certificate.evidence.extreme, "maximum")

    def test_contractible_space(self):
        fence = build_poset("abcd", [("a", "c"), ("b", "c"), ("b", "d")])
        certificate = has_fpp(fence)
        self.assertEqual(certificate.verdict, HAS_FPP)
        self.assertIsInstance(certificate.evidence, Contractible)

    def test_disconnected_space(self):
        certificate = has_fpp(antichain(2))
        self.assertEqual(certificate.verdict, LACKS_FPP)
        self.assertTrue(certificate.check())
        self.assertEqual(certificate.evidence.reason, "disconnected")

    def test_crown_lacks_fpp(self):
        for n in range(2, 6):
            certificate = has_fpp(catalog.load("crown", n))
            self.assertEqual(certificate.verdict, LACKS_FPP)
            self.assertIsInstance(certificate.evidence, Witness)
            self.assertTrue(certificate.check())

    def test_p3323_is_decided_by_search(self):
        certificate = has_fpp(catalog.load("P3323"))
        self.assertEqual(certificate.verdict, HAS_FPP)
        self.assertIsInstance(certificate.evidence, BruteForceExhausted)

    def test_p343_1_by_c_criterion(self):
        certificate = has_fpp(catalog.load("P343_1"))
        self.assertEqual(certificate.verdict, HAS_FPP)
        self.assertIsInstance(certificate.evidence, CCriterion)
        self.assertIn("space:", certificate.render())

    def test_criterion_method_can_be_undecided(self):
        with self.assertRaises(UndecidedError):
            has_fpp(catalog.load("crown", 3), method="criterion")

    @override_settings(FINSPACE={"CRITERION_DEPTH": 0})
    def test_depth_zero_skips_criteria(self):
        certificate = has_fpp(catalog.load("P343_1"))
        self.assertIsInstance(certificate.evidence, BruteForceExhausted)

    def test_many_maximal_elements_fall_through_to_search(self):
        with self.assertLogs("posets.utils.cconstruction", "WARNING"):
            certificate = has_fpp(catalog.load("crown", 21))
        self.assertEqual(certificate.verdict, LACKS_FPP)
        self.assertTrue(certificate.check())

    @override_settings(FINSPACE={"MAX_MAXIMAL_ELEMENTS": 2})
    def test_enumeration_limit_skips_criteria(self):
        with self.assertLogs("posets.utils.cconstruction", "WARNING"):
            certificate = has_fpp(catalog.load("P343_1"))
        self.assertEqual(certificate.verdict, HAS_FPP)
        self.assertIsInstance(certificate.evidence, BruteForceExhausted)

    def test_brute_method_skips_shortcuts(self):
        certificate = has_fpp(chain(3), method="brute")
        self.assertIsInstance(certificate.evidence, BruteForceExhausted)

    def test_unknown_method(self):
        with self.assertRaises(PosetError):
            has_fpp(chain(2), method="guess")

    def test_lacks_needs_a_witness(self):
        with self.assertRaises(PosetError):
            FppCertificate(LACKS_FPP, MaxOrMin("maximum", "0"))

    def test_agrees_with_exhaustive_search(self):
        for seed in range(25):
            X = random_poset(7, 0.45, seed, connected=True)
            truth = find_fixed_point_free_map(X, 1).witness is None
            self.assertEqual(has_fpp(X).has_fpp, truth, msg=repr(X))


class SearchTests(SimpleTestCase):
    def test_known_spaces_have_no_fixed_point_free_map(self):
        for entry in (("P3323",), ("P343_2",), ("Xnk", 4, 2), ("Xnk", 5, 3)):
            self.assertIsNone(find_fixed_point_free_map(catalog.load(*entry)).witness, msg=entry)

    def test_witness_is_deterministic(self):
        X = catalog.load("crown", 3)
        first = find_fixed_point_free_map(X, 1).witness
        self.assertEqual(first, find_fixed_point_free_map(X, 1).witness)
        self.assertTrue(first.is_fixed_point_free())

    def test_parallel_split_agrees(self):
        X = catalog.load("crown", 4)
        sequential = find_fixed_point_free_map(X, 1)
        parallel = find_fixed_point_free_map(X, 2)
        self.assertEqual(sequential.witness, parallel.witness)

    def test_enumerate_endomaps_of_chain(self):
        self.assertEqual(len(list(enumerate_endomaps(chain(3)))), 10)
        self.assertEqual(list(enumerate_endomaps(chain(3), fixed_point_free_only=True)), [])

    def test_enumerate_endomaps_agrees_with_all_assignments(self):
        X = catalog.load("ex-easy")
        naive = set()
        for images in itertools.product(range(X.n), repeat=X.n):
            if MonotoneMap(X, X, images, check=False).is_monotone():
                naive.add(images)
        self.assertEqual({f.images for f in enumerate_endomaps(X)}, naive)
        free = {images for images in naive if all(i != v for i, v in enumerate(images))}
        self.assertEqual({f.images for f in enumerate_endomaps(X, fixed_point_free_only=True)}, free)


class LemmaTests(SimpleTestCase):
    def test_crown_order(self):
        self.assertEqual(crown_order(catalog.load("crown", 3)), 3)
        self.assertIsNone(crown_order(chain(4)))

    def test_crown_lemma(self):
        for n in (2, 3, 4):
            X = catalog.load("crown", n)
            report = check_crown_lemma(X)
            self.assertEqual(report.violations, 0)
            # the automorphisms are the rotations and the level-preserving reflections
            self.assertEqual(report.bijective, 2 * n)
            self.assertEqual(report.bijective + report.non_bijective, len(list(enumerate_endomaps(X))))
            self.assertGreater(report.fixed_point_free_maps, 0)

    def test_crown_lemma_rejects_other_spaces(self):
        with self.assertRaises(NotACrownError):
            check_crown_lemma(chain(4))

    def test_lemma_spaces_fix_middle_level(self):
        for name in ("lemma-A", "lemma-B"):
            report = check_fixed_point_free_image(catalog.load(name), ["3", "4", "5"])
            self.assertEqual(report.violations, 0)

    def test_lifting_converse_fails_on_ex_2(self):
        X = catalog.load("ex-2")
        report = check_fixed_point_lifting(X, catalog.ex_2_swap(X))
        self.assertFalse(report.has_fixed_point)
        self.assertTrue(report.fixed_u)
        self.assertTrue(report.fixed_f)
        self.assertTrue(report.holds)

    def test_lifting_with_fixed_point(self):
        X = catalog.load("P3323")
        report = check_fixed_point_lifting(X, MonotoneMap.identity(X))
        self.assertTrue(report.has_fixed_point)
        self.assertTrue(report.holds)
