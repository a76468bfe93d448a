from django.test import SimpleTestCase

from posets.exceptions import DisconnectedSubsetError, EmptySubsetError, OverlappingFamiliesError
from posets.services import catalog
from posets.utils.cconstruction import (
    C_SIDE,
    F_SIDE,
    U_SIDE,
    c_f,
    c_space,
    c_u,
    check_components_law,
    f_family,
    flat,
    idempotence_maps,
    induced_map,
    intersect_closures,
    intersect_minimal_opens,
    is_isomorphic_to_u_family,
    kolmogorov_comparison,
    min_containing,
    propagate_down_beat_point,
    retract_report,
    sharp,
    u_family,
    x_prime,
)
from posets.utils.homotopy import UP, find_beat_points, is_dbp_retract
from posets.utils.isomorphism import is_isomorphic
from posets.utils.poset import MonotoneMap, build_poset, chain, random_poset


def member_sets(space):
    return {r.as_set() for r in space.regions}


class OperatorTests(SimpleTestCase):
    def setUp(self):
        self.X = catalog.load("ex-easy")

    def test_intersections(self):
        self.assertEqual(intersect_minimal_opens(self.X, ["3", "4"]), {"0", "1"})
        self.assertEqual(intersect_closures(self.X, ["0", "1"]), {"3", "4"})

    def test_sharp_and_flat(self):
        self.assertEqual(sharp(self.X, ["0"]), {"2", "3", "4"})
        self.assertEqual(sharp(self.X, ["0", "1"]), {"3", "4"})
        self.assertEqual(flat(self.X, ["3"]), {"0", "1"})
        self.assertEqual(flat(self.X, ["2"]), {"0"})

    def test_min_containing(self):
        self.assertEqual(min_containing(self.X, ["0", "3"], U_SIDE).as_set(), {"0", "1", "3"})
        self.assertEqual(min_containing(self.X, ["3"], F_SIDE).as_set(), {"3"})
        self.assertEqual(c_u(self.X, "1").as_set(), {"1"})
        self.assertEqual(c_f(self.X, "0").as_set(), {"0", "2", "3", "4"})

    def test_min_containing_errors(self):
        with self.assertRaises(EmptySubsetError):
            min_containing(self.X, [], U_SIDE)
        with self.assertRaises(DisconnectedSubsetError):
            min_containing(self.X, ["2", "1"], U_SIDE)


class FamilyTests(SimpleTestCase):
    def test_ex_easy_families(self):
        X = catalog.load("ex-easy")
        self.assertEqual(
            member_sets(u_family(X)),
            {frozenset(s) for s in [{"0", "2"}, {"0", "1", "3"}, {"0", "1", "4"}, {"0"}, {"1"}]},
        )
        self.assertEqual(
            member_sets(f_family(X)),
            {frozenset(s) for s in [{"0", "2", "3", "4"}, {"1", "3", "4"}, {"3"}, {"4"}]},
        )

    def test_ex_easy_c_space(self):
        space = c_space(catalog.load("ex-easy"))
        self.assertEqual(len(space), 9)
        self.assertEqual(len(space.order.covers), 13)
        self.assertFalse(space.overlap)
        self.assertIn(("F[0,2,3,4]", "U[0]"), space.order.cover_labels)
        self.assertIn(("F[4]", "U[0,1,4]"), space.order.cover_labels)

    def test_ex_2_u_family_has_minimum(self):
        ux = u_family(catalog.load("ex-2"))
        self.assertEqual(len(ux), 3)
        self.assertEqual(ux.regions[ux.order.minimum].as_set(), {"0", "1", "2", "3"})

    def test_fig4_u_families_differ(self):
        X = catalog.load("ex-fig4")
        smaller = X.subposet(X.full_mask & ~(1 << X.idx("1")))
        self.assertEqual(len(u_family(X)), 5)
        self.assertEqual(len(u_family(smaller)), 4)

    def test_overlap_on_chain(self):
        space = c_space(chain(3))
        self.assertTrue(space.overlap)
        self.assertEqual(len(space), 2)

    def test_c_f_is_refused_when_families_overlap(self):
        C = chain(3)
        with self.assertRaises(OverlappingFamiliesError):
            induced_map(MonotoneMap.identity(C), C_SIDE)

    def test_op_duality(self):
        X = catalog.load("ex-easy")
        ux_op = u_family(X.opposite())
        self.assertEqual(member_sets(ux_op), member_sets(f_family(X)))

    def test_u_family_has_no_up_beat_points(self):
        for name in ("ex-easy", "P3323", "ex-fig3"):
            order = u_family(catalog.load(name)).order
            self.assertFalse([r for r in find_beat_points(order) if r.kind == UP])


class InducedMapTests(SimpleTestCase):
    def test_non_functoriality(self):
        X = catalog.load("ex-nonfunctorial")
        f, g = catalog.nonfunctorial_maps(X)
        ux = u_family(X)
        start = ux.by_label("U[2]")
        u_f = induced_map(f, U_SIDE, ux, ux)
        u_g = induced_map(g, U_SIDE, ux, ux)
        self.assertEqual(u_f(u_g(start)).as_set(), {"0", "1", "2", "3"})
        self.assertEqual(induced_map(f.compose(g), U_SIDE, ux, ux)(start).as_set(), {"2"})

    def test_swap_on_ex_2_fixes_regions(self):
        X = catalog.load("ex-2")
        swap = catalog.ex_2_swap(X)
        self.assertTrue(induced_map(swap, U_SIDE).fixed_regions())
        self.assertTrue(induced_map(swap, F_SIDE).fixed_regions())

    def test_identity_induces_identity(self):
        X = catalog.load("ex-easy")
        induced = induced_map(MonotoneMap.identity(X), C_SIDE)
        self.assertEqual(induced.map, MonotoneMap.identity(induced.source.order))


class StructureTests(SimpleTestCase):
    def test_idempotence(self):
        for name in ("ex-easy", "P3323", "lemma-A"):
            idem = idempotence_maps(catalog.load(name))
            self.assertTrue(idem.inverse_pair)

    def test_lemma_a_is_a_u_family(self):
        self.assertTrue(is_isomorphic_to_u_family(catalog.load("lemma-A")))

    def test_components_law(self):
        checked, violations = check_components_law(catalog.load("P3323"))
        self.assertGreater(checked, 0)
        self.assertEqual(violations, 0)

    def test_x_prime_of_ex_easy(self):
        prime = x_prime(catalog.load("ex-easy"))
        self.assertIsNotNone(prime)
        self.assertTrue(prime.retract_verified)
        self.assertTrue(is_isomorphic(prime.subspace, u_family(catalog.load("ex-easy")).order))

    def test_x_prime_missing_when_a_region_has_no_maximum(self):
        self.assertIsNone(x_prime(catalog.load("ex-2")))

    def test_x_prime_maps_are_inverse(self):
        prime = x_prime(catalog.load("ex-easy"))
        self.assertEqual({z: c for c, z in prime.phi.items()}, prime.psi)
        self.assertEqual(prime.phi["U[0,1,3]"], "3")

    def test_x_prime_of_u_family_always_exists(self):
        for seed in range(15):
            X = random_poset(7, 0.4, 200 + seed)
            prime = x_prime(u_family(X).order)
            self.assertIsNotNone(prime, msg=repr(X))
            self.assertTrue(prime.retract_verified)

    def test_kolmogorov_classes_of_a_chain_collapse(self):
        report = kolmogorov_comparison(chain(3))
        self.assertEqual(report.classes, (frozenset({"0", "1", "2"}),))
        self.assertTrue(report.injective)
        self.assertTrue(report.order_embedding)

    def test_kolmogorov_flags(self):
        report = kolmogorov_comparison(catalog.load("ex-easy"))
        self.assertEqual(len(report.classes), 5)
        self.assertEqual(report.embedding[frozenset({"2"})], "U[0,2]")
        for seed in range(15):
            report = kolmogorov_comparison(random_poset(7, 0.4, 250 + seed, connected=True))
            self.assertTrue(report.injective)
            self.assertTrue(report.order_embedding)
            self.assertTrue(report.monotone)
            self.assertTrue(report.preorders_agree)

    def test_kolmogorov_comparison_on_ex_2(self):
        report = kolmogorov_comparison(catalog.load("ex-2"))
        self.assertEqual(len(report.classes), 3)
        self.assertTrue(report.monotone)
        self.assertTrue(report.preorders_agree)


class BeatPointPropagationTests(SimpleTestCase):
    def test_fig3_retract_report(self):
        X = catalog.load("ex-fig3")
        report = retract_report(X, ["0", "1", "2", "3"])
        self.assertIsNotNone(report)
        self.assertTrue(report.holds)
        self.assertNotIn("U(r)(C) = r(C)", report.checks)

    def test_fig3_maximal_beat_point(self):
        report = propagate_down_beat_point(catalog.load("ex-fig3"), "4")
        self.assertEqual(report.witness, "2")
        self.assertTrue(report.holds)

    def test_retract_report_none_for_non_retract(self):
        self.assertIsNone(retract_report(catalog.load("crown", 2), ["0", "1", "2"]))

    def test_maximal_beat_point_whose_witness_becomes_maximal(self):
        X = build_poset("0123t", [("0", "2"), ("1", "2"), ("0", "3"), ("1", "3"), ("2", "t")])
        report = propagate_down_beat_point(X, "t")
        self.assertEqual(report.witness, "2")
        self.assertEqual(report.case, "b")
        self.assertTrue(report.holds)

    def test_fig3_round_trip_leaves_the_region(self):
        X = catalog.load("ex-fig3")
        retraction = is_dbp_retract(X, ["0", "1", "2", "3"])
        ux, ua = u_family(X), u_family(retraction.subspace)
        u_r = induced_map(retraction.retraction, U_SIDE, ux, ua)
        u_i = induced_map(retraction.inclusion, U_SIDE, ua, ux)
        region = ux.by_label("U[0,2,4]")
        self.assertEqual(u_i(u_r(region)).as_set(), {"0", "1", "2", "3"})
        self.assertFalse(u_i(u_r(region)).as_set() <= region.as_set())
