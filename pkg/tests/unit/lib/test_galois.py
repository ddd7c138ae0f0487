# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the galois library."""
import random
import unittest
from fractions import Fraction

from parameterized import parameterized

from gradedval.v0.basefield import BaseAutomorphism
from gradedval.v0.basevaluation import TrivialValuation
from gradedval.v0.fixtures import ARTIN_GROUPS, fixture_workspace, random_group
from gradedval.v0.galois import (
    AutGroup,
    GradedAutomorphism,
    act_on_valuation,
    apply_aut,
    character_kernel,
    dominated_extension,
    fixed_subfield,
    inertia_pairing,
    is_free_action,
    orbit_on_extensions,
)
from gradedval.v0.gradedfield import efn
from gradedval.v0.gradedval_exceptions import InvalidGroupError, UnsupportedComparisonError
from gradedval.v0.gradedvaluation import (
    GradedValuation,
    restrict_valuation,
    ring_containment,
    same_ring,
)
from gradedval.v0.grading import Lattice, LatticeHom
from gradedval.v0.helper_expressions import parse_field_element


class TestGradedAutomorphism(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.K = self.ws.graded_field("K_B")
        self.i = parse_field_element("i", self.K.base)
        self.chi_i = GradedAutomorphism(self.K, BaseAutomorphism.identity(self.K.base), [self.i])

    def test_conj(self):
        """conj(i u) = -i u."""
        conj = self.ws.group("conj").action[1]
        expected = self.ws.element("-i*u", "K_B")
        self.assertEqual(apply_aut(conj, self.ws.element("i*u", "K_B")), expected)

    def test_character(self):
        """chi(2) = i^2 = -1 and the character has order 4."""
        x = self.ws.element("3*u^(2)", "K_B")
        self.assertEqual(self.chi_i.apply(x), self.ws.element("-3*u^(2)", "K_B"))
        self.assertEqual(self.chi_i.order(), 4)
        self.assertTrue(self.chi_i.compose(self.chi_i.inverse()).is_identity())

    def test_not_a_root_of_unity(self):
        """chi values must be roots of unity."""
        with self.assertRaises(InvalidGroupError):
            GradedAutomorphism(
                self.K, BaseAutomorphism.identity(self.K.base), [self.K.base.from_int(2)]
            )

    def test_invalid_groups(self):
        """Subgroups must be closed and actions must respect the table."""
        K = self.ws.graded_field("K_A")
        identity = GradedAutomorphism.identity(K)
        sign = self.ws.group("sign").action[1]
        with self.assertRaises(InvalidGroupError):
            AutGroup.from_table(K, [[0, 1], [1, 0]], [identity, identity]).subgroup([1])
        with self.assertRaises(InvalidGroupError):
            AutGroup.from_table(K, [[0, 1, 2], [1, 2, 0], [2, 0, 1]], [identity, sign, sign])

    def test_generated_group(self):
        """<(id, chi_i), conj> has order 8 and is not abelian."""
        group = self.ws.group("order8")
        self.assertEqual(group.order, 8)
        self.assertFalse(group.is_abelian())
        self.assertTrue(group.is_faithful())
        for a in range(group.order):
            self.assertEqual(group.multiply(a, group.inverse(a)), 0)


class TestFixedSubfield(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    @parameterized.expand(
        [
            ("conj", "Q", [[1]], 2),
            ("sign", "Q", [[2]], 2),
            ("order8", "Q", [[4]], 8),
        ]
    )
    def test_shipped_groups(self, name, base, basis, order):
        """Fixed fields of the shipped groups and Artin's equality."""
        fixed, ext = fixed_subfield(self.ws.group(name))
        self.assertEqual(fixed.base, self.ws.fields[base])
        self.assertEqual(fixed.gamma, Lattice(1, basis))
        self.assertEqual(efn(ext)[2], order)

    def test_character_group(self):
        """<(id, chi_i)> fixes Q(i)[4Z]."""
        K = self.ws.graded_field("K_B")
        i = parse_field_element("i", K.base)
        chi_i = GradedAutomorphism(K, BaseAutomorphism.identity(K.base), [i])
        group = AutGroup.generate(K, [chi_i])
        fixed, ext = fixed_subfield(group)
        self.assertEqual(fixed.base, K.base)
        self.assertEqual(fixed.gamma, Lattice(1, [[4]]))
        self.assertEqual(efn(ext), (4, 1, 4))
        self.assertEqual(character_kernel(group, range(group.order)), Lattice(1, [[4]]))

    def test_fixed_elements_are_invariant(self):
        """Every embedded generator of K^G is fixed by G."""
        for name in ARTIN_GROUPS:
            group = self.ws.group(name)
            fixed, ext = fixed_subfield(group)
            for b in fixed.gamma.basis:
                y = ext.embed(fixed.monomial(fixed.base.one(), b))
                for g in group.action:
                    self.assertEqual(g.apply(y), y)

    def test_random_groups(self):
        """[K : K^G] = #G for random faithful groups."""
        rng = random.Random(3)
        for _ in range(8):
            group = random_group(rng)
            _, ext = fixed_subfield(group)
            self.assertEqual(efn(ext)[2], group.order)


class TestInertiaPairing(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    def test_conj(self):
        """Trivial inertia, V = Z."""
        report = inertia_pairing(self.ws.group("conj"))
        self.assertEqual(report.inertia.order, 1)
        self.assertEqual(report.kernel, Lattice.standard(1))
        self.assertTrue(report.inertia_matches_index)

    def test_order8(self):
        """I = <(id, chi_i)> of order 4, V = 4Z, xi(g, 1 + V) = i for the generator."""
        report = inertia_pairing(self.ws.group("order8"))
        self.assertEqual(report.inertia.order, 4)
        self.assertEqual(report.kernel, Lattice(1, [[4]]))
        self.assertEqual(report.index, 4)
        self.assertTrue(report.biadditive)
        self.assertTrue(report.nondegenerate_left and report.nondegenerate_right)

        base = self.ws.fields["Qi"]
        i = parse_field_element("i", base)
        values = {report.xi[(g, (Fraction(1),))] for g in range(report.inertia.order)}
        self.assertEqual(values, {base.one(), i, base.neg(base.one()), base.neg(i)})

        data = report.to_dict()
        self.assertEqual(data["inertia_order"], 4)
        self.assertTrue(data["inertia_matches_index"])

    def test_sign(self):
        """chi(1) = -1 pairs Z/2Z with itself."""
        report = inertia_pairing(self.ws.group("sign"))
        self.assertEqual(report.inertia.order, 2)
        self.assertEqual(report.kernel, Lattice(1, [[2]]))
        self.assertTrue(report.inertia_matches_index)


class TestOrbits(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.conj = self.ws.group("conj")
        _, self.ext = fixed_subfield(self.conj)

    def test_act_on_valuation(self):
        """conj swaps A+ and A-, the identity fixes them, characters fix every ring."""
        A_plus, A_minus = self.ws.valuation("A_plus"), self.ws.valuation("A_minus")
        self.assertTrue(same_ring(act_on_valuation(self.conj.action[1], A_plus), A_minus))
        self.assertEqual(act_on_valuation(self.conj.action[0], A_plus), A_plus)

        K = self.ws.graded_field("K_B")
        V = GradedValuation(
            K, TrivialValuation(K.base), LatticeHom(K.gamma, 1, [[Fraction(1, 2)]])
        )
        i = parse_field_element("i", K.base)
        chi_i = GradedAutomorphism(K, BaseAutomorphism.identity(K.base), [i])
        self.assertTrue(same_ring(act_on_valuation(chi_i, V), V))

    @parameterized.expand([("R5", 2, 1), ("R3", 1, 2), ("R2", 1, 2), ("R_triv", 1, 2)])
    def test_transitive(self, name, size, stabilizer):
        """One orbit on the extensions of each base valuation."""
        orbits = orbit_on_extensions(self.conj, self.ws.valuation(name), self.ext)
        self.assertEqual(len(orbits), 1)
        self.assertEqual(len(orbits[0].members), size)
        self.assertEqual(orbits[0].stabilizer_order, stabilizer)

    def test_dominated_rank_two(self):
        """The rank 2 refinement of R5 extends inside A+."""
        R = self.ws.valuation("R5_lex")
        A = dominated_extension(R, self.ws.valuation("R5"), self.ws.valuation("A_plus"), self.ext)
        self.assertTrue(same_ring(A, self.ws.valuation("D_plus")))
        self.assertTrue(ring_containment(A, self.ws.valuation("A_plus")).contained)
        self.assertTrue(same_ring(restrict_valuation(A, self.ext), R))

    def test_dominated_trivial(self):
        """Under the whole field any extension qualifies, R = R' returns A'."""
        eta = self.ws.valuation("eta")
        R5, R_triv = self.ws.valuation("R5"), self.ws.valuation("R_triv")
        A = dominated_extension(R5, R_triv, eta, self.ext)
        self.assertTrue(ring_containment(A, eta).contained)
        self.assertEqual(dominated_extension(R_triv, R_triv, eta, self.ext), eta)

    def test_dominated_needs_containment(self):
        """R must lie in R'."""
        with self.assertRaises(UnsupportedComparisonError):
            dominated_extension(
                self.ws.valuation("R_triv"),
                self.ws.valuation("R5"),
                self.ws.valuation("A_plus"),
                self.ext,
            )

    @parameterized.expand(
        [("conj", True), ("sign", True), ("order8", True), ("trivial_z2", False)]
    )
    def test_free_action(self, name, free):
        """Free actions are the faithful ones."""
        self.assertEqual(is_free_action(self.ws.group(name)), free)
