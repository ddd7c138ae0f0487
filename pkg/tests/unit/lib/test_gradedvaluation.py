# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the gradedvaluation library."""
import unittest
from fractions import Fraction
from unittest.mock import patch

from parameterized import parameterized

from gradedval.v0.basevaluation import BaseValuation, TrivialValuation
from gradedval.v0.basefield import PrimeField
from gradedval.v0.fixtures import fixture_workspace
from gradedval.v0.gradedfield import FieldExtension
from gradedval.v0.gradedval_exceptions import (
    NegativeValueError,
    NonHomogeneousError,
    NonUnitFactorError,
    WrongModeError,
)
from gradedval.v0.gradedvaluation import (
    GradedValuation,
    extend_valuation,
    extension_membership_oracle,
    exhaustive_homogeneous,
    graded_residue,
    gvalue,
    reconstructed_member,
    residue_graded,
    restrict_valuation,
    ring_containment,
    ring_member,
    same_ring,
    sample_homogeneous,
    section_element,
)
from gradedval.v0.grading import INFINITE, Lattice, LatticeHom
from gradedval.v0.helper_enums import OracleMode


class TestValues(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.V = self.ws.valuation("V_half")

    @parameterized.expand(
        [
            ("ten_u", "10*u", (Fraction(3, 2),), True),
            ("sum", "u + u^(2)", (Fraction(1, 2),), True),
            ("inverse", "u^(-1)", (Fraction(-1, 2),), False),
            ("one", "1", (Fraction(0),), True),
            ("fifth", "u^(2)/5", (Fraction(0),), True),
        ]
    )
    def test_value_and_membership(self, _, text, value, member):
        """v1 = 5-adic, psi(1) = 1/2."""
        x = self.ws.element(text, "K_A")
        self.assertEqual(gvalue(self.V, x), value)
        self.assertEqual(ring_member(self.V, x), member)

    def test_zero(self):
        """0 has infinite value and lies in every ring."""
        zero = self.ws.element("0", "K_A")
        self.assertIs(gvalue(self.V, zero), INFINITE)
        self.assertTrue(ring_member(self.V, zero))

    def test_residue_graded(self):
        """Residue graded fields."""
        trivial = residue_graded(self.ws.valuation("R_triv"))
        self.assertEqual(trivial.base, self.ws.fields["Q"])
        self.assertEqual(trivial.gamma, Lattice.standard(1))

        half = residue_graded(self.V)
        self.assertEqual(half.base, PrimeField(5))
        self.assertEqual(half.gamma, Lattice(1, [[2]]))

        plain = residue_graded(self.ws.valuation("R5"))
        self.assertEqual(plain.base, PrimeField(5))
        self.assertEqual(plain.gamma, Lattice.standard(1))

    def test_graded_residue(self):
        """Residues of homogeneous elements of value >= 0."""
        R5 = self.ws.valuation("R5")
        residue = graded_residue(R5, self.ws.element("7/3*u", "K_A"))
        self.assertEqual(residue, residue_graded(R5).monomial(4, (1,)))
        self.assertTrue(graded_residue(R5, self.ws.element("5*u", "K_A")).is_zero)

        with self.assertRaises(NegativeValueError):
            graded_residue(R5, self.ws.element("u/5", "K_A"))

    def test_section_element(self):
        """An element of prescribed degree and value."""
        x = section_element(self.V, (Fraction(5, 2),), (Fraction(1),))
        self.assertEqual(x.degree, (1,))
        self.assertEqual(gvalue(self.V, x), (Fraction(5, 2),))


class TestContainment(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    def test_lex_refinement(self):
        """D+ ⊆ A+."""
        result = ring_containment(self.ws.valuation("D_plus"), self.ws.valuation("A_plus"))
        self.assertTrue(result.contained)
        self.assertIsNone(result.witness)

    def test_different_primes(self):
        """A+ ⊄ A-, with a witness in A+ outside A-."""
        A_plus, A_minus = self.ws.valuation("A_plus"), self.ws.valuation("A_minus")
        result = ring_containment(A_plus, A_minus)
        self.assertFalse(result.contained)
        self.assertTrue(ring_member(A_plus, result.witness))
        self.assertFalse(ring_member(A_minus, result.witness))

    @parameterized.expand([("A_plus",), ("D_minus",), ("E",), ("eta",)])
    def test_reflexive(self, name):
        """V ⊆ V."""
        V = self.ws.valuation(name)
        self.assertTrue(ring_containment(V, V).contained)
        self.assertTrue(same_ring(V, V))

    def test_shift_against_trivial(self):
        """The shifted trivial ring lies in the whole field but not conversely."""
        shift, whole = self.ws.valuation("E"), self.ws.valuation("eta")
        self.assertTrue(ring_containment(shift, whole).contained)

        result = ring_containment(whole, shift)
        self.assertFalse(result.contained)
        self.assertTrue(ring_member(whole, result.witness))
        self.assertFalse(ring_member(shift, result.witness))

    def test_containment_matches_sample(self):
        """No sampled element of a contained ring falls outside the bigger one."""
        D_plus, A_plus = self.ws.valuation("D_plus"), self.ws.valuation("A_plus")
        for x in sample_homogeneous(D_plus.parent, 200, 11):
            if ring_member(D_plus, x):
                self.assertTrue(ring_member(A_plus, x))


class TestExtensions(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    def test_unique_ramified_extension(self):
        """psi(2) = 1 on 2Z extends uniquely to psi'(1) = 1/2 on Z."""
        small = self.ws.graded_field("K_A2")
        R = GradedValuation(small, TrivialValuation(small.base), LatticeHom(small.gamma, 1, [[1]]))
        ext = self.ws.extension("KA_over_KA2")

        extensions = extend_valuation(R, ext)
        self.assertEqual(len(extensions), 1)
        A = extensions[0]
        self.assertEqual(A.psi((1,)), (Fraction(1, 2),))
        self.assertTrue(same_ring(restrict_valuation(A, ext), R))

        y = self.ws.element("10*u", "K_A")
        self.assertTrue(extension_membership_oracle(A, ext, y, OracleMode.POWER_E))
        self.assertTrue(ring_member(A, y))

    def test_split_extension(self):
        """R5 extends to A+ and A- along Q(i)[Z] / Q[Z]."""
        ext = self.ws.extension("KB_over_KA")
        extensions = extend_valuation(self.ws.valuation("R5"), ext)
        self.assertEqual(len(extensions), 2)
        expected = [self.ws.valuation("A_plus"), self.ws.valuation("A_minus")]
        for A in extensions:
            self.assertTrue(any(same_ring(A, B) for B in expected))
            self.assertTrue(same_ring(restrict_valuation(A, ext), self.ws.valuation("R5")))

    def test_identity_extension(self):
        """K = L gives back R."""
        K = self.ws.graded_field("K_A")
        R = self.ws.valuation("R5")
        self.assertEqual(extend_valuation(R, FieldExtension(K, K)), [R])

    def test_factorial_oracle(self):
        """y = (1+2i)/5 is outside A+ and y = 1 is inside."""
        ext = self.ws.extension("KB_over_KA")
        A_plus = self.ws.valuation("A_plus")

        y = self.ws.element("(1+2*i)/5", "K_B")
        self.assertFalse(extension_membership_oracle(A_plus, ext, y, OracleMode.FACTORIAL_N))
        self.assertFalse(ring_member(A_plus, y))

        one = self.ws.element("1", "K_B")
        self.assertTrue(extension_membership_oracle(A_plus, ext, one, OracleMode.FACTORIAL_N))

    def test_wrong_mode(self):
        """POWER_E needs f = 1, FACTORIAL_N needs e = 1."""
        ext = self.ws.extension("KB_over_KA")
        y = self.ws.element("u", "K_B")
        with self.assertRaises(WrongModeError):
            extension_membership_oracle(self.ws.valuation("A_plus"), ext, y, OracleMode.POWER_E)

        ext = self.ws.extension("KA_over_KA2")
        A = extend_valuation(self.ws.valuation("S5"), ext)[0]
        u = self.ws.element("u", "K_A")
        with self.assertRaises(WrongModeError):
            extension_membership_oracle(A, ext, u, OracleMode.FACTORIAL_N)

    @parameterized.expand(
        [
            ("ramified", "KA_over_KA2", "S3_half", OracleMode.POWER_E),
            ("residual", "KB_over_KA", "R5", OracleMode.FACTORIAL_N),
            ("inert", "KB_over_KA", "R3", OracleMode.FACTORIAL_N),
        ]
    )
    def test_oracle_agreement(self, _, ext_name, valuation, mode):
        """Both membership criteria agree with ring_member on an exhaustive sample."""
        ext = self.ws.extension(ext_name)
        coefficients = [ext.big.base.from_int(n) for n in (1, 2, 3, 5, 6, 10, 15)]
        if ext.big.base != ext.small.base:
            coefficients += [ext.big.base.add(ext.big.base.generator, c) for c in coefficients[:4]]
        sample = exhaustive_homogeneous(ext.big, coefficients)
        sample += [ext.big.monomial(ext.big.base.inv(x.coefficient), x.degree) for x in sample]

        for A in extend_valuation(self.ws.valuation(valuation), ext):
            for y in sample:
                self.assertEqual(
                    ring_member(A, y), extension_membership_oracle(A, ext, y, mode), f"{A} {y}"
                )

    def test_factorial_oracle_bad_section(self):
        """A section leaving a non unit factor is reported, not taken for a zero element."""
        ext = self.ws.extension("KB_over_KA")
        y = self.ws.element("(1+2*i)/5", "K_B")
        with patch.object(BaseValuation, "section", return_value=Fraction(7)):
            with self.assertRaises(NonUnitFactorError):
                extension_membership_oracle(
                    self.ws.valuation("A_plus"), ext, y, OracleMode.FACTORIAL_N
                )

    @parameterized.expand(
        [
            ("ramified", "KA_over_KA2", "S3_half"),
            ("split", "KB_over_KA", "R5"),
            ("inert", "KB_over_KA", "R3"),
            ("both", "KB_over_KA2", "S5"),
        ]
    )
    def test_reconstructed_member(self, _, ext_name, valuation):
        """Each extension is recovered from R and its base ring alone."""
        ext = self.ws.extension(ext_name)
        R = self.ws.valuation(valuation)
        sample = sample_homogeneous(ext.big, 200, 11)
        for A in extend_valuation(R, ext):
            for y in sample:
                self.assertEqual(
                    ring_member(A, y), reconstructed_member(R, ext, A.v1, y), f"{A} {y}"
                )

    def test_reconstruction_separates(self):
        """R5 with the two primes above 5 gives two different rings."""
        ext = self.ws.extension("KB_over_KA")
        R = self.ws.valuation("R5")
        y = self.ws.element("(1+2*i)/5", "K_B")
        plus = self.ws.valuation("A_plus").v1
        minus = self.ws.valuation("A_minus").v1
        self.assertFalse(reconstructed_member(R, ext, plus, y))
        self.assertTrue(reconstructed_member(R, ext, minus, y))
        self.assertTrue(reconstructed_member(R, ext, plus, ext.big.zero()))

    def test_reconstruction_needs_homogeneous(self):
        """Sums of several degrees are refused."""
        ext = self.ws.extension("KB_over_KA")
        y = self.ws.element("1 + u", "K_B")
        with self.assertRaises(NonHomogeneousError):
            reconstructed_member(self.ws.valuation("R5"), ext, self.ws.valuation("A_plus").v1, y)
