# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the basevaluation library."""
import unittest
from fractions import Fraction

from parameterized import parameterized

from gradedval.v0.basefield import (
    BaseAutomorphism,
    PrimeField,
    ResidueElement,
    parse_automorphism,
)
from gradedval.v0.basevaluation import (
    CompositeValuation,
    PAdicValuation,
    PlaceValuation,
    TrivialValuation,
    base_containment,
    base_eval,
    base_extensions,
    base_residue,
    coarsening_rank,
    residue_power_test,
)
from gradedval.v0.fixtures import fixture_workspace
from gradedval.v0.gradedval_exceptions import (
    FieldMismatchError,
    NegativeValueError,
    UnsupportedFieldError,
)
from gradedval.v0.grading import INFINITE
from gradedval.v0.helper_expressions import parse_field_element


class TestBaseValuation(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.q = self.ws.fields["Q"]
        self.qi = self.ws.fields["Qi"]
        self.qx = self.ws.fields["Qx"]
        self.v5 = PAdicValuation(5)

    @parameterized.expand(
        [
            ("ten", "10", (1,)),
            ("unit", "7/3", (0,)),
            ("inverse", "1/25", (-2,)),
        ]
    )
    def test_p_adic_value(self, _, text, expected):
        """5-adic values of rationals."""
        self.assertEqual(base_eval(self.v5, parse_field_element(text, self.q)), expected)

    def test_zero_value(self):
        """v(0) is infinite."""
        self.assertIs(base_eval(self.v5, Fraction(0)), INFINITE)

    def test_p_adic_residue(self):
        """7/3 reduces to 4 mod 5, 5 reduces to 0."""
        self.assertEqual(base_residue(self.v5, Fraction(7, 3)).value, 4)
        self.assertEqual(base_residue(self.v5, Fraction(5)).value, 0)

        with self.assertRaises(NegativeValueError):
            base_residue(self.v5, Fraction(1, 5))

    def test_gauss(self):
        """x(1-5x) has Gauss value 0 and residue x in F_5(x)."""
        v = self.ws.valuation("G5").v1
        a = parse_field_element("x*(1-5*x)", self.qx)
        self.assertEqual(base_eval(v, a), (0,))

        r = base_residue(v, a)
        self.assertEqual(r.value, v.residue_field().generator)
        self.assertEqual(str(r), "x")
        self.assertEqual(base_eval(v, parse_field_element("5*x+25", self.qx)), (1,))

    def test_composite(self):
        """Place at x followed by the 5-adic valuation of the residue field Q."""
        v = self.ws.valuation("C_x5").v1
        self.assertEqual(v.rank, 2)
        self.assertEqual(base_eval(v, parse_field_element("5", self.qx)), (0, 1))
        self.assertEqual(base_eval(v, parse_field_element("x", self.qx)), (1, 0))
        self.assertEqual(base_eval(v, parse_field_element("x/5", self.qx)), (1, -1))

    def test_prime_ideal(self):
        """(2+i) and (2-i) split 5 in Q(i)."""
        plus = self.ws.valuation("A_plus").v1
        minus = self.ws.valuation("A_minus").v1
        a = parse_field_element("2+i", self.qi)
        self.assertEqual(base_eval(plus, a), (1,))
        self.assertEqual(base_eval(minus, a), (0,))
        self.assertEqual(base_eval(plus, self.qi.from_int(5)), (1,))
        self.assertEqual(plus.residue_field(), PrimeField(5))

    def test_transport(self):
        """Conjugation swaps the primes above 5."""
        plus = self.ws.valuation("A_plus").v1
        minus = self.ws.valuation("A_minus").v1
        conj = parse_automorphism(self.qi, "conj")
        self.assertTrue(plus.transport(conj).same_ring(minus))
        self.assertTrue(minus.transport(conj).same_ring(plus))

    def test_transport_composite(self):
        """Composites move with their nontrivial component."""
        plus = self.ws.valuation("A_plus").v1
        minus = self.ws.valuation("A_minus").v1
        conj = parse_automorphism(self.qi, "conj")
        over_residue = CompositeValuation(plus, TrivialValuation(plus.residue_field()))
        self.assertTrue(over_residue.transport(conj).same_ring(minus))
        under_trivial = CompositeValuation(TrivialValuation(self.qi), plus)
        self.assertTrue(under_trivial.transport(conj).same_ring(minus))

        composite = self.ws.valuation("C_x5").v1
        self.assertIs(composite.transport(BaseAutomorphism.identity(self.qx)), composite)

    def test_transport_place(self):
        """The identity is the only automorphism of Q(x) a place can move along."""
        place = PlaceValuation.at_point(self.qx, Fraction(2))
        self.assertIs(place.transport(BaseAutomorphism.identity(self.qx)), place)
        with self.assertRaises(FieldMismatchError):
            place.transport(BaseAutomorphism.identity(self.qi))
        with self.assertRaises(UnsupportedFieldError):
            parse_automorphism(self.qx, "conj")


class TestBaseExtensions(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.qi = self.ws.fields["Qi"]

    def test_split(self):
        """5 splits in Q(i)."""
        extensions = base_extensions(PAdicValuation(5), self.qi)
        self.assertEqual(len(extensions), 2)
        self.assertEqual(
            {w.key() for w in extensions}, {"prime_ideal(5;2+i)", "prime_ideal(5;3+i)"}
        )

    def test_inert(self):
        """3 is inert in Q(i), with residue field F_9."""
        extensions = base_extensions(PAdicValuation(3), self.qi)
        self.assertEqual(len(extensions), 1)
        self.assertEqual(extensions[0].residue_field().order(), 9)

    def test_trivial(self):
        """The trivial valuation has one trivial extension."""
        extensions = base_extensions(TrivialValuation(self.ws.fields["Q"]), self.qi)
        self.assertEqual(len(extensions), 1)
        self.assertTrue(extensions[0].is_trivial)

    def test_restriction_recovers_ring(self):
        """Each extension restricted to Q is the 5-adic ring on a sample."""
        v5 = PAdicValuation(5)
        sample = [Fraction(n, d) for n in range(-30, 31) for d in (1, 2, 3, 5, 25) if n]
        for w in base_extensions(v5, self.qi):
            for a in sample:
                self.assertEqual(
                    base_eval(w, self.qi.from_base(a))[0] >= 0, base_eval(v5, a)[0] >= 0
                )


class TestResiduePowers(unittest.TestCase):
    def setUp(self) -> None:
        self.f5x = fixture_workspace().fields["F5x"]

    @parameterized.expand(
        [("x_square", 1, 2, False), ("x_cube", 1, 3, False), ("x2_square", 2, 2, True)]
    )
    def test_rational_functions(self, _, exponent, d, expected):
        """x is not a d-th power in F_5(x), x^2 is a square."""
        x = self.f5x.power(self.f5x.generator, exponent)
        self.assertEqual(residue_power_test(ResidueElement(self.f5x, x), d), expected)

    @parameterized.expand([(4, 2, True), (2, 2, False), (2, 3, True)])
    def test_finite_field(self, value, d, expected):
        """Squares and cubes in F_5."""
        self.assertEqual(residue_power_test(ResidueElement(PrimeField(5), value), d), expected)


class TestBaseContainment(unittest.TestCase):
    def test_containment(self):
        """Z_(5) ⊆ Q, Q ⊄ Z_(5)."""
        q = fixture_workspace().fields["Q"]
        self.assertEqual(base_containment(PAdicValuation(5), TrivialValuation(q)), (True, None))

        contained, witness = base_containment(TrivialValuation(q), PAdicValuation(5))
        self.assertFalse(contained)
        self.assertLess(base_eval(PAdicValuation(5), witness)[0], 0)

    def test_rank_two_coarsening(self):
        """The composite ring lies in the place ring at x."""
        ws = fixture_workspace()
        contained, _ = base_containment(ws.valuation("C_x5").v1, ws.valuation("P_x").v1)
        self.assertTrue(contained)

    def test_coarsening_rank(self):
        """Leading coordinates of v that determine a coarsening w."""
        ws = fixture_workspace()
        composite, place = ws.valuation("C_x5").v1, ws.valuation("P_x").v1
        self.assertEqual(coarsening_rank(composite, place), 1)
        self.assertEqual(coarsening_rank(composite, composite), 2)

        q = ws.fields["Q"]
        self.assertEqual(coarsening_rank(PAdicValuation(5), TrivialValuation(q)), 0)
        self.assertIsNone(coarsening_rank(TrivialValuation(q), PAdicValuation(5)))
