# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the helper_expressions library."""
import unittest
from fractions import Fraction

from parameterized import parameterized

from gradedval.v0.basefield import Rationals
from gradedval.v0.fixtures import fixture_workspace
from gradedval.v0.gradedval_exceptions import ExpressionParseError
from gradedval.v0.helper_expressions import (
    parse_element,
    parse_exponent_vector,
    parse_field_element,
    parse_polynomial,
    tokenize,
)


class TestTokenizer(unittest.TestCase):
    def test_columns(self):
        """Tokens carry 1-based columns."""
        tokens = tokenize("2 * u^(-1)")
        self.assertEqual([t.text for t in tokens], ["2", "*", "u", "^", "(", "-", "1", ")", ""])
        self.assertEqual([t.column for t in tokens[:4]], [1, 3, 5, 6])
        self.assertEqual(tokens[-1].kind, "end")

    def test_unexpected_character(self):
        """Unknown characters are reported where they are."""
        with self.assertRaises(ExpressionParseError) as cm:
            tokenize("3 $")
        self.assertEqual(cm.exception.column, 3)


class TestParseElement(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()
        self.KA = self.ws.graded_field("K_A")
        self.KB = self.ws.graded_field("K_B")

    @parameterized.expand(
        [
            ("u^2", "u*u"),
            ("(u+1)^2", "u^2 + 2*u + 1"),
            ("u^(-1)*u", "1"),
            ("6/4", "3/2"),
            ("-(2 - u)", "u - 2"),
            ("u^(0)", "1"),
        ]
    )
    def test_equivalent_forms(self, text, expected):
        """Different spellings normalize to the same element."""
        self.assertEqual(parse_element(text, self.KA), parse_element(expected, self.KA))

    def test_normal_form(self):
        """Terms sorted by degree, zero terms dropped."""
        x = parse_element("3*u^2 + 1 + u - u", self.KA)
        self.assertEqual(str(x), "1*u^(0) + 3*u^(2)")

    def test_base_generators(self):
        """Generators of the base field are names."""
        x = parse_element("(1+2*i)*u^(-1) + 3", self.KB)
        y = parse_element("3 + u^(-1) + 2*i*u^(-1)", self.KB)
        self.assertEqual(x, y)
        self.assertEqual(parse_element("i^2", self.KB), parse_element("-1", self.KB))

    def test_division_by_homogeneous(self):
        """Division by a nonzero homogeneous element."""
        x = parse_element("(u + u^2)/u", self.KA)
        self.assertEqual(x, parse_element("1 + u", self.KA))

    @parameterized.expand(
        [
            ("u^(", 4),
            ("2+", 3),
            ("1/0", 2),
            ("x", 1),
            ("u^(1/2)", 2),
            ("u^(1,2)", 2),
            ("(1+u", 5),
            ("", 1),
            ("1 2", 3),
        ]
    )
    def test_errors(self, text, column):
        """Malformed expressions report the column of the problem."""
        with self.assertRaises(ExpressionParseError) as cm:
            parse_element(text, self.KA)
        self.assertEqual(cm.exception.column, column)

    def test_error_message(self):
        """The message names the column."""
        with self.assertRaises(ExpressionParseError) as cm:
            parse_element("u^(", self.KA)
        self.assertEqual(str(cm.exception), "expected integer at column 4")


class TestParseOthers(unittest.TestCase):
    def setUp(self) -> None:
        self.q = Rationals()

    def test_field_elements(self):
        """Ints and p/q strings."""
        self.assertEqual(parse_field_element(3, self.q), Fraction(3))
        self.assertEqual(parse_field_element("-2/6", self.q), Fraction(-1, 3))

    def test_polynomials(self):
        """Coefficients are stored low degree first."""
        one_zero_one = (Fraction(1), Fraction(0), Fraction(1))
        self.assertEqual(parse_polynomial("x^2 + 1", self.q), one_zero_one)
        self.assertEqual(parse_polynomial("(x - 1)/2", self.q), (Fraction(-1, 2), Fraction(1, 2)))

    @parameterized.expand([("x^(-1)",), ("1/x",)])
    def test_not_polynomials(self, text):
        """Negative powers and division by non-constants are rejected."""
        with self.assertRaises(ExpressionParseError):
            parse_polynomial(text, self.q)

    def test_exponent_vectors(self):
        """Rational lattice vectors."""
        self.assertEqual(parse_exponent_vector([1, "-1/2"]), (Fraction(1), Fraction(-1, 2)))
        with self.assertRaises(ExpressionParseError):
            parse_exponent_vector(["a"])
