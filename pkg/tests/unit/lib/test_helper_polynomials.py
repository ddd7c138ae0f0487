# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the helper_polynomials library."""
import unittest
from fractions import Fraction

from parameterized import parameterized

from gradedval.v0.basefield import PrimeField, Rationals
from gradedval.v0.helper_polynomials import (
    padd,
    pcompose_linear,
    pderivative,
    pdivmod,
    peval,
    pgcd,
    pmul,
    ppow,
    ptrim,
    pxgcd,
    factor_modular,
    factor_rational,
    is_irreducible_modular,
    is_irreducible_rational,
)


def q(*coefficients):
    return tuple(Fraction(c) for c in coefficients)


class TestArithmetic(unittest.TestCase):
    def setUp(self) -> None:
        self.field = Rationals()

    def test_trim(self):
        """Trailing zeros are dropped, () is zero."""
        self.assertEqual(ptrim(q(1, 0, 0), self.field), q(1))
        self.assertEqual(ptrim(q(0), self.field), ())
        self.assertEqual(padd(q(1, 1), q(-1, -1), self.field), ())

    def test_products(self):
        """(x + 1)(x - 1) and (x + 1)^3."""
        self.assertEqual(pmul(q(1, 1), q(-1, 1), self.field), q(-1, 0, 1))
        self.assertEqual(ppow(q(1, 1), 3, self.field), q(1, 3, 3, 1))
        self.assertEqual(ppow(q(1, 1), 0, self.field), q(1))

    @parameterized.expand(
        [
            ("exact", (-1, 0, 1), (-1, 1), (1, 1), ()),
            ("remainder", (1, 0, 1), (-1, 1), (1, 1), (2,)),
            ("small", (3,), (0, 1), (), (3,)),
        ]
    )
    def test_division(self, _, p, d, quotient, remainder):
        """p = quotient * d + remainder."""
        self.assertEqual(pdivmod(q(*p), q(*d), self.field), (q(*quotient), q(*remainder)))

    def test_division_by_zero(self):
        """Dividing by () raises."""
        with self.assertRaises(ZeroDivisionError):
            pdivmod(q(1, 1), (), self.field)

    def test_gcd(self):
        """gcd(x^2 - 1, (x - 1)^2) = x - 1, with Bezout coefficients."""
        p, d = q(-1, 0, 1), q(1, -2, 1)
        self.assertEqual(pgcd(p, d, self.field), q(-1, 1))

        g, s, t = pxgcd(p, d, self.field)
        self.assertEqual(g, q(-1, 1))
        self.assertEqual(padd(pmul(s, p, self.field), pmul(t, d, self.field), self.field), g)

    def test_evaluation(self):
        """Horner, linear substitution and derivative."""
        self.assertEqual(peval(q(1, 0, 1), Fraction(2), self.field), Fraction(5))
        shifted = pcompose_linear(q(0, 0, 1), Fraction(2), Fraction(1), self.field)
        self.assertEqual(shifted, q(1, 4, 4))
        self.assertEqual(pderivative(q(0, 0, 0, 1), self.field), q(0, 0, 3))

    def test_prime_field(self):
        """The same helpers over GF(5)."""
        f5 = PrimeField(5)
        self.assertEqual(pmul((2, 1), (3, 1), f5), (1, 0, 1))
        self.assertEqual(pgcd((1, 0, 1), (2, 1), f5), (2, 1))


class TestFactorization(unittest.TestCase):
    @parameterized.expand(
        [
            ("split", (1, 0, 1), 5, [((2, 1), 1), ((3, 1), 1)]),
            ("inert", (1, 0, 1), 3, [((1, 0, 1), 1)]),
            ("ramified", (1, 0, 1), 2, [((1, 1), 2)]),
        ]
    )
    def test_modular(self, _, p, prime, expected):
        """x^2 + 1 modulo small primes."""
        self.assertEqual(factor_modular(p, prime), expected)
        irreducible = len(expected) == 1 and expected[0][1] == 1
        self.assertEqual(is_irreducible_modular(p, prime), irreducible)

    def test_rational(self):
        """2x^2 - 2 = 2 (x - 1)(x + 1)."""
        constant, factors = factor_rational(q(-2, 0, 2))
        self.assertEqual(constant, Fraction(2))
        self.assertEqual(sorted(factors), sorted([(q(-1, 1), 1), (q(1, 1), 1)]))

    @parameterized.expand(
        [((1, 0, 1), True), ((-1, 0, 1), False), ((5,), False), ((-2, 0, 1), True)]
    )
    def test_irreducible_rational(self, p, expected):
        """Irreducibility over Q."""
        self.assertEqual(is_irreducible_rational(q(*p)), expected)
