# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the quotient library."""
import unittest
from fractions import Fraction

from parameterized import parameterized

from gradedval.v0.fixtures import fixture_workspace
from gradedval.v0.gradedfield import efn
from gradedval.v0.gradedval_exceptions import ParentMismatchError
from gradedval.v0.helper_enums import Verdict, WitnessKind
from gradedval.v0.quotient import invariant_subalgebra, torsor_check


class TestInvariantSubalgebra(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    @parameterized.expand([("conj", 1, 2), ("sign", 2, 1), ("order8", 4, 2)])
    def test_invariants(self, group, e, f):
        """A'^G and the numbers of A'/A."""
        G = self.ws.group(group)
        small, ext = invariant_subalgebra(G, G.parent)
        self.assertEqual(efn(ext), (e, f, e * f))
        self.assertEqual(ext.small, small)

    def test_wrong_parent(self):
        """The group acts on its own graded field only."""
        with self.assertRaises(ParentMismatchError):
            invariant_subalgebra(self.ws.group("conj"), self.ws.graded_field("K_A"))


class TestTorsor(unittest.TestCase):
    def setUp(self) -> None:
        self.ws = fixture_workspace()

    @parameterized.expand([("conj",), ("sign",), ("order8",)])
    def test_free_actions(self, group):
        """Free actions give a square matrix with unit determinant."""
        G = self.ws.group(group)
        report = torsor_check(G, G.parent)
        self.assertEqual(report.verdict, Verdict.PASS)
        self.assertTrue(report.free_action)
        self.assertEqual(report.rank, G.order)
        self.assertTrue(report.determinant_is_unit)
        self.assertEqual(report.witness_kind, WitnessKind.NONE)

    def test_conj_determinant(self):
        """Basis {1, i}: the determinant is 4 in degree 0."""
        G = self.ws.group("conj")
        report = torsor_check(G, G.parent)
        self.assertEqual(len(report.rows), 4)
        self.assertEqual(len(report.columns), 4)
        self.assertEqual(report.determinant.degree, (Fraction(0),))
        self.assertEqual(report.determinant.coefficient, Fraction(4))

    def test_sign_determinant(self):
        """Basis {1, u}: the determinant is -4 u^2."""
        G = self.ws.group("sign")
        report = torsor_check(G, G.parent)
        self.assertEqual(report.determinant.degree, (Fraction(2),))
        self.assertEqual(report.determinant.coefficient, Fraction(-4))
        self.assertEqual(report.to_dict()["determinant"], "-4*u^(2)")

    def test_trivial_action(self):
        """A non-faithful action fails with an annihilating row vector."""
        G = self.ws.group("trivial_z2")
        report = torsor_check(G, G.parent)
        self.assertEqual(report.verdict, Verdict.FAIL)
        self.assertFalse(report.free_action)
        self.assertEqual(report.rank, 1)
        self.assertEqual(report.witness_kind, WitnessKind.ANNIHILATOR)
        self.assertIsNone(report.determinant)

        w = report.witness
        self.assertTrue(any(x != 0 for x in w))
        for c in range(len(report.columns)):
            self.assertEqual(sum(w[r] * report.coefficients[r][c] for r in range(len(w))), 0)

    def test_report(self):
        """Serialized reports carry the verdict and matrix."""
        G = self.ws.group("conj")
        report = torsor_check(G, G.parent).to_dict()
        self.assertEqual(report["verdict"], "pass")
        self.assertEqual(report["rank"], 2)
        self.assertEqual(report["group_order"], 2)
        self.assertEqual(len(report["matrix"]), 4)
        self.assertEqual(report["witness"], [])
