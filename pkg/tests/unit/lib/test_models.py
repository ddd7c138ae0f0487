# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the config and report models."""
import unittest

from parameterized import parameterized
from pydantic import ValidationError

from gradedval.v0.helper_enums import FieldKind, SuiteName, ValuationKind
from gradedval.v0.models import (
    BaseValuationSpec,
    FieldSpec,
    GroupSpec,
    LatticeSpec,
    ModelSpec,
    ScenarioSpec,
    SuiteReport,
    ValuationSpec,
)


class TestConfigModels(unittest.TestCase):
    def test_field_kinds(self):
        """Each field kind needs its own keys."""
        entry = {"kind": "simple_extension", "base": "Q", "minpoly": "x^2+1", "name": "i"}
        spec = FieldSpec.from_dict(entry)
        self.assertEqual(spec.kind, FieldKind.SIMPLE_EXTENSION)
        self.assertEqual(spec.to_dict(), entry)

        with self.assertRaises(ValidationError):
            FieldSpec.from_dict({"kind": "prime_field"})
        with self.assertRaises(ValidationError):
            FieldSpec.from_dict({"kind": "rationals", "colour": "blue"})

    @parameterized.expand(
        [
            ("p_adic", {"kind": "p_adic"}),
            ("composite", {"kind": "composite", "outer": {"kind": "trivial"}}),
            ("prime_ideal", {"kind": "prime_ideal", "p": 5}),
            ("rank", {"kind": "trivial", "rank": 0}),
            ("kind", {"kind": "archimedean"}),
        ]
    )
    def test_invalid_valuations(self, _, entry):
        """Missing keys and unknown kinds are rejected."""
        with self.assertRaises(ValidationError):
            BaseValuationSpec.from_dict(entry)

    def test_nested_valuation(self):
        """Composite valuations nest their parts."""
        spec = ValuationSpec.from_dict(
            {
                "graded_field": "K_Qx",
                "v1": {
                    "kind": "composite",
                    "outer": {"kind": "place", "at": "x"},
                    "inner": {"kind": "p_adic", "p": 5},
                },
            }
        )
        self.assertEqual(spec.v1.outer.kind, ValuationKind.PLACE)
        self.assertEqual(spec.v1.inner.p, 5)
        self.assertEqual(spec.psi, [])
        self.assertEqual(ValuationSpec.from_str(spec.to_str()), spec)

    def test_lattice_dimension(self):
        """Generators live in Q^dim."""
        spec = LatticeSpec.from_dict({"dim": 2, "generators": [[1, 0], ["1/2", 1]]})
        self.assertEqual(spec.dim, 2)
        with self.assertRaises(ValidationError):
            LatticeSpec.from_dict({"dim": 2, "generators": [[1]]})
        with self.assertRaises(ValidationError):
            LatticeSpec.from_dict({"dim": 0})

    @parameterized.expand(
        [
            ("both", {"graded_field": "K", "generators": [{}], "table": [[0]], "action": [{}]}),
            ("neither", {"graded_field": "K"}),
            ("no_action", {"graded_field": "K", "table": [[0]]}),
        ]
    )
    def test_group_presentations(self, _, entry):
        """Exactly one of generators and table plus action."""
        with self.assertRaises(ValidationError):
            GroupSpec.from_dict(entry)

    def test_models(self):
        """Points are named once, scenarios are nested."""
        spec = ModelSpec.from_dict(
            {
                "group": "conj",
                "points": ["eta", "A_plus"],
                "scenarios": [{"name": "s", "S": ["A_plus"], "U": ["eta"]}],
            }
        )
        self.assertEqual(spec.scenarios[0], ScenarioSpec(name="s", S=["A_plus"], U=["eta"]))
        expected = ModelSpec(group="conj", points=["A_plus", "eta"], scenarios=spec.scenarios)
        self.assertEqual(spec, expected)

        with self.assertRaises(ValidationError):
            ModelSpec.from_dict({"group": "conj", "points": ["eta", "eta"]})


class TestSuiteReport(unittest.TestCase):
    def test_summary(self):
        """Passed only when every check passed."""
        report = SuiteReport(suite=SuiteName.EFN)
        self.assertTrue(report.passed)

        report.add("n_equals_ef", True, expected=2, actual=2, extension="KB_over_KA")
        report.add("basis_product", False, extension="KB_over_KA2")
        summary = report.summary()
        self.assertFalse(report.passed)
        self.assertEqual(summary["suite"], "efn")
        self.assertEqual((summary["total"], summary["failed"]), (2, 1))
        self.assertEqual(summary["checks"][0]["inputs"], {"extension": "KB_over_KA"})
