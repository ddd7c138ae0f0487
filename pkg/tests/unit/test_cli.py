# Copyright 2024 Canonical Ltd.
# See LICENSE file for licensing details.

"""Unit test for the command line."""
import unittest

from parameterized import parameterized

from tests.helpers import RESOURCES, raw_report, run_cli

USER_CONFIG = ["--config", f"{RESOURCES}/user_config.yaml"]
DUPLICATE_CONFIG = ["--config", f"{RESOURCES}/duplicate_config.yaml"]


class TestEval(unittest.TestCase):
    def test_normal_form(self):
        """Elements are printed as sorted term lists."""
        code, report = run_cli("eval", "u + u^2", "--field", "K_A")
        self.assertEqual(code, 0)
        self.assertEqual(report["element"], "1*u^(1) + 1*u^(2)")
        self.assertEqual(report["terms"], [["(1)", "1"], ["(2)", "1"]])
        self.assertFalse(report["homogeneous"])
        self.assertEqual((report["tool"], report["command"]), ("gradedval", "eval"))
        self.assertNotIn("timestamp", report)

    def test_gaussian_coefficients(self):
        """Base generators inside coefficients."""
        code, report = run_cli("eval", "(1+2*i)*u^(-1)", "--field", "K_B")
        self.assertEqual(code, 0)
        self.assertEqual(len(report["terms"]), 1)
        self.assertEqual(report["terms"][0][0], "(-1)")
        self.assertTrue(report["homogeneous"])

    @parameterized.expand(
        [
            ("10*u^(1)", ["3/2"], True),
            ("u + u^2", ["1/2"], True),
            ("u^(-1)", ["-1/2"], False),
            ("1/5", ["-1"], False),
        ]
    )
    def test_values(self, expression, value, member):
        """Values and membership under the half-slope 5-adic valuation."""
        code, report = run_cli("eval", expression, "--valuation", "V_half")
        self.assertEqual(code, 0)
        self.assertEqual(report["graded_field"], "K_A")
        self.assertEqual(report["value"], value)
        self.assertEqual(report["member"], member)

    def test_residue(self):
        """Homogeneous members get a graded residue."""
        _, report = run_cli("eval", "10*u", "--valuation", "V_half")
        self.assertIn("residue", report)
        _, report = run_cli("eval", "u + u^2", "--valuation", "V_half")
        self.assertNotIn("residue", report)

    def test_user_config(self):
        """Entities from --config documents."""
        code, report = run_cli(*USER_CONFIG, "eval", "7*u^(1/2)", "--valuation", "R7_half")
        self.assertEqual(code, 0)
        self.assertEqual(report["value"], ["3/2"])

    @parameterized.expand(
        [
            ("parse", ["eval", "u^(", "--field", "K_A"], "ExpressionParseError"),
            ("no_field", ["eval", "u"], "ConfigError"),
            ("unknown_valuation", ["eval", "u", "--valuation", "nope"], "UnresolvedNameError"),
            ("bad_config", [*DUPLICATE_CONFIG, "eval", "1", "--field", "K_A"], "ConfigError"),
        ]
    )
    def test_usage_errors(self, _, argv, kind):
        """Usage errors exit with 2 and a report naming the error."""
        code, report = run_cli(*argv)
        self.assertEqual(code, 2)
        self.assertEqual(report["error_kind"], kind)

    def test_parse_error_column(self):
        """The error message carries the column."""
        _, report = run_cli("eval", "u^(", "--field", "K_A")
        self.assertEqual(report["error"], "expected integer at column 4")


class TestCommands(unittest.TestCase):
    def test_extend(self):
        """5 splits in Q(i)."""
        code, report = run_cli("extend", "--valuation", "R5", "--extension", "KB_over_KA")
        self.assertEqual(code, 0)
        self.assertEqual((report["e"], report["f"], report["n"]), (1, 2, 2))
        self.assertEqual(len(report["extensions"]), 2)

    def test_orbit(self):
        """conj permutes the extensions of R5 transitively."""
        code, report = run_cli("orbit", "--group", "conj", "--valuation", "R5")
        self.assertEqual(code, 0)
        self.assertEqual(len(report["orbits"]), 1)

    def test_neighborhood(self):
        """The orbit of A± in the five point model."""
        code, report = run_cli("neighborhood", "--model", "five_point", "--scenario", "orbit_of_A")
        self.assertEqual(code, 0)
        self.assertEqual(report["F"], ["1*u^(-1)"])
        self.assertEqual(report["points"], ["eta", "A_plus", "A_minus"])
        self.assertIn(["D_plus", "A_plus"], report["hasse"])

    @parameterized.expand(
        [
            ("unknown_scenario", ["neighborhood", "--model", "five_point", "--scenario", "nope"]),
            (
                "not_an_orbit",
                [*USER_CONFIG, "neighborhood", "--model", "three_point"]
                + ["--scenario", "not_an_orbit"],
            ),
        ]
    )
    def test_bad_scenarios(self, _, argv):
        """Invalid scenarios are usage errors."""
        code, report = run_cli(*argv)
        self.assertEqual(code, 2)
        self.assertEqual(report["error_kind"], "ConfigError")

    @parameterized.expand([("conj", "pass"), ("sign", "pass"), ("trivial_z2", "fail")])
    def test_torsor(self, group, verdict):
        """A computed verdict is a successful run."""
        code, report = run_cli("torsor", "--group", group)
        self.assertEqual(code, 0)
        self.assertEqual(report["verdict"], verdict)

    def test_suite(self):
        """A passing suite exits with 0."""
        code, report = run_cli("suite", "gauss")
        self.assertEqual(code, 0)
        self.assertTrue(report["passed"])
        self.assertEqual(report["suite"], "gauss")

    def test_unknown_suite(self):
        """suite bogus is a usage error."""
        code, report = run_cli("suite", "bogus")
        self.assertEqual(code, 2)
        self.assertEqual(report["error_kind"], "UnknownSuiteError")


class TestCertify(unittest.TestCase):
    def test_violation(self):
        """5 in, 25 out: a certificate and exit 1."""
        code, report = run_cli("certify", "--table", f"{RESOURCES}/certify_table.yaml")
        self.assertEqual(code, 1)
        self.assertEqual(report["certificate"]["rule"], "iii")
        self.assertEqual(report["certificate"]["witnesses"], ["5*u^(0)", "5*u^(0)"])
        self.assertTrue(report["replays"])

    def test_genuine_table(self):
        """A 5-adic trace passes."""
        code, report = run_cli("certify", "--table", f"{RESOURCES}/trace_table.yaml")
        self.assertEqual(code, 0)
        self.assertIsNone(report["certificate"])

    def test_strict(self):
        """Strict scans stop on missing combinations."""
        code, report = run_cli("certify", "--table", f"{RESOURCES}/certify_table.yaml", "--strict")
        self.assertEqual(code, 1)
        self.assertEqual(report["error_kind"], "IncompleteUniverseError")

    @parameterized.expand([(0, 0), (1, 1), (2, 1)])
    def test_perturbed_traces(self, flips, expected):
        """Perturbed 5-adic traces are caught on the five_adic universe."""
        argv = ["--universe", "five_adic", "--valuation", "R5", "--flips", str(flips)]
        code, report = run_cli("certify", *argv, "--seed", "3")
        self.assertEqual(code, expected)
        self.assertEqual(report["flips"], flips)

    @parameterized.expand(
        [
            ("wrong_field", ["certify", "--universe", "gaussian", "--valuation", "R5"]),
            ("no_input", ["certify"]),
            ("missing_table", ["certify", "--table", f"{RESOURCES}/missing.yaml"]),
        ]
    )
    def test_usage_errors(self, _, argv):
        """Bad certify inputs exit with 2."""
        code, report = run_cli(*argv)
        self.assertEqual(code, 2)
        self.assertEqual(report["error_kind"], "ConfigError")


class TestReports(unittest.TestCase):
    def test_deterministic(self):
        """Two runs without timestamp are byte identical."""
        argv = ["neighborhood", "--model", "six_point", "--scenario", "avoid_E"]
        self.assertEqual(raw_report(*argv), raw_report(*argv))

    def test_timestamp(self):
        """The header carries a timestamp by default."""
        _, report = run_cli("torsor", "--group", "conj", timestamp=True)
        self.assertIn("timestamp", report)

    @parameterized.expand(
        [
            ("pool_exponent", ["--pool-exponent", "0", "suite", "gauss"]),
            ("unknown_command", ["frobnicate"]),
            ("missing_argument", ["torsor"]),
        ]
    )
    def test_rejected_arguments(self, _, argv):
        """Argument errors exit with 2 before any report."""
        code, report = run_cli(*argv)
        self.assertEqual(code, 2)
        self.assertIsNone(report)
