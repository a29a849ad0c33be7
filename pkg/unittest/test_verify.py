# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import json
import shutil
import tempfile
import numpy as np
import unittest

from legendrian.cli import main
from legendrian.errors import ScenarioError
from legendrian.verify import Report, SUITES, load_scenario, \
                              parse_scenario, reproduce_figure, run_check, \
                              run_suite, scenario_path
from legendrian.verify.suites import check_kinds

SLICE_OF_TRANSFORM = {
    "left": {"kind": "slice", "kept": [0],
             "child": {"kind": "transform_t",
                       "child": {"kind": "polynomial", "base_dim": 2,
                                 "terms": [[0.25, [4, 0]], [1, [1, 1]]]}}},
    "right": {"kind": "transform_t",
              "child": {"kind": "contour", "kept": [0],
                        "child": {"kind": "polynomial", "base_dim": 2,
                                  "terms": [[0.25, [4, 0]], [1, [1, 1]]]}}},
}


def document(*checks):
    return {"schema": 1, "name": "mini", "seed": 3, "checks": list(checks)}


def check(name, kind, tolerance, **params):
    return {"name": name, "kind": kind, "anchor": "mini: " + name,
            "tolerance": tolerance, "params": params}


class TestScenario(unittest.TestCase):
    def test_minimal(self):
        scenario = parse_scenario(document())
        self.assertEqual((scenario.name, scenario.seed), ("mini", 3))

    def test_wrong_schema(self):
        data = document()
        data["schema"] = 2
        self.assertRaises(ScenarioError, parse_scenario, data)

    def test_duplicate_names(self):
        a = check("same", "pointwise_equal", 0.1)
        self.assertRaises(ScenarioError, parse_scenario, document(a, a))

    def test_negative_tolerance(self):
        self.assertRaises(ScenarioError, parse_scenario,
                          document(check("a", "pointwise_equal", -1.0)))

    def test_unknown_field(self):
        data = document()
        data["extra"] = True
        self.assertRaises(ScenarioError, parse_scenario, data)

    def test_shipped_scenarios(self):
        "Every suite ships a valid scenario using known check kinds."
        for name in SUITES:
            scenario = load_scenario(scenario_path(name))
            self.assertEqual(scenario.name, name)
            self.assertTrue(scenario.checks)
            for c in scenario.checks:
                self.assertTrue(c.kind in check_kinds, c.kind)

    def test_missing_file(self):
        self.assertRaises(ScenarioError, load_scenario,
                          os.path.join(thisdir, "no-such-scenario.json"))


class TestRunning(unittest.TestCase):
    def test_suite_in_memory(self):
        scenario = parse_scenario(document(
            check("slice_of_transform", "pointwise_equal", 1e-12,
                  **SLICE_OF_TRANSFORM),
            check("mismatch", "pointwise_equal", 0.0,
                  left={"kind": "poly1d", "coeffs": [0, 0, 1]},
                  right={"kind": "poly1d", "coeffs": [0, 0, 1.5]}),
            check("unknown", "no_such_kind", 1.0)))
        results = run_suite("mini", scenario)
        self.assertEqual([r.name for r in results],
                         ["mismatch", "slice_of_transform", "unknown"])
        mismatch, identity, unknown = results
        self.assertTrue(identity.passed)
        self.assertFalse(mismatch.passed)
        self.assertTrue(mismatch.defect > 0)
        self.assertFalse(unknown.passed)
        self.assertEqual(unknown.error["cause"], "scenario")

        report = Report({"mini": results})
        self.assertFalse(report.passed)
        self.assertEqual([r.name for r in report.failures()],
                         ["mismatch", "unknown"])
        data = json.loads(report.dumps())
        self.assertEqual(len(data["suites"]["mini"]), 3)
        self.assertTrue("ERROR scenario" in report.summary())

    def test_missing_parameter(self):
        scenario = parse_scenario(document(
            check("half", "pointwise_equal", 1.0,
                  left={"kind": "poly1d", "coeffs": [1]})))
        result = run_check(scenario, scenario.checks[0])
        self.assertEqual(result.error["cause"], "scenario")

    def test_deterministic(self):
        "Random points depend only on the seed and the check name."
        scenario = parse_scenario(document(
            check("mismatch", "pointwise_equal", 0.0,
                  left={"kind": "poly1d", "coeffs": [0, 0, 1]},
                  right={"kind": "poly1d", "coeffs": [0, 0, 1.5]})))
        first = run_check(scenario, scenario.checks[0])
        second = run_check(scenario, scenario.checks[0])
        self.assertEqual(first.defect, second.defect)

    def test_shipped_pointwise_checks(self):
        scenario = load_scenario(scenario_path("remark34"))
        for c in scenario.checks:
            if c.kind == "pointwise_equal":
                self.assertTrue(run_check(scenario, c).passed, c.name)

    def test_unknown_suite(self):
        self.assertRaises(ScenarioError, run_suite, "no_such_suite")


class TestShippedSuites(unittest.TestCase):
    "The shipped suites pass as they stand."

    def assertSuitePasses(self, name):
        failed = [(r.name, r.defect, r.error) for r in run_suite(name)
                  if not r.passed]
        self.assertEqual(failed, [])

    def named(self, suite, name):
        scenario = load_scenario(scenario_path(suite))
        found = [c for c in scenario.checks if c.name == name]
        self.assertEqual(len(found), 1, name)
        return run_check(scenario, found[0])

    def test_theorem21(self):
        self.assertSuitePasses("theorem21")

    def test_prop31(self):
        self.assertSuitePasses("prop31")

    def test_theorem327(self):
        self.assertSuitePasses("theorem327")

    def test_lemma31(self):
        self.assertSuitePasses("lemma31_crosscheck")

    def test_convolution_within_tolerance(self):
        "Pieces ending at the folds keep the convolution fronts close."
        result = self.named("lemma31_crosscheck", "convolution")
        self.assertTrue(result.passed, result.defect)
        self.assertTrue(result.defect <= 0.05)

    def test_convolution_via_product_within_tolerance(self):
        result = self.named("lemma31_crosscheck", "convolution_via_product")
        self.assertTrue(result.passed, result.defect)

    def test_transform_of_sum_on_whole_grid(self):
        "s(F_T(1+2)) and s(F_(T1) conv (T2)) agree at every grid node."
        result = self.named(
            "theorem327", "transform_of_sum_against_convolution_of_transforms")
        self.assertTrue(result.passed, result.defect)
        self.assertEqual(result.details["nodes"], 41)

    def test_rational_direct_sum(self):
        result = self.named("prop31", "direct_sum_well_and_quadratic_rational")
        self.assertTrue(result.passed, result.defect)


class TestFigures(unittest.TestCase):
    def setUp(self):
        self.tempdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tempdir)

    def test_transformed_quartic(self):
        result = reproduce_figure("fig1", self.tempdir)
        features = result["features"]
        self.assertEqual(features["cusp_count"], 2)
        self.assertEqual(features["self_crossings"], 1)
        self.assertLess(features["cusp_error"], 1e-3)
        for path in result["files"]:
            self.assertTrue(os.path.exists(path))
        with open(os.path.join(self.tempdir, "fig1.json")) as f:
            self.assertEqual(json.load(f)["figure"], "fig1")

    def test_round_trips(self):
        features = reproduce_figure("fig8", self.tempdir)["features"]
        self.assertLess(features["tt_gap"], 1e-9)
        self.assertAlmostEqual(features["hull_at_0"], -2.25, places=3)
        self.assertTrue(features["hull_differs"])

    def test_unknown_and_experimental(self):
        self.assertRaises(ScenarioError, reproduce_figure, "fig99",
                          self.tempdir)
        self.assertRaises(ScenarioError, reproduce_figure, "fig2",
                          self.tempdir)


class TestCommandLine(unittest.TestCase):
    def setUp(self):
        self.tempdir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.tempdir)

    def path(self, name):
        return os.path.join(self.tempdir, name)

    def write_gf(self, data):
        with open(self.path("gf.json"), "w") as f:
            json.dump(data, f)
        return self.path("gf.json")

    def test_unknown_command(self):
        self.assertEqual(main(["sideways"]), 2)
        self.assertEqual(main([]), 2)

    def test_toolkit_error(self):
        "Toolkit errors exit with status 2."
        self.assertEqual(main(["figure", "--id", "fig99", "--out",
                               self.tempdir]), 2)

    def test_bad_option(self):
        self.assertRaises(SystemExit, main, ["verify", "--suite", "nope"])

    def test_selector(self):
        gf = self.write_gf({"kind": "transform_t",
                            "child": {"kind": "poly1d", "coeffs": [0, 3, 1]}})
        status = main(["selector", "--gf", gf, "--qmin", "-1", "--qmax", "1",
                       "--step", "0.5", "--box", "-5:5", "--fiber-step",
                       "0.01", "--out", self.path("curve.csv")])
        self.assertEqual(status, 0)
        data = np.genfromtxt(self.path("curve.csv"), delimiter=",",
                             names=True)
        np.testing.assert_allclose(data["s"], (data["q"] - 3) ** 2 / 4,
                                   atol=1e-9)
        self.assertTrue((data["iota"] == 1).all())

    def test_front(self):
        gf = self.write_gf({"kind": "transform_t",
                            "child": {"kind": "poly1d",
                                      "coeffs": [0, 0, -3, 0, 1]}})
        status = main(["front", "--gf", gf, "--qmin", "-2", "--qmax", "2",
                       "--step", "0.05", "--box", "-3:3", "--fiber-step",
                       "0.01", "--out", self.path("front.csv")])
        self.assertEqual(status, 0)
        self.assertTrue(os.path.getsize(self.path("front.csv")) > 0)

    def test_conjugate(self):
        with open(self.path("f.csv"), "w") as f:
            f.write("x,value\n")
            for x in np.linspace(-2.0, 2.0, 401):
                f.write("%.17g,%.17g\n" % (x, x * x))
        status = main(["conjugate", "--in", self.path("f.csv"), "--out",
                       self.path("fstar.csv"), "--pmin", "-1", "--pmax", "1",
                       "--pstep", "0.5"])
        self.assertEqual(status, 0)
        data = np.genfromtxt(self.path("fstar.csv"), delimiter=",",
                             names=True)
        np.testing.assert_allclose(data["value"], data["x"] ** 2 / 4,
                                   atol=1e-4)


if __name__ == "__main__":
    unittest.main()
