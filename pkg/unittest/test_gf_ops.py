# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import numpy as np
import unittest

from legendrian.errors import NoStabilizationFound, PatternNotApplicable, \
                              RangeError, ScenarioError
from legendrian.gf import Poly1D, Polynomial, serial
from legendrian.gf.ops import convolution_gf, fiber_diffeo_sum_conv, \
                              path_endpoints, reorder_fibers, stabilize, \
                              strip_stabilization, substitute_base, \
                              sum_gf, theorem327_path, transform_T, zero_gf


def max_gap(F, G, seed=0, count=200, radius=2.0):
    x = np.random.default_rng(seed).uniform(-radius, radius, (count, F.dim))
    return float(max(np.abs(F.value(x) - G.value(x)).max(),
                     np.abs(F.gradient(x) - G.gradient(x)).max()))


class TestFiberMaps(unittest.TestCase):
    def setUp(self):
        self.f1 = Poly1D([0, 1, -3, 0, 1])
        self.f2 = Poly1D([0, 0, 1, 0.5, 0.25])

    def test_sum_conv_diffeo(self):
        "The sum of two transforms, reparametrized, is T of the convolution."
        F = sum_gf(transform_T(self.f1), transform_T(self.f2))
        mapped = fiber_diffeo_sum_conv(F)
        target = transform_T(convolution_gf(self.f1, self.f2))
        self.assertEqual(mapped.fiber_names, target.fiber_names)
        self.assertLess(max_gap(mapped, target), 1e-9)

    def test_sum_conv_needs_transforms(self):
        self.assertRaises(PatternNotApplicable, fiber_diffeo_sum_conv,
                          sum_gf(self.f1, self.f2))

    def test_reorder(self):
        F = Polynomial([(1, (1, 1, 0)), (1, (0, 2, 1)), (1, (0, 0, 3))], 1,
                       ("a", "b"), index=0)
        G = reorder_fibers(F, [1, 0])
        self.assertEqual(G.fiber_names, ("b", "a"))
        self.assertAlmostEqual(G.eval([0.5], [2.0, 3.0]),
                               F.eval([0.5], [3.0, 2.0]))
        self.assertRaises(PatternNotApplicable, reorder_fibers, F, [0, 0])

    def test_substitute_base(self):
        F = Polynomial([(1, (1, 1)), (2, (0, 2))], 2)
        G = substitute_base(F, 0, 3.0)
        self.assertEqual(G.base_dim, 1)
        self.assertAlmostEqual(G.eval([2.0]), 14.0)


class TestStabilization(unittest.TestCase):
    def test_strip(self):
        F = transform_T(Poly1D([0, 0, 1]))
        self.assertTrue(strip_stabilization(stabilize(F, [[1.0]])) is F)

    def test_strip_nothing(self):
        self.assertRaises(NoStabilizationFound, strip_stabilization,
                          Poly1D([0, 0, 1]))

    def test_zero(self):
        self.assertEqual(zero_gf(2).eval([1.0, -4.0]), 0.0)


class TestPath(unittest.TestCase):
    def setUp(self):
        self.F1 = Poly1D([0, 1, -3, 0, 1])
        self.F2 = Poly1D([0, -0.5, 1, 0, 0.5])

    def test_endpoints(self):
        "The path starts at the stabilized sum and ends at the convolution."
        start, end = path_endpoints(self.F1, self.F2)
        path0 = theorem327_path(self.F1, self.F2, 0.0)
        path1 = theorem327_path(self.F1, self.F2, 1.0)
        self.assertEqual(path0.fiber_dim, start.fiber_dim)
        self.assertLess(max_gap(path0, start, 1), 1e-9)
        self.assertLess(max_gap(path1, end, 2), 1e-9)

    def test_range(self):
        self.assertRaises(RangeError, theorem327_path, self.F1, self.F2, 1.5)
        self.assertRaises(RangeError, theorem327_path, self.F1, self.F2,
                          0.5, "sideways")

    def test_strip_path_start(self):
        G = strip_stabilization(theorem327_path(self.F1, self.F2, 0.0))
        self.assertLess(max_gap(G, transform_T(sum_gf(self.F1, self.F2))),
                        1e-12)


class TestSerial(unittest.TestCase):
    def test_structure_survives(self):
        F = Polynomial([(0.25, (4, 0)), (1, (1, 1))], 2)
        G = transform_T(reorder_fibers(
            stabilize(transform_T(F), [[0, 0.5], [0.5, 0]]), [0, 3, 1, 2]))
        H = serial.loads(serial.dumps(G))
        self.assertTrue(serial.structurally_equal(G, H))
        self.assertLess(max_gap(G, H), 1e-12)

    def test_path_survives(self):
        P = theorem327_path(Poly1D([0, 0, 1]), Poly1D([0, 1, 1]), 0.25,
                            "diagonal")
        H = serial.from_dict(serial.to_dict(P))
        self.assertEqual((H.t, H.coupling), (0.25, "diagonal"))

    def test_unknown_kind(self):
        self.assertRaises(ScenarioError, serial.from_dict, {"kind": "spline"})
        self.assertRaises(ScenarioError, serial.from_dict, [1, 2])

    def test_missing_field(self):
        self.assertRaises(ScenarioError, serial.from_dict,
                          {"kind": "transform_t"})

    def test_invalid_arguments(self):
        "Arity errors while decoding surface as scenario errors."
        data = {"kind": "slice", "kept": [0],
                "child": {"kind": "poly1d", "coeffs": [0, 1]}}
        self.assertRaises(ScenarioError, serial.from_dict, data)


if __name__ == "__main__":
    unittest.main()
