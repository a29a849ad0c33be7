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

from legendrian.errors import ArityError, UnsupportedExportError
from legendrian.front import LegendrianCloud, \
                             detect_cusps, export, geometric_T, \
                             geometric_convolution, geometric_sum, \
                             hausdorff, sample_legendrian, \
                             solve_fiber_critical, wave_front
from legendrian.front.cusps import count_singularities
from legendrian.gf import Poly1D, Polynomial
from legendrian.gf.ops import transform_T

QUARTIC = Poly1D([0, 0, -3, 0, 1])


def grid(lo, hi, step):
    return lo + step * np.arange(int(round((hi - lo) / step)) + 1)


class TestFiberRoots(unittest.TestCase):
    def test_fold(self):
        "w^3/3 - q w has critical points w = +-sqrt(q)."
        F = Polynomial([(1.0 / 3, (0, 3)), (-1, (1, 1))], 1, ("w",))
        roots = solve_fiber_critical(F, [1.0], [(-2.0, 2.0)], 0.01)
        np.testing.assert_allclose(roots.roots[:, 0], [-1.0, 1.0],
                                   atol=1e-9)
        self.assertEqual(len(solve_fiber_critical(F, [-1.0], [(-2.0, 2.0)],
                                                  0.01)), 0)

    def test_two_fibers(self):
        F = Polynomial([(0.5, (0, 2, 0)), (0.5, (0, 0, 2)), (-1, (1, 1, 0))],
                       1, ("w1", "w2"))
        roots = solve_fiber_critical(F, [0.3], [(-1.0, 1.0), (-1.0, 1.0)],
                                     0.05)
        self.assertEqual(len(roots), 1)
        np.testing.assert_allclose(roots[0], [0.3, 0.0], atol=1e-9)

    def test_needs_fibers(self):
        self.assertRaises(ArityError, solve_fiber_critical, QUARTIC, [0.0],
                          [(-1.0, 1.0)], 0.1)


class TestSampling(unittest.TestCase):
    def test_graph(self):
        "Without fibers the Legendrian is the 1-graph."
        q = grid(-1.0, 1.0, 0.1)
        cloud = sample_legendrian(QUARTIC, q)
        np.testing.assert_allclose(cloud.u, q ** 4 - 3 * q ** 2)
        np.testing.assert_allclose(cloud.p[:, 0], 4 * q ** 3 - 6 * q)

    def test_transform_of_quadratic(self):
        "T(q^2 + 3q) generates the graph of (q - 3)^2 / 4."
        q = grid(-2.0, 2.0, 0.05)
        cloud = sample_legendrian(transform_T(Poly1D([0, 3, 1])), q,
                                  [(-5.0, 5.0)], 0.01)
        self.assertEqual(len(cloud), len(q))
        order = np.argsort(cloud.q[:, 0])
        np.testing.assert_allclose(cloud.q[order, 0], q)
        np.testing.assert_allclose(cloud.u[order], (q - 3) ** 2 / 4,
                                   atol=1e-9)
        np.testing.assert_allclose(cloud.p[order, 0], (q - 3) / 2,
                                   atol=1e-9)

    def test_needs_box(self):
        self.assertRaises(ArityError, sample_legendrian,
                          transform_T(QUARTIC), grid(-1.0, 1.0, 0.5))


class TestGeometry(unittest.TestCase):
    def setUp(self):
        self.q = grid(-2.0, 2.0, 0.005)
        self.graph = sample_legendrian(QUARTIC, self.q)

    def test_T_involution(self):
        twice = geometric_T(geometric_T(self.graph))
        np.testing.assert_allclose(twice.as_array(), self.graph.as_array(),
                                   atol=1e-12)

    def test_cusps_of_transformed_quartic(self):
        "T of q^4 - 3q^2 has two cusps at u = -3/4, q = +-2 sqrt(2)."
        front = wave_front(geometric_T(self.graph))
        found = detect_cusps(front)
        self.assertEqual(count_singularities(found),
                         {"cusp": 2, "vertex": 0})
        found = sorted(found, key=lambda s: s.q)
        for s, expected in zip(found, (-2 * np.sqrt(2), 2 * np.sqrt(2))):
            self.assertAlmostEqual(s.u, -0.75, places=4)
            self.assertAlmostEqual(s.q, expected, places=4)

    def test_graph_has_no_cusps(self):
        self.assertEqual(detect_cusps(wave_front(self.graph)), [])

    def test_sum_of_graphs(self):
        q = grid(-1.0, 1.0, 0.1)
        A = sample_legendrian(Poly1D([0, 0, 1]), q)
        B = sample_legendrian(Poly1D([0, 1]), q)
        S = geometric_sum(A, B, q)
        order = np.argsort(S.q[:, 0])
        np.testing.assert_allclose(S.u[order], q ** 2 + q, atol=1e-12)
        np.testing.assert_allclose(S.p[order, 0], 2 * q + 1, atol=1e-12)

    def test_convolution_reaches_folds(self):
        """
        p = 4q^3 - 6q folds at p = +-2 sqrt(2); the pieces of the quartic
        run up to the folds, so the convolution with the graph of q^2 / 2
        contains the fold points.
        """
        A = sample_legendrian(QUARTIC, grid(-2.5, 2.5, 0.01))
        B = sample_legendrian(Poly1D([0, 0, 0.5]), grid(-8.0, 8.0, 0.01))
        C = geometric_convolution(A, B, grid(-3.9, 3.9, 0.01))
        X = C.as_array()
        for sign in (1, -1):
            p = sign * 2 * np.sqrt(2)
            v = -sign / np.sqrt(2)
            expected = np.array([v ** 4 - 3 * v ** 2 + p ** 2 / 2, v + p, p])
            gap = np.linalg.norm(X - expected, axis=1).min()
            self.assertTrue(gap < 1e-3, gap)

    def test_hausdorff(self):
        q = grid(-1.0, 1.0, 0.1)
        A = sample_legendrian(Poly1D([0.0]), q)
        B = sample_legendrian(Poly1D([0.1]), q)
        self.assertAlmostEqual(hausdorff(A, A), 0.0)
        self.assertAlmostEqual(hausdorff(A, B), 0.1)
        self.assertEqual(hausdorff(A, LegendrianCloud.empty(1)),
                         float("inf"))


class TestExport(unittest.TestCase):
    def setUp(self):
        self.tempdir = tempfile.mkdtemp()
        q = grid(-2.0, 2.0, 0.01)
        self.cloud = geometric_T(sample_legendrian(QUARTIC, q))

    def tearDown(self):
        shutil.rmtree(self.tempdir)

    def test_formats(self):
        for fmt in ("csv", "json", "svg"):
            path = os.path.join(self.tempdir, "front." + fmt)
            self.assertEqual(export(self.cloud, path), path)
            self.assertTrue(os.path.getsize(path) > 0)

    def test_json_marks_cusps(self):
        path = os.path.join(self.tempdir, "front.json")
        export(self.cloud, path)
        with open(path) as f:
            data = json.load(f)
        self.assertEqual(len([s for s in data["cusps"]
                              if s["kind"] == "cusp"]), 2)

    def test_unsupported(self):
        self.assertRaises(UnsupportedExportError, export, self.cloud,
                          os.path.join(self.tempdir, "front.png"))


if __name__ == "__main__":
    unittest.main()
