# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import shutil
import tempfile
import numpy as np
import unittest

from legendrian.convex import GridFunction, TailModel, biconjugate, \
                              fenchel_young_gap, inf_conv, legendre_simple, \
                              lf_transform
from legendrian.errors import ConjugateNotFiniteError, NotSimpleError, \
                              RangeError
from legendrian.gf import Poly1D


def nodes(lo, hi, step):
    return lo + step * np.arange(int(round((hi - lo) / step)) + 1)


class TestGridFunction(unittest.TestCase):
    def test_interpolation_and_tails(self):
        f = GridFunction.from_function(lambda x: x ** 2, -1.0, 1.0, 0.5,
                                       TailModel(coefficients=[0, 0, 1]))
        self.assertAlmostEqual(f(0.25), 0.125)
        self.assertAlmostEqual(f(2.0), 4.0)
        g = GridFunction.from_function(lambda x: x ** 2, -1.0, 1.0, 0.5)
        self.assertEqual(g(2.0), float("inf"))

    def test_masked(self):
        f = GridFunction(0.0, 1.0, [1.0, np.inf, 3.0])
        self.assertEqual(list(f.mask), [False, True, False])
        self.assertEqual(f(0.5), float("inf"))
        self.assertEqual(f(2.0), 3.0)

    def test_roundoff_at_the_ends(self):
        "Points within roundoff of an end evaluate on the grid."
        f = GridFunction.from_function(lambda x: x ** 2, -3.0, 3.0, 0.01)
        self.assertAlmostEqual(f(-3.0000000000000004), 9.0)
        self.assertAlmostEqual(f(3.0000000000000004), 9.0)
        self.assertEqual(f(-3.01), float("inf"))

    def test_bad_grid(self):
        self.assertRaises(RangeError, GridFunction, 0.0, 0.0, [1.0, 2.0])
        self.assertRaises(RangeError, GridFunction.from_nodes,
                          [0.0, 1.0, 3.0], [1.0, 2.0, 3.0])

    def test_csv(self):
        tempdir = tempfile.mkdtemp()
        try:
            path = os.path.join(tempdir, "f.csv")
            sidecar = os.path.join(tempdir, "f.json")
            tail = TailModel(coefficients=[1, 0, 2], index=0)
            GridFunction.from_function(np.exp, 0.0, 1.0, 0.25, tail).save(
                path, sidecar)
            f = GridFunction.load(path, sidecar)
            self.assertEqual(len(f), 5)
            self.assertAlmostEqual(f.values[-1], np.e)
            self.assertEqual(f.tail.index, 0)
            self.assertEqual(list(f.tail.right), [1.0, 0.0, 2.0])
        finally:
            shutil.rmtree(tempdir)


class TestConjugate(unittest.TestCase):
    def test_square(self):
        "(x^2)* = p^2 / 4."
        f = GridFunction.from_function(lambda x: x ** 2, -5.0, 5.0, 0.01)
        p = nodes(-4.0, 4.0, 0.01)
        fstar = lf_transform(f, p)
        self.assertFalse(fstar.mask.any())
        np.testing.assert_allclose(fstar.values, p ** 2 / 4, atol=1e-4)
        brute = lf_transform(f, p, "brute")
        np.testing.assert_allclose(brute.values, fstar.values, atol=1e-12)

    def test_exponential(self):
        "exp* = p (log p - 1) for p > 0, +inf for p < 0."
        f = GridFunction.from_function(np.exp, -5.0, 5.0, 0.001)
        p = nodes(-1.0, 5.0, 0.01)
        fstar = lf_transform(f, p)
        self.assertTrue(fstar.mask[p < -0.01].all())
        inside = (p >= 0.1) & (p <= 5.0)
        exact = p[inside] * (np.log(p[inside]) - 1)
        np.testing.assert_allclose(fstar.values[inside], exact, atol=5e-3)

    def test_flat_well(self):
        "The flat well conjugates to p^2/4 + |p|."
        well = lambda x: np.maximum(np.abs(x) - 1.0, 0.0) ** 2
        f = GridFunction.from_function(well, -6.0, 6.0, 0.001)
        p = nodes(-3.0, 3.0, 0.01)
        fstar = lf_transform(f, p)
        np.testing.assert_allclose(fstar.values, p ** 2 / 4 + np.abs(p),
                                   atol=1e-4)

    def test_polynomial_tail(self):
        "A convex tail keeps the conjugate finite beyond the grid slopes."
        tail = TailModel(coefficients=[0, 0, 1], index=0)
        f = GridFunction.from_function(lambda x: x ** 2, -1.0, 1.0, 0.01,
                                       tail)
        p = nodes(-6.0, 6.0, 0.5)
        fstar = lf_transform(f, p)
        self.assertFalse(fstar.mask.any())
        np.testing.assert_allclose(fstar.values, p ** 2 / 4, atol=1e-3)

    def test_concave_tail(self):
        tail = TailModel(coefficients=[0, 0, -1])
        f = GridFunction.from_function(lambda x: -x ** 2, -1.0, 1.0, 0.1,
                                       tail)
        self.assertRaises(ConjugateNotFiniteError, lf_transform, f)

    def test_unknown_method(self):
        f = GridFunction.from_function(lambda x: x ** 2, -1.0, 1.0, 0.1)
        self.assertRaises(RangeError, lf_transform, f, None, "fast")

    def test_merge_matches_brute(self):
        "The hull merge and the all-pairs search agree on random convex data."
        rng = np.random.RandomState(7)
        x = nodes(-2.0, 2.0, 0.01)
        slopes = np.sort(rng.uniform(-3.0, 3.0, len(x) - 1))
        y = np.concatenate([[0.0], np.cumsum(slopes * 0.01)])
        f = GridFunction(x[0], 0.01, y)
        p = nodes(-4.0, 4.0, 0.001)
        fast, brute = lf_transform(f, p), lf_transform(f, p, "brute")
        np.testing.assert_array_equal(fast.mask, brute.mask)
        keep = ~fast.mask
        self.assertTrue(keep.sum() > len(p) // 2)
        np.testing.assert_allclose(fast.values[keep], brute.values[keep],
                                   atol=1e-12)

    def test_fenchel_young(self):
        f = GridFunction.from_function(lambda x: x ** 2, -3.0, 3.0, 0.01)
        fstar = lf_transform(f)
        v, p = np.meshgrid(nodes(-1.0, 1.0, 0.1), nodes(-2.0, 2.0, 0.1))
        self.assertTrue((fenchel_young_gap(f, fstar, v.ravel(),
                                           p.ravel()) >= -1e-9).all())


class TestBiconjugate(unittest.TestCase):
    def test_convex_is_fixed(self):
        f = GridFunction.from_function(lambda x: x ** 2, -2.0, 2.0, 0.01)
        fss = biconjugate(f)
        inside = np.abs(f.x) <= 0.9
        self.assertFalse(fss.mask[inside].any())
        np.testing.assert_allclose(fss.values[inside], f.x[inside] ** 2,
                                   atol=1e-3)

    def test_quartic_hull(self):
        "The convex hull of q^4 - 3q^2 is flat at -9/4 between its wells."
        f = GridFunction.from_function(lambda x: x ** 4 - 3 * x ** 2,
                                       -3.0, 3.0, 0.01)
        fss = biconjugate(f)
        self.assertAlmostEqual(fss(0.0), -2.25, places=3)
        self.assertAlmostEqual(fss(0.5), -2.25, places=3)


class TestInfConv(unittest.TestCase):
    def test_squares(self):
        "x^2 conv x^2 = x^2 / 2."
        f = GridFunction.from_function(lambda x: x ** 2, -2.0, 2.0, 0.01)
        q = nodes(-1.0, 1.0, 0.01)
        for method in ("brute", "convex"):
            h = inf_conv(f, f, q, method)
            np.testing.assert_allclose(h.values, q ** 2 / 2, atol=1e-4)

    def test_unknown_method(self):
        f = GridFunction.from_function(lambda x: x ** 2, -1.0, 1.0, 0.1)
        self.assertRaises(RangeError, inf_conv, f, f, None, "fast")

    def test_brute_matches_convex(self):
        "On convex samples sharing a step both methods agree."
        pairs = [
            (GridFunction.from_function(lambda t: t ** 2, -3.0, 3.0, 0.01),
             GridFunction.from_function(lambda t: 0.5 * t ** 2 + t,
                                        -3.0, 3.0, 0.01)),
            (GridFunction.from_function(np.exp, -2.0, 2.0, 0.01),
             GridFunction.from_function(np.abs, -2.0, 2.0, 0.01)),
            (GridFunction.from_function(lambda t: t ** 4, -1.5, 1.5, 0.01),
             GridFunction.from_function(lambda t: (t - 0.5) ** 2,
                                        -1.0, 2.0, 0.01)),
        ]
        for f1, f2 in pairs:
            brute = inf_conv(f1, f2, method="brute")
            convex = inf_conv(f1, f2, method="convex")
            self.assertEqual(len(brute), len(convex))
            np.testing.assert_array_equal(brute.mask, convex.mask)
            self.assertFalse(brute.mask.any())
            np.testing.assert_allclose(brute.values, convex.values,
                                       atol=1e-9)

    def test_brute_near_the_edge(self):
        "q - v lands within roundoff of the end of the second grid."
        f1 = GridFunction.from_function(lambda t: t ** 2, -3.0, 3.0, 0.01)
        f2 = GridFunction.from_function(lambda t: 0.5 * t ** 2 + t,
                                        -3.0, 3.0, 0.01)
        q = nodes(-5.98, -5.9, 0.01)
        brute = inf_conv(f1, f2, q, "brute")
        convex = inf_conv(f1, f2, q, "convex")
        self.assertFalse(brute.mask.any())
        np.testing.assert_allclose(brute.values, convex.values, atol=1e-9)

    def test_conjugate_of_convolution(self):
        "(f1 conv f2)* = f1* + f2*."
        f1 = GridFunction.from_function(lambda t: t ** 2, -3.0, 3.0, 0.01)
        f2 = GridFunction.from_function(lambda t: 0.5 * t ** 2 + t,
                                        -3.0, 3.0, 0.01)
        p = nodes(-1.5, 1.5, 0.01)
        for method in ("brute", "convex"):
            h = lf_transform(inf_conv(f1, f2, method=method), p)
            s1, s2 = lf_transform(f1, p), lf_transform(f2, p)
            for g in (h, s1, s2):
                self.assertFalse(g.mask.any())
            np.testing.assert_allclose(h.values, s1.values + s2.values,
                                       atol=1e-6)


class TestLegendreSimple(unittest.TestCase):
    def test_quadratic(self):
        "(q^2 + 3q)^t = (q - 3)^2 / 4."
        t = legendre_simple(Poly1D([0, 3, 1]))
        for q in (-2.0, 0.0, 1.0, 5.0):
            self.assertAlmostEqual(t(q), (q - 3) ** 2 / 4, places=9)
        self.assertAlmostEqual(t.inverse_slope(1.0), -1.0, places=9)

    def test_not_simple(self):
        self.assertRaises(NotSimpleError, legendre_simple,
                          Poly1D([0, 0, -3, 0, 1]))

    def test_grid_function(self):
        f = GridFunction.from_function(np.exp, -3.0, 3.0, 0.001)
        t = legendre_simple(f)
        self.assertAlmostEqual(t(1.0), -1.0, places=5)


if __name__ == "__main__":
    unittest.main()
