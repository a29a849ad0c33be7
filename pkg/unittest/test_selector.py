# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import numpy as np
import unittest

from legendrian.errors import ArityError, NotTrackedError, RangeError
from legendrian.gf import Poly1D, Polynomial
from legendrian.gf.ops import sum_gf, transform_T
from legendrian.selector import box_is_sufficient, critical_values, \
                                minmax, minmax_direct_sum_check, selector

# w^4 - 3 w^2 and its negative, functions of the fiber alone
WELL = Polynomial([(1, (4,)), (-3, (2,))], 0, ("w",), index=0)
HILL = Polynomial([(-1, (4,)), (3, (2,))], 0, ("w",), index=1)
BOX = [(-3.0, 3.0)]


class TestCriticalValues(unittest.TestCase):
    def test_well(self):
        cvs = critical_values(WELL, BOX, 0.01)
        np.testing.assert_allclose(cvs.values, [-2.25, 0.0], atol=1e-9)
        self.assertEqual(cvs.multiplicity, [2, 1])
        self.assertTrue(-2.25 in cvs)


class TestMinmax(unittest.TestCase):
    def test_minimum(self):
        "Index 0: the min-max is the minimum."
        self.assertAlmostEqual(minmax(WELL, box=BOX, step=0.01), -2.25,
                               places=9)

    def test_maximum(self):
        self.assertAlmostEqual(minmax(HILL, box=BOX, step=0.01), 2.25,
                               places=9)

    def test_cubical_agrees(self):
        "Forcing persistence gives the same values as the fast paths."
        for field in ("z2", "q"):
            self.assertAlmostEqual(minmax(WELL, box=BOX, step=0.01,
                                          field=field, method="cubical"),
                                   -2.25, places=9)
            self.assertAlmostEqual(minmax(HILL, box=BOX, step=0.01,
                                          field=field, method="cubical"),
                                   2.25, places=9)

    def test_needs_box(self):
        self.assertRaises(ArityError, minmax, WELL)

    def test_untracked(self):
        f = Polynomial([(1, (2,))], 0, ("w",))
        self.assertRaises(NotTrackedError, minmax, f, box=BOX, step=0.1)
        self.assertAlmostEqual(minmax(f, 0, BOX, 0.1), 0.0)

    def test_unknown_method(self):
        self.assertRaises(RangeError, minmax, WELL, None, BOX, 0.1,
                          "z2", "max")

    def test_direct_sum(self):
        "s(f1 (+) f2) = s(f1) + s(f2)."
        f2 = Polynomial([(1, (2,))], 0, ("w",), index=0)
        result = minmax_direct_sum_check(HILL, f2, [(-2.5, 2.5)],
                                         [(-2.5, 2.5)], 0.05)
        self.assertAlmostEqual(result["left"], 2.25, places=6)
        self.assertAlmostEqual(result["right"], 0.0, places=6)
        self.assertLess(result["gap"], 1e-6)

    def test_fields_agree_on_direct_sums(self):
        "Z/2 and rational coefficients give the same min-max values."
        square = Polynomial([(1, (2,))], 0, ("w",), index=0)
        dip = Polynomial([(-1, (2,))], 0, ("w",), index=1)
        box = [(-2.5, 2.5)]
        for f1, f2, expected in ((HILL, HILL, 4.5), (square, dip, 0.0),
                                 (HILL, square, 2.25)):
            z2 = minmax_direct_sum_check(f1, f2, box, box, 0.1, "z2")
            q = minmax_direct_sum_check(f1, f2, box, box, 0.1, "q")
            for key in ("left", "right", "sum"):
                self.assertAlmostEqual(z2[key], q[key], places=9)
            self.assertAlmostEqual(q["sum"], expected, places=6)


class TestSelectorCurve(unittest.TestCase):
    def test_transform_of_quadratic(self):
        "The selector of T(q^2 + 3q) is (q - 3)^2 / 4."
        F = transform_T(Poly1D([0, 3, 1]))
        q = np.linspace(-2.0, 2.0, 41)
        curve = selector(F, q, [(-5.0, 5.0)], 0.01)
        self.assertEqual(curve.iota, 1)
        np.testing.assert_allclose(curve.values, (q - 3) ** 2 / 4,
                                   atol=1e-9)
        self.assertTrue(all(curve.members()))
        rows = curve.as_rows()
        self.assertEqual(len(rows), len(q))
        self.assertEqual(rows[0][2:], [1, 1])

    def test_graph(self):
        "Without fibers the selector is the function itself."
        q = np.linspace(-1.0, 1.0, 5)
        curve = selector(Poly1D([0, 0, -3, 0, 1]), q)
        np.testing.assert_allclose(curve.values, q ** 4 - 3 * q ** 2)

    def test_box_sufficiency(self):
        F = transform_T(Poly1D([0, 0, -3, 0, 1]))
        self.assertTrue(box_is_sufficient(F, [0.5], [(-3.0, 3.0)], 0.05))

    def test_box_sufficiency_is_pointwise(self):
        """
        The simple part of T(w^4 - 3 w^2) + T(w^2) beats the rest on the
        shell point by point, though its smallest gradient there is below
        the largest gradient of the rest.
        """
        F = sum_gf(transform_T(Poly1D([0, 0, -3, 0, 1])),
                   transform_T(Poly1D([0, 0, 1])))
        box = [(-3.0, 3.0), (-6.0, 6.0)]
        self.assertTrue(box_is_sufficient(F, [-2.0], box, 0.05))
        whole = selector(F, [-2.0], box, 0.1)
        left = selector(transform_T(Poly1D([0, 0, -3, 0, 1])), [-2.0],
                        [(-3.0, 3.0)], 0.1)
        right = selector(transform_T(Poly1D([0, 0, 1])), [-2.0],
                         [(-6.0, 6.0)], 0.1)
        self.assertAlmostEqual(right.values[0], 1.0, places=9)
        self.assertAlmostEqual(whole.values[0],
                               left.values[0] + right.values[0], places=6)

    def test_untracked(self):
        F = Polynomial([(1, (1, 1)), (1, (0, 2))], 1, ("w",))
        self.assertRaises(NotTrackedError, selector, F, [0.0],
                          [(-1.0, 1.0)], 0.1)


if __name__ == "__main__":
    unittest.main()
