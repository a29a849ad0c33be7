# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import unittest

from legendrian.errors import ArityError
from legendrian.gf import Poly1D, Polynomial, check_star_condition
from legendrian.gf.ops import transform_T

BOX = [(-1.0, 1.0), (-1.0, 1.0)]


class TestStarCondition(unittest.TestCase):
    def test_transverse(self):
        "q w + w^3: the Jacobian of grad_w F always has rank one."
        F = Polynomial([(1, (1, 1)), (1, (0, 3))], 1, ("w",))
        report = check_star_condition(F, BOX, 0.1)
        self.assertTrue(report)
        self.assertTrue(report.worst_sigma_min > 0.5)
        self.assertEqual(report.failures, [])

    def test_degenerate(self):
        "w^3 alone is not transverse at w = 0."
        F = Polynomial([(1, (0, 3))], 1, ("w",))
        report = check_star_condition(F, BOX, 0.1)
        self.assertFalse(report)
        self.assertTrue(len(report.failures) > 0)
        self.assertEqual(report.as_dict()["satisfied"], False)

    def test_empty_contour(self):
        F = Polynomial([(1, (0, 1))], 1, ("w",))
        report = check_star_condition(F, BOX, 0.1)
        self.assertTrue(report)
        self.assertTrue("empty contour in box" in report.flags)

    def test_transform(self):
        report = check_star_condition(transform_T(Poly1D([0, 0, -3, 0, 1])),
                                      [(-2.0, 2.0), (-2.0, 2.0)], 0.05)
        self.assertTrue(report)

    def test_arity(self):
        self.assertRaises(ArityError, check_star_condition, Poly1D([0, 1]),
                          [(-1.0, 1.0)], 0.1)
        F = Polynomial([(1, (1, 1))], 1, ("w",))
        self.assertRaises(ArityError, check_star_condition, F, BOX[:1], 0.1)


if __name__ == "__main__":
    unittest.main()
