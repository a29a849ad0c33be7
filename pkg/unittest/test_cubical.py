# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import numpy as np
import unittest

from legendrian.errors import RangeError
from legendrian.selector.cubical import lower_star, sublevel_persistence

W = np.linspace(-1.0, 1.0, 41)


class TestLowerStar(unittest.TestCase):
    def test_shape_and_values(self):
        V = np.array([[0.0, 1.0], [2.0, 3.0]])
        L = lower_star(V)
        self.assertEqual(L.shape, (3, 3))
        self.assertEqual(L[0, 1], 1.0)
        self.assertEqual(L[1, 0], 2.0)
        self.assertEqual(L[1, 1], 3.0)


class TestPersistence(unittest.TestCase):
    def test_well(self):
        "A single well has one essential class in degree 0."
        for field in ("z2", "q"):
            diagram = sublevel_persistence(W ** 2, field=field)
            self.assertEqual(diagram.essential_ranks(), {0: 1})
            self.assertAlmostEqual(diagram.essential(0)[0].birth, 0.0)

    def test_hill_relative_to_floor(self):
        "A hill relative to its low ends has one class in degree 1."
        for field in ("z2", "q"):
            diagram = sublevel_persistence(-W ** 2, -0.5, field)
            self.assertEqual(diagram.essential_ranks(), {1: 1})
            self.assertAlmostEqual(diagram.essential(1)[0].birth, 0.0)

    def test_double_well(self):
        "Two wells: the second component dies at the barrier."
        V = (W ** 2 - 0.25) ** 2
        diagram = sublevel_persistence(V)
        self.assertEqual(diagram.essential_ranks(), {0: 1})
        finite = [b for b in diagram.bars if not b.essential and
                  b.degree == 0]
        self.assertEqual(len(finite), 1)
        self.assertAlmostEqual(finite[0].death, 0.0625)

    def test_saddle(self):
        "w1^2 - w2^2 relative to its low sides: one class in degree 1."
        w1, w2 = np.meshgrid(W, W, indexing="ij")
        for field in ("z2", "q"):
            diagram = sublevel_persistence(w1 ** 2 - w2 ** 2, -0.5, field)
            self.assertEqual(diagram.essential_ranks(), {1: 1})
            self.assertAlmostEqual(diagram.essential(1)[0].birth, 0.0)

    def test_unknown_field(self):
        self.assertRaises(RangeError, sublevel_persistence, W ** 2, None,
                          "r")


if __name__ == "__main__":
    unittest.main()
