# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import os, sys

thisdir = os.path.dirname(__file__)
sys.path.append(os.path.join(thisdir, ".."))

import numpy as np
import unittest

from legendrian.convex import GridFunction, TailModel
from legendrian.errors import ArityError, NotTrackedError, RangeError
from legendrian.gf import expr, meta
from legendrian.gf.ops import contour_gf, convolution_gf, \
                              fiber_diffeo_sum_conv, hyperbolic_form, \
                              product_gf, reorder_fibers, slice_gf, \
                              stabilize, sum_gf, theorem327_path, \
                              transform_T

QUARTIC = expr.Poly1D([0, 0, -3, 0, 1])


def numeric_gradient(F, x, h=1e-6):
    g = np.zeros(len(x))
    for i in range(len(x)):
        e = np.zeros(len(x))
        e[i] = h
        g[i] = (F.value(x + e) - F.value(x - e)) / (2 * h)
    return g


class TestLeaves(unittest.TestCase):
    def test_poly1d(self):
        "Coefficients are ascending."
        f = expr.Poly1D([0, 3, 1])
        self.assertAlmostEqual(f.eval([2.0]), 10.0)
        self.assertAlmostEqual(f.grad([2.0])[0][0], 7.0)
        self.assertEqual(f.fiber_dim, 0)

    def test_polynomial_dims(self):
        F = expr.Polynomial([(1, (1, 1)), (-1, (0, 3))], 1, ("w",))
        self.assertEqual((F.base_dim, F.fiber_dim, F.dim), (1, 1, 2))
        self.assertAlmostEqual(F.eval([2.0], [1.0]), 1.0)

    def test_monomial_arity(self):
        "Exponents must list one power per variable."
        self.assertRaises(ArityError, expr.Polynomial, [(1, (1, 1))], 1)

    def test_join_arity(self):
        self.assertRaises(ArityError, QUARTIC.eval, [1.0, 2.0])
        F = expr.Polynomial([(1, (1, 1))], 1, ("w",))
        self.assertRaises(ArityError, F.eval, [1.0])

    def test_quadratic_form(self):
        Q = expr.QuadraticForm([[1, 0], [0, -2]])
        self.assertEqual(Q.fiber_names, ("w1", "w2"))
        self.assertAlmostEqual(Q.eval([5.0], [1.0, 1.0]), -1.0)


class TestComposites(unittest.TestCase):
    def test_transform_formula(self):
        "F_T(q; v) = q v - F(v)."
        F = transform_T(expr.Poly1D([0, 0, 1]))
        self.assertEqual(F.fiber_names, ("v",))
        self.assertAlmostEqual(F.eval([1.0], [0.5]), 0.25)
        self.assertAlmostEqual(F.eval([-2.0], [3.0]), -15.0)

    def test_gradient_matches_differences(self):
        "Analytic gradients of a composite agree with finite differences."
        F2 = expr.Polynomial([(0.25, (4, 0)), (1, (1, 1)), (1, (0, 2))], 2)
        F = transform_T(convolution_gf(contour_gf(F2, [0]),
                                       transform_T(QUARTIC)))
        rng = np.random.default_rng(7)
        for x in rng.uniform(-1.5, 1.5, (5, F.dim)):
            np.testing.assert_allclose(F.gradient(x),
                                       numeric_gradient(F, x),
                                       rtol=1e-5, atol=1e-5)

    def test_hessian_symmetric(self):
        F = sum_gf(transform_T(QUARTIC), transform_T(expr.Poly1D([0, 1, 2])))
        H = F.hessian(np.array([0.3, -0.2, 0.7]))
        np.testing.assert_allclose(H, H.T)

    def test_slice_and_contour(self):
        F = expr.Polynomial([(1, (1, 2, 0)), (1, (0, 0, 2))], 3)
        C = contour_gf(F, [0, 2])
        self.assertEqual(C.fiber_names, ("q2",))
        self.assertAlmostEqual(C.eval([2.0, 3.0], [1.0]),
                               F.eval([2.0, 1.0, 3.0]))
        S = slice_gf(F, [1])
        self.assertEqual(S.base_dim, 1)
        self.assertAlmostEqual(S.eval([2.0]), 0.0)

    def test_kept_must_be_proper(self):
        F = expr.Polynomial([(1, (1, 1))], 2)
        self.assertRaises(ArityError, slice_gf, F, [0, 1])
        self.assertRaises(ArityError, contour_gf, F, [])
        self.assertRaises(ArityError, slice_gf, F, [2])

    def test_sum_needs_same_base(self):
        self.assertRaises(ArityError, sum_gf, QUARTIC,
                          expr.Polynomial([(1, (1, 1))], 2))

    def test_degenerate_stabilization(self):
        self.assertRaises(RangeError, stabilize, QUARTIC, [[1, 0], [0, 0]])

    def test_fiber_function(self):
        F = transform_T(QUARTIC)
        f = expr.FiberFunction(F, [1.0])
        self.assertAlmostEqual(f(np.array([1.0])), F.eval([1.0], [1.0]))
        self.assertRaises(ArityError, expr.FiberFunction, F, [1.0, 2.0])


def batched_gradient(F, X, h=1e-6):
    "Central differences at every row of X."
    G = np.zeros(X.shape)
    for i in range(X.shape[1]):
        E = np.zeros(X.shape)
        E[:, i] = h
        G[:, i] = (F.value(X + E) - F.value(X - E)) / (2 * h)
    return G


def wavy_tail():
    "t^2 + sin(3t) / 2 sampled on [-2, 2], with a t^2 tail."
    f = lambda t: t ** 2 + 0.5 * np.sin(3 * t)
    return expr.SampledTail(GridFunction.from_function(
        f, -2.0, 2.0, 0.01, TailModel(coefficients=[0, 0, 1], index=0)))


class TestGradients(unittest.TestCase):
    "Analytic gradients against central differences, node kind by node kind."

    POINTS = 1000

    def assertGradient(self, F, radius=1.5):
        rng = np.random.default_rng(F.dim)
        X = rng.uniform(-radius, radius, (self.POINTS, F.dim))
        np.testing.assert_allclose(F.gradient(X), batched_gradient(F, X),
                                   rtol=1e-5, atol=1e-5)

    def test_quadratic_form(self):
        self.assertGradient(expr.QuadraticForm([[1, 2], [2, -3]]))

    def test_sampled_tail(self):
        self.assertGradient(wavy_tail(), 1.9)

    def test_transform(self):
        self.assertGradient(transform_T(QUARTIC))
        self.assertGradient(transform_T(wavy_tail()), 1.9)

    def test_slice(self):
        F2 = expr.Polynomial([(0.25, (4, 0)), (1, (1, 1)), (1, (0, 2))], 2)
        self.assertGradient(expr.Slice(transform_T(F2), [1], {0: 0.7}))

    def test_contour(self):
        F2 = expr.Polynomial([(0.25, (4, 0)), (1, (1, 1)), (1, (0, 2))], 2)
        self.assertGradient(contour_gf(F2, [1]))

    def test_product(self):
        self.assertGradient(product_gf(transform_T(QUARTIC),
                                       expr.QuadraticForm([[2]])))

    def test_sum_and_convolution(self):
        T2 = transform_T(expr.Poly1D([0, 1, 2]))
        self.assertGradient(sum_gf(transform_T(QUARTIC), T2))
        self.assertGradient(convolution_gf(transform_T(QUARTIC), T2))

    def test_stabilize(self):
        self.assertGradient(stabilize(transform_T(QUARTIC),
                                      hyperbolic_form(1)))

    def test_fiber_diffeo(self):
        F = sum_gf(transform_T(QUARTIC), transform_T(expr.Poly1D([0, 0, 1])))
        self.assertGradient(reorder_fibers(F, [1, 0]))
        self.assertGradient(fiber_diffeo_sum_conv(F))

    def test_path_blend(self):
        G = expr.Poly1D([0, 0, 1])
        for coupling in ("published", "diagonal"):
            for t in (0.0, 0.4, 1.0):
                self.assertGradient(theorem327_path(QUARTIC, G, t, coupling))


class TestIndexTracking(unittest.TestCase):
    def test_transform_of_convex(self):
        "T of a convex polynomial has one fiber of index 1."
        self.assertEqual(meta.fiber_index(transform_T(QUARTIC)), 1)

    def test_double_transform(self):
        F = transform_T(transform_T(QUARTIC))
        self.assertEqual(F.fiber_dim, 2)
        self.assertEqual(meta.fiber_index(F), 1)

    def test_sum_of_transforms(self):
        F = sum_gf(transform_T(QUARTIC), transform_T(QUARTIC))
        self.assertEqual(meta.fiber_index(F), 2)

    def test_stabilization_adds_index(self):
        F = stabilize(transform_T(QUARTIC), hyperbolic_form(1))
        self.assertEqual(F.fiber_dim, 3)
        self.assertEqual(meta.fiber_index(F), 2)

    def test_transform_of_convolution(self):
        F = transform_T(convolution_gf(QUARTIC, QUARTIC))
        self.assertEqual(F.fiber_dim, 2)
        self.assertEqual(meta.fiber_index(F), 2)

    def test_untracked(self):
        "A polynomial with fibers and no declared index is not tracked."
        F = expr.Polynomial([(1, (1, 1)), (1, (0, 2))], 1, ("w",))
        self.assertRaises(NotTrackedError, meta.fiber_index, F)
        self.assertEqual(meta.fiber_index(F, 1), 1)
        self.assertRaises(NotTrackedError, meta.fiber_index, F, 2)

    def test_graph_index(self):
        self.assertEqual(meta.fiber_index(QUARTIC), 0)


if __name__ == "__main__":
    unittest.main()
