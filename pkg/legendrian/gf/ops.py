# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Combinators on generating functions and the equivalence moves between them.

Each constructor returns a new immutable node; arities are checked when the
node is built. The fiber-map catalog holds two entries: C{sum_conv}, which
carries F_(T1)+(T2) onto F_T(1 conv 2), and C{permute}, which reorders fiber
variables.
"""

import numpy as np

from legendrian.errors import NoStabilizationFound, PatternNotApplicable, \
                              RangeError
from legendrian.gf.expr import Contour, Convolution, FiberDiffeo, PathBlend, \
                               Poly1D, Product, Slice, Stabilize, SumOp, \
                               TransformT
from legendrian.gf.kinds import NodeKind

__all__ = ["transform_T", "slice_gf", "contour_gf", "product_gf", "sum_gf",
           "convolution_gf", "stabilize", "strip_stabilization",
           "theorem327_path", "path_endpoints", "fiber_diffeo_sum_conv",
           "sum_conv_map", "sum_conv_inverse", "reorder_fibers",
           "substitute_base", "hyperbolic_form", "zero_gf"]


def transform_T(F):
    "F_T(q; v, w) = q.v - F(v, w)."
    return TransformT(F)


def slice_gf(F, kept_base):
    "Pin the base variables outside C{kept_base} to 0."
    return Slice(F, kept_base)


def contour_gf(F, kept_base):
    "Turn the base variables outside C{kept_base} into fiber variables."
    return Contour(F, kept_base)


def substitute_base(F, index, value):
    "Pin base variable C{index} to C{value}."
    kept = [i for i in range(F.base_dim) if i != index]
    return Slice(F, kept, {index: value})


def product_gf(F1, F2):
    "F1(q1, w1) + F2(q2, w2) on the product base."
    return Product(F1, F2)


def sum_gf(F1, F2):
    "F1(q, w1) + F2(q, w2)."
    return SumOp(F1, F2)


def convolution_gf(F1, F2):
    "F1(v, w1) + F2(q - v, w2) with v a new fiber variable."
    return Convolution(F1, F2)


def zero_gf(base_dim=1):
    "The zero generating function, additive identity of the product."
    return Poly1D((0.0,), 0, base_dim)


def hyperbolic_form(n=1):
    "The form v'.V in 2n variables, used to stabilize along the F_t path."
    Q = np.zeros((2 * n, 2 * n))
    Q[:n, n:] = Q[n:, :n] = 0.5 * np.eye(n)
    return Q


###############################################################################
# Stabilization
###############################################################################

def stabilize(F, form, names=None):
    "F + u.Q.u in fresh fiber variables u."
    return Stabilize(F, form, names)


def strip_stabilization(F):
    """
    Undo a stabilization.

    Recognises an exact L{Stabilize} node, and the V.v' pattern left in the
    fiber variables of a path node at t = 0 wrapped in reordering maps.

    @raise NoStabilizationFound: on any other expression.
    """
    if F.kind == NodeKind.stabilize:
        return F.child
    if F.kind == NodeKind.fiber_diffeo and F.name == "permute":
        return strip_stabilization(F.child)
    if F.kind == NodeKind.path_blend and F.t == 0.0 and \
           F.coupling == "published":
        return TransformT(SumOp(F.left, F.right))
    raise NoStabilizationFound("%r is not a stabilization" % (F,),
                               kind=str(F.kind))


###############################################################################
# Fiber maps
###############################################################################

def reorder_fibers(F, order):
    """
    Reorder fiber variables: fiber j of the result is fiber C{order[j]} of F.
    """
    order = [int(i) for i in order]
    k = F.fiber_dim
    if sorted(order) != list(range(k)):
        raise PatternNotApplicable("%r is not a permutation of %d fibers" %
                                   (order, k), order=order)
    A = np.zeros((k, k))
    for j, i in enumerate(order):
        A[i, j] = 1.0
    names = tuple(F.fiber_names[i] for i in order)
    return FiberDiffeo(F, "permute", A, names, {"order": order})


def _sum_conv_shape(F):
    if F.kind != NodeKind.sum or F.left.kind != NodeKind.transform_t or \
           F.right.kind != NodeKind.transform_t:
        raise PatternNotApplicable("expected a sum of two transforms, got %r"
                                   % (F,), kind=str(F.kind))
    return F.base_dim, F.left.child.fiber_dim, F.right.child.fiber_dim


def sum_conv_map(v1, v2, w1=(), w2=()):
    "phi(v1, v2, w1, w2) = (v1 + v2, v1, w1, w2)."
    v1, v2 = np.asarray(v1, float), np.asarray(v2, float)
    return v1 + v2, v1, np.asarray(w1, float), np.asarray(w2, float)


def sum_conv_inverse(y, v, w1=(), w2=()):
    "Inverse of L{sum_conv_map}: (y, v, w1, w2) -> (v, y - v, w1, w2)."
    y, v = np.asarray(y, float), np.asarray(v, float)
    return v, y - v, np.asarray(w1, float), np.asarray(w2, float)


def fiber_diffeo_sum_conv(F):
    """
    Compose F = F_(T1)+(T2), fibers (v1, w1, v2, w2), with the inverse of
    phi. The result has fibers (y, v, w1, w2) and agrees pointwise with
    F_T(1 conv 2).

    @raise PatternNotApplicable: if F is not a sum of two transforms.
    """
    n, k1, k2 = _sum_conv_shape(F)
    k = F.fiber_dim
    # child fibers: v1 [0,n), w1 [n,n+k1), v2 [n+k1,2n+k1), w2 [2n+k1,k)
    # new fibers:   y [0,n), v [n,2n), w1 [2n,2n+k1), w2 [2n+k1,k)
    A = np.zeros((k, k))
    for i in range(n):
        A[i, n + i] = 1.0
        A[n + k1 + i, i] = 1.0
        A[n + k1 + i, n + i] = -1.0
    for s in range(k1):
        A[n + s, 2 * n + s] = 1.0
    for s in range(k2):
        A[2 * n + k1 + s, 2 * n + k1 + s] = 1.0
    target = TransformT(Convolution(F.left.child, F.right.child))
    return FiberDiffeo(F, "sum_conv", A, target.fiber_names)


###############################################################################
# The deformation path
###############################################################################

def theorem327_path(F1, F2, t, coupling="published"):
    """
    The family F_t joining the stabilized F_T(1+2) (t = 0) to
    F_(T1)conv(T2) (t = 1).

    @param coupling: C{"published"} for the V.(v' - t v) term, C{"diagonal"}
                     for V.(v' - v), whose contour does not depend on t;
                     at t = 0 it is the stabilization composed with the
                     shear v' -> v' - v.
    @raise RangeError: if t is outside [0, 1].
    """
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise RangeError("path parameter %r outside [0, 1]" % t, t=t)
    return PathBlend(F1, F2, t, coupling)


def path_endpoints(F1, F2):
    """
    The two endpoint constructions of L{theorem327_path}, with their fibers
    reordered to the path's layout (v, v', V, w1, w2).

    @return: (stabilized F_T(1+2), F_(T1)conv(T2))
    """
    n, k1, k2 = F1.base_dim, F1.fiber_dim, F2.fiber_dim
    rng = lambda a, b: list(range(a, b))

    # v [0,n), w1, w2, then v' and V from the stabilization
    start = Stabilize(TransformT(SumOp(F1, F2)), hyperbolic_form(n))
    w_end = n + k1 + k2
    start = reorder_fibers(start, rng(0, n) + rng(w_end, w_end + n) +
                           rng(w_end + n, w_end + 2 * n) +
                           rng(n, n + k1) + rng(n + k1, w_end))

    # u [0,n), v1 [n,2n), w1 [2n,2n+k1), v2, w2
    end = Convolution(TransformT(F1), TransformT(F2))
    v2 = 2 * n + k1
    end = reorder_fibers(end, rng(v2, v2 + n) + rng(n, 2 * n) + rng(0, n) +
                         rng(2 * n, v2) + rng(v2 + n, v2 + n + k2))
    return start, end
