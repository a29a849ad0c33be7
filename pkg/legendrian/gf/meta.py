# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Structural tracking of almost-simple decompositions F = G + H.

Every node gets a L{Structure}: a simple part G (itself a L{GFExpr}, or
None), a bound B on the gradient of F - G (math.inf when the simple part
only dominates F - G at infinity), the Morse index of G(q, .) in the fiber
variables, and the Morse index of G over all the variables (q, w). The last
one is what lets fiber indices propagate through the transformation T, the
contour and the convolution.

Rules are looked up by node kind in L{structure_rules}.
"""

import math

import numpy as np

from legendrian.errors import NotTrackedError
from legendrian.gf import expr
from legendrian.gf.kinds import NodeKind
from legendrian.util import logger

__all__ = ["ASMeta", "Structure", "structure_of", "as_decomposition",
           "fiber_index", "global_index", "negative_index",
           "structure_rules"]


class ASMeta(object):
    "Almost-simple decomposition record of a node with fibers."

    __slots__ = ("simple", "bound", "index")

    def __init__(self, simple, bound, index):
        self.simple = simple
        self.bound = bound
        self.index = index

    def __repr__(self):
        return "ASMeta(index=%d, bound=%g, simple=%r)" % \
                   (self.index, self.bound, self.simple)


class Structure(object):
    """
    Structural data of one node. C{perturbation} marks nodes whose whole
    gradient is bounded, so that their simple part is zero.
    """

    __slots__ = ("simple", "bound", "fiber_index", "global_index",
                 "perturbation")

    def __init__(self, simple=None, bound=math.inf, fiber_index=None,
                 global_index=None, perturbation=False):
        self.simple = simple
        self.bound = bound
        self.fiber_index = fiber_index
        self.global_index = global_index
        self.perturbation = perturbation

    def __repr__(self):
        return "Structure(fiber_index=%r, global_index=%r, bound=%r)" % \
                   (self.fiber_index, self.global_index, self.bound)


def negative_index(form):
    "Number of negative eigenvalues of a symmetric matrix."
    return int(np.sum(np.linalg.eigvalsh(np.asarray(form, float)) < 0))


def _add(a, b):
    if a is None or b is None:
        return None
    return a + b


def _simple(node_type, *args):
    if any(arg is None for arg in args):
        return None
    return node_type(*args)


###############################################################################
# Rules per node kind
###############################################################################

def _poly1d(F):
    c = np.asarray(F.coeffs)
    degree = F.degree
    if degree <= 1:
        slope = abs(c[1]) if degree == 1 else 0.0
        zero = expr.Poly1D((0.0,), F.var, F.base_dim)
        return Structure(zero, slope, 0, None, perturbation=True)
    if degree % 2:
        return Structure()
    lead = c[-1]
    g = np.zeros(degree + 1)
    g[-1] = lead
    if degree > 2:
        g[2] = lead
    simple = expr.Poly1D(g, F.var, F.base_dim)
    rest = c - g
    rest_degree = len(np.trim_zeros(rest, "b")) - 1
    bound = abs(rest[1]) if rest_degree <= 1 else math.inf
    if F.base_dim != 1:
        return Structure(simple, bound, 0, None)
    return Structure(simple, bound, 0, 0 if lead > 0 else 1)


def _polynomial(F):
    index = F.index if F.fiber_dim else 0
    return Structure(None, math.inf, index, F.global_index)


def _quadratic_form(F):
    return Structure(F, 0.0, negative_index(F.matrix),
                     negative_index(F.matrix) if F.base_dim == 0 else None)


def _sampled_tail(F):
    tail = F.grid.tail
    index = tail.index
    if index is None and tail.kind == "poly":
        growth = (tail.growth("left"), tail.growth("right"))
        if growth == ("superlinear", "superlinear"):
            index = 0
    return Structure(None, math.inf, 0, index)


def _transform_t(F):
    s = F.child.structure
    n, k = F.base_dim, F.child.fiber_dim
    fiber = None if s.global_index is None else n + k - s.global_index
    if k == 0:
        glob = n
    else:
        glob = None if s.fiber_index is None else n + k - s.fiber_index
    if s.perturbation:
        fiber = glob = None
    return Structure(_simple(expr.TransformT, s.simple), s.bound, fiber, glob)


def _slice(F):
    s = F.child.structure
    glob = None
    if s.global_index == 0:
        glob = 0
    elif s.global_index is not None and s.global_index == F.child.dim:
        glob = F.dim
    simple = None
    if s.simple is not None:
        simple = expr.Slice(s.simple, F.kept, F.values)
    return Structure(simple, s.bound, s.fiber_index, glob, s.perturbation)


def _contour(F):
    s = F.child.structure
    fiber = None
    if s.global_index == 0:
        fiber = 0
    elif s.global_index is not None and s.global_index == F.child.dim:
        fiber = F.fiber_dim
    simple = None
    if s.simple is not None:
        simple = expr.Contour(s.simple, F.kept)
    return Structure(simple, s.bound, fiber, s.global_index)


def _product(F):
    a, b = F.left.structure, F.right.structure
    glob = None
    if not (a.perturbation or b.perturbation):
        glob = _add(a.global_index, b.global_index)
    return Structure(_simple(expr.Product, a.simple, b.simple),
                     a.bound + b.bound, _add(a.fiber_index, b.fiber_index),
                     glob)


def _sum(F):
    a, b = F.left.structure, F.right.structure
    simple = _simple(expr.SumOp, a.simple, b.simple)
    bound = a.bound + b.bound
    fiber = _add(a.fiber_index, b.fiber_index)
    if a.perturbation and b.perturbation:
        return Structure(simple, bound, fiber, None, perturbation=True)
    if a.perturbation and F.left.fiber_dim == 0:
        return Structure(simple, bound, fiber, b.global_index)
    if b.perturbation and F.right.fiber_dim == 0:
        return Structure(simple, bound, fiber, a.global_index)
    glob = None
    if a.global_index == 0 and b.global_index == 0:
        glob = 0
    elif a.global_index == F.left.dim and b.global_index == F.right.dim:
        glob = F.dim
    return Structure(simple, bound, fiber, glob)


def _convolution(F):
    a, b = F.left.structure, F.right.structure
    simple = _simple(expr.Convolution, a.simple, b.simple)
    bound = a.bound + b.bound
    if a.perturbation or b.perturbation:
        return Structure(simple, bound, None, None)
    glob = _add(a.global_index, b.global_index)
    fiber = None
    if a.global_index == 0 and b.global_index == 0:
        fiber = 0
    elif a.global_index == F.left.dim and b.global_index == F.right.dim:
        fiber = F.fiber_dim
    elif F.left.kind == NodeKind.transform_t and \
             F.right.kind == NodeKind.transform_t:
        # (T1) conv (T2): a hyperbolic pair per base variable, and minus the
        # sum of the inner children on the diagonal.
        inner = expr.SumOp(F.left.child, F.right.child).structure
        if inner.global_index is not None:
            n = F.base_dim
            fiber = 2 * n + F.left.child.fiber_dim + \
                    F.right.child.fiber_dim - inner.global_index
    return Structure(simple, bound, fiber, glob)


def _stabilize(F):
    s = F.child.structure
    neg = negative_index(F.form)
    simple = None
    if s.simple is not None:
        simple = expr.Stabilize(s.simple, F.form, F.fiber_names[-len(F.form):])
    return Structure(simple, s.bound, _add(s.fiber_index, neg),
                     _add(s.global_index, neg))


def _fiber_diffeo(F):
    s = F.child.structure
    simple = None
    if s.simple is not None:
        simple = expr.FiberDiffeo(s.simple, F.name, F.matrix, F.fiber_names,
                                  F.params)
    bound = s.bound * np.linalg.norm(F.matrix, 2)
    return Structure(simple, bound, s.fiber_index, s.global_index)


def _path_blend(F):
    n = F.base_dim
    form = np.zeros((2 * n, 2 * n))
    form[:n, n:] = form[n:, :n] = 0.5 * np.eye(n)
    start = expr.Stabilize(expr.TransformT(expr.SumOp(F.left, F.right)), form)
    s = start.structure
    a, b = F.left.structure, F.right.structure
    simple = None
    if a.simple is not None and b.simple is not None:
        simple = expr.PathBlend(a.simple, b.simple, F.t, F.coupling)
    return Structure(simple, a.bound + b.bound, s.fiber_index, s.global_index)


structure_rules = {
    NodeKind.poly1d:         _poly1d,
    NodeKind.polynomial:     _polynomial,
    NodeKind.quadratic_form: _quadratic_form,
    NodeKind.sampled_tail:   _sampled_tail,
    NodeKind.transform_t:    _transform_t,
    NodeKind.slice:          _slice,
    NodeKind.contour:        _contour,
    NodeKind.product:        _product,
    NodeKind.sum:            _sum,
    NodeKind.convolution:    _convolution,
    NodeKind.stabilize:      _stabilize,
    NodeKind.fiber_diffeo:   _fiber_diffeo,
    NodeKind.path_blend:     _path_blend,
}


def structure_of(F):
    "Compute the L{Structure} of a node from its children's."
    s = structure_rules[F.kind](F)
    if s.fiber_index is not None and not 0 <= s.fiber_index <= F.fiber_dim:
        logger.warning("fiber index %d out of range for %r; not tracked",
                       s.fiber_index, F)
        s.fiber_index = None
    if s.global_index is not None and not 0 <= s.global_index <= F.dim:
        s.global_index = None
    return s


###############################################################################
# Public queries
###############################################################################

def as_decomposition(F):
    """
    The tracked almost-simple decomposition of F, as an L{ASMeta}.

    @return: None when F has no fiber variables or when the index is not
             tracked.
    """
    if F.fiber_dim == 0:
        return None
    s = F.structure
    if s.fiber_index is None:
        return None
    return ASMeta(s.simple, s.bound, s.fiber_index)


def fiber_index(F, supplied=None):
    """
    Morse index of the fiber simple part: C{supplied} if given, else the
    tracked one.

    @raise NotTrackedError: if neither is available.
    """
    if supplied is not None:
        supplied = int(supplied)
        if not 0 <= supplied <= F.fiber_dim:
            raise NotTrackedError("supplied index %d outside [0, %d]" %
                                  (supplied, F.fiber_dim), index=supplied,
                                  fiber_dim=F.fiber_dim)
        return supplied
    index = F.structure.fiber_index if F.fiber_dim else 0
    if index is None:
        raise NotTrackedError("index of %r is not tracked; supply it" % (F,))
    return index


def global_index(F):
    "Tracked Morse index of the simple part over (q, w), or None."
    return F.structure.global_index
