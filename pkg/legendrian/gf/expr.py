# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Expression trees for generating functions F(q, w).

Every node works on the concatenated variable vector x = (q, w) of length
base_dim + fiber_dim and evaluates in batches: an array of shape (..., d)
gives values of shape (...), gradients of shape (..., d) and Hessians of
shape (..., d, d). The public L{GFExpr.eval}, L{GFExpr.grad} and
L{GFExpr.hess} take q and w separately and check their lengths.

Fiber variables carry stable names. Composite nodes reuse the names of their
children and add fresh ones for the variables they introduce.
"""

from functools import cached_property

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.interpolate import CubicHermiteSpline

from legendrian.errors import ArityError, RangeError
from legendrian.gf.kinds import NodeKind

__all__ = ["GFExpr", "Poly1D", "Polynomial", "QuadraticForm", "SampledTail",
           "TransformT", "Slice", "Contour", "Product", "SumOp",
           "Convolution", "Stabilize", "FiberDiffeo", "PathBlend",
           "FiberFunction"]

COUPLINGS = ("published", "diagonal")


def _fresh_names(names, taken):
    "Prime each name until it clashes with nothing in taken."
    taken = set(taken)
    result = []
    for name in names:
        while name in taken:
            name += "'"
        taken.add(name)
        result.append(name)
    return tuple(result)


def _vector_names(stem, n):
    if n == 1:
        return (stem,)
    return tuple("%s%d" % (stem, i + 1) for i in range(n))


def _select(columns, d):
    "Matrix picking the given coordinates out of a length-d vector."
    M = np.zeros((len(columns), d))
    for row, column in enumerate(columns):
        M[row, column] = 1.0
    return M


def _scalar(value):
    value = np.asarray(value)
    if value.ndim == 0:
        return float(value)
    return value


class GFExpr(object):
    "Base class of generating-function nodes."

    kind = None

    def __init__(self, base_dim, fiber_names):
        self.base_dim = int(base_dim)
        self.fiber_names = tuple(fiber_names)

    @property
    def fiber_dim(self):
        return len(self.fiber_names)

    @property
    def dim(self):
        return self.base_dim + self.fiber_dim

    @property
    def children(self):
        return ()

    # Batched evaluation on x = (q, w).
    def value(self, x):
        raise NotImplementedError
    def gradient(self, x):
        raise NotImplementedError
    def hessian(self, x):
        raise NotImplementedError

    def join(self, q, w=()):
        """
        Concatenate base and fiber coordinates into x, broadcasting leading
        axes.

        @raise ArityError: if the trailing lengths do not match the node.
        """
        q = np.asarray(q, dtype=float)
        w = np.asarray(w, dtype=float)
        if q.ndim == 0:
            q = q.reshape(1)
        if w.ndim == 0:
            w = w.reshape(1)
        if q.shape[-1] != self.base_dim:
            raise ArityError("expected %d base coordinates, got %d" %
                             (self.base_dim, q.shape[-1]),
                             expected=self.base_dim, got=q.shape[-1])
        if w.shape[-1] != self.fiber_dim:
            raise ArityError("expected %d fiber coordinates, got %d" %
                             (self.fiber_dim, w.shape[-1]),
                             expected=self.fiber_dim, got=w.shape[-1])
        lead = np.broadcast_shapes(q.shape[:-1], w.shape[:-1])
        return np.concatenate(
            [np.broadcast_to(q, lead + (self.base_dim,)),
             np.broadcast_to(w, lead + (self.fiber_dim,))], axis=-1)

    def eval(self, q, w=()):
        "F(q, w)."
        return _scalar(self.value(self.join(q, w)))

    def grad(self, q, w=()):
        "The pair (grad_q F, grad_w F)."
        g = self.gradient(self.join(q, w))
        return g[..., :self.base_dim], g[..., self.base_dim:]

    def hess(self, q, w=()):
        "Hessian over (q, w), base coordinates first."
        return self.hessian(self.join(q, w))

    @cached_property
    def structure(self):
        "Structurally tracked simple part, bound and indices."
        from legendrian.gf import meta
        return meta.structure_of(self)

    @property
    def as_meta(self):
        from legendrian.gf import meta
        return meta.as_decomposition(self)


###############################################################################
# Leaves
###############################################################################

class Poly1D(GFExpr):
    """
    Polynomial in a single base variable, coefficients in ascending order:
    C{Poly1D((0, 3, 1))} is q^2 + 3q.
    """

    kind = NodeKind.poly1d

    def __init__(self, coeffs, var=0, base_dim=1):
        GFExpr.__init__(self, base_dim, ())
        if not 0 <= var < base_dim:
            raise ArityError("variable %d out of range" % var, var=var,
                             base_dim=base_dim)
        c = np.trim_zeros(np.asarray(coeffs, dtype=float), "b")
        if not len(c):
            c = np.zeros(1)
        self.var = var
        self.coeffs = tuple(float(a) for a in c)
        self._c = c
        self._d1 = npoly.polyder(c)
        self._d2 = npoly.polyder(c, 2)

    def __repr__(self):
        if self.base_dim == 1:
            return "Poly1D(%r)" % (self.coeffs,)
        return "Poly1D(%r, var=%d, base_dim=%d)" % \
                   (self.coeffs, self.var, self.base_dim)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def value(self, x):
        return npoly.polyval(np.asarray(x, float)[..., self.var], self._c)

    def gradient(self, x):
        x = np.asarray(x, float)
        g = np.zeros(x.shape)
        g[..., self.var] = npoly.polyval(x[..., self.var], self._d1)
        return g

    def hessian(self, x):
        x = np.asarray(x, float)
        h = np.zeros(x.shape + (x.shape[-1],))
        h[..., self.var, self.var] = npoly.polyval(x[..., self.var], self._d2)
        return h


def _monomials(x, coefs, exps):
    return np.prod(x[..., None, :] ** exps, axis=-1) @ coefs


def _derive(coefs, exps, i):
    coefs = coefs * exps[:, i]
    exps = exps.copy()
    exps[:, i] = np.maximum(exps[:, i] - 1, 0)
    return coefs, exps


class Polynomial(GFExpr):
    """
    Sparse polynomial in all the variables (q, w).

    @param terms: (coefficient, exponents) pairs, or a dict mapping exponent
                  tuples to coefficients; exponents list one power per
                  variable, base variables first.
    @type  index: int or None
    @param index: declared Morse index of the fiber simple part.
    @type  global_index: int or None
    @param global_index: declared Morse index of the simple part over all
                         of (q, w).
    """

    kind = NodeKind.polynomial

    def __init__(self, terms, base_dim, fiber_names=(), index=None,
                 global_index=None):
        GFExpr.__init__(self, base_dim, fiber_names)
        if isinstance(terms, dict):
            terms = [(c, e) for (e, c) in terms.items()]
        d = self.dim
        coefs, exps = [], []
        for coef, powers in terms:
            powers = tuple(int(p) for p in powers)
            if len(powers) != d or (powers and min(powers) < 0):
                raise ArityError("monomial %r does not fit %d variables" %
                                 (powers, d), powers=powers, dim=d)
            coefs.append(float(coef))
            exps.append(powers)
        if not coefs:
            coefs, exps = [0.0], [(0,) * d]
        self.terms = tuple(zip(coefs, exps))
        self.index = index
        self.global_index = global_index
        self._c = np.array(coefs)
        self._e = np.array(exps, dtype=int).reshape(len(coefs), d)
        self._d1 = [_derive(self._c, self._e, i) for i in range(d)]
        self._d2 = [[_derive(ci, ei, j) for j in range(d)]
                    for (ci, ei) in self._d1]

    def __repr__(self):
        return "Polynomial(%r, base_dim=%d, fiber_names=%r)" % \
                   (self.terms, self.base_dim, self.fiber_names)

    def value(self, x):
        return _monomials(np.asarray(x, float), self._c, self._e)

    def gradient(self, x):
        x = np.asarray(x, float)
        return np.stack([_monomials(x, c, e) for (c, e) in self._d1], -1)

    def hessian(self, x):
        x = np.asarray(x, float)
        rows = [np.stack([_monomials(x, c, e) for (c, e) in row], -1)
                for row in self._d2]
        return np.stack(rows, -2)


class QuadraticForm(GFExpr):
    "The form w.A.w in the fiber variables; the base variables are unused."

    kind = NodeKind.quadratic_form

    def __init__(self, matrix, base_dim=1, fiber_names=None):
        A = np.atleast_2d(np.asarray(matrix, dtype=float))
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ArityError("quadratic form needs a square matrix",
                             shape=A.shape)
        if fiber_names is None:
            fiber_names = _vector_names("w", A.shape[0])
        GFExpr.__init__(self, base_dim, fiber_names)
        if len(self.fiber_names) != A.shape[0]:
            raise ArityError("one name per fiber variable required")
        self.matrix = (A + A.T) / 2

    def __repr__(self):
        return "QuadraticForm(%r)" % (self.matrix.tolist(),)

    def value(self, x):
        w = np.asarray(x, float)[..., self.base_dim:]
        return np.einsum("...i,ij,...j->...", w, self.matrix, w)

    def gradient(self, x):
        x = np.asarray(x, float)
        g = np.zeros(x.shape)
        g[..., self.base_dim:] = 2 * x[..., self.base_dim:] @ self.matrix
        return g

    def hessian(self, x):
        x = np.asarray(x, float)
        h = np.zeros(x.shape + (x.shape[-1],))
        h[..., self.base_dim:, self.base_dim:] = 2 * self.matrix
        return h


class SampledTail(GFExpr):
    """
    A grid-sampled function of one base variable.

    Inside the grid it is the cubic Hermite interpolant of the samples, with
    centred-difference slopes at interior nodes and the tail slopes at the
    two end nodes; outside it is the tail polynomial.
    """

    kind = NodeKind.sampled_tail

    def __init__(self, grid):
        GFExpr.__init__(self, 1, ())
        if grid.mask.any():
            raise RangeError("sampled generating functions must be finite "
                             "on their grid")
        self.grid = grid
        x, y = grid.x, grid.values
        slopes = np.gradient(y, grid.step)
        if grid.tail.kind == "poly":
            slopes[0] = grid.tail.evaluate("left", x[0], 1)
            slopes[-1] = grid.tail.evaluate("right", x[-1], 1)
        spline = CubicHermiteSpline(x, y, slopes)
        self._pieces = (spline, spline.derivative(1), spline.derivative(2))

    def __repr__(self):
        return "SampledTail(%r)" % (self.grid,)

    def _piecewise(self, x, order):
        t = np.asarray(x, float)[..., 0]
        out = np.asarray(self._pieces[order](t), dtype=float)
        for side, where in (("left", t < self.grid.x0),
                            ("right", t > self.grid.x_end)):
            if where.any():
                out = np.where(where, self._tail(side, t, order), out)
        return out

    def _tail(self, side, t, order):
        if self.grid.tail.kind == "domain":
            raise RangeError("sampled function evaluated outside its grid "
                             "without a tail model", side=side)
        return self.grid.tail.evaluate(side, t, order)

    def value(self, x):
        return self._piecewise(x, 0)

    def gradient(self, x):
        return self._piecewise(x, 1)[..., None]

    def hessian(self, x):
        return self._piecewise(x, 2)[..., None, None]


###############################################################################
# Composite nodes
###############################################################################

class _Composite(GFExpr):
    """
    A weighted sum of children evaluated at affine images of x, plus a
    quadratic term in x:

        F(x) = sum_i c_i F_i(M_i x + b_i) + x.S.x / 2
    """

    def __init__(self, base_dim, fiber_names, terms, bilinear=None):
        GFExpr.__init__(self, base_dim, fiber_names)
        d = self.dim
        pulled = []
        for coef, child, M, b in terms:
            M = np.asarray(M, dtype=float)
            if M.shape != (child.dim, d):
                raise ArityError("internal arity mismatch", shape=M.shape,
                                 child=child.dim, dim=d)
            if b is None:
                b = np.zeros(child.dim)
            pulled.append((float(coef), child, M, np.asarray(b, float)))
        self._terms = tuple(pulled)
        if bilinear is not None:
            bilinear = np.asarray(bilinear, dtype=float)
            bilinear = (bilinear + bilinear.T) / 2
        self._bilinear = bilinear

    def value(self, x):
        x = np.asarray(x, float)
        total = np.zeros(x.shape[:-1])
        for coef, child, M, b in self._terms:
            total = total + coef * child.value(x @ M.T + b)
        if self._bilinear is not None:
            total = total + 0.5 * np.einsum("...i,ij,...j->...",
                                            x, self._bilinear, x)
        return total

    def gradient(self, x):
        x = np.asarray(x, float)
        g = np.zeros(x.shape)
        for coef, child, M, b in self._terms:
            g = g + coef * (child.gradient(x @ M.T + b) @ M)
        if self._bilinear is not None:
            g = g + x @ self._bilinear
        return g

    def hessian(self, x):
        x = np.asarray(x, float)
        h = np.zeros(x.shape + (x.shape[-1],))
        for coef, child, M, b in self._terms:
            h = h + coef * (M.T @ child.hessian(x @ M.T + b) @ M)
        if self._bilinear is not None:
            h = h + self._bilinear
        return h


class TransformT(_Composite):
    "F_T(q; v, w) = q.v - F(v, w)."

    kind = NodeKind.transform_t

    def __init__(self, child):
        n, k = child.base_dim, child.fiber_dim
        names = _fresh_names(_vector_names("v", n), child.fiber_names)
        d = 2 * n + k
        S = np.zeros((d, d))
        for i in range(n):
            S[i, n + i] = S[n + i, i] = 1.0
        _Composite.__init__(self, n, names + child.fiber_names,
                            [(-1.0, child, _select(range(n, d), d), None)], S)
        self.child = child

    children = property(lambda self: (self.child,))

    def __repr__(self):
        return "TransformT(%r)" % (self.child,)


def _check_kept(child, kept):
    kept = tuple(sorted(set(int(i) for i in kept)))
    if not kept or len(kept) >= child.base_dim or \
           kept[0] < 0 or kept[-1] >= child.base_dim:
        raise ArityError("kept base variables must be a proper nonempty "
                         "subset of %d" % child.base_dim, kept=kept,
                         base_dim=child.base_dim)
    demoted = tuple(i for i in range(child.base_dim) if i not in kept)
    return kept, demoted


class Slice(_Composite):
    """
    F_sigma(q_kept; w) = F(q_kept, q_demoted = values; w). The demoted
    variables are pinned to 0 unless C{values} says otherwise.
    """

    kind = NodeKind.slice

    def __init__(self, child, kept, values=None):
        kept, demoted = _check_kept(child, kept)
        values = dict((int(i), float(v)) for (i, v) in (values or {}).items())
        n, k = len(kept), child.fiber_dim
        d = n + k
        M = np.zeros((child.dim, d))
        b = np.zeros(child.dim)
        for j, i in enumerate(kept):
            M[i, j] = 1.0
        for i in demoted:
            b[i] = values.get(i, 0.0)
        for s in range(k):
            M[child.base_dim + s, n + s] = 1.0
        _Composite.__init__(self, n, child.fiber_names,
                            [(1.0, child, M, b)])
        self.child = child
        self.kept = kept
        self.demoted = demoted
        self.values = dict((i, values.get(i, 0.0)) for i in demoted)

    children = property(lambda self: (self.child,))

    def __repr__(self):
        return "Slice(%r, kept=%r)" % (self.child, self.kept)


class Contour(_Composite):
    "F_kappa(q_kept; q_demoted, w) = F(q, w): demoted base becomes fiber."

    kind = NodeKind.contour

    def __init__(self, child, kept):
        kept, demoted = _check_kept(child, kept)
        n, m, k = len(kept), len(demoted), child.fiber_dim
        d = n + m + k
        names = _fresh_names(["q%d" % (i + 1) for i in demoted],
                             child.fiber_names)
        M = np.zeros((child.dim, d))
        for j, i in enumerate(kept):
            M[i, j] = 1.0
        for t, i in enumerate(demoted):
            M[i, n + t] = 1.0
        for s in range(k):
            M[child.base_dim + s, n + m + s] = 1.0
        _Composite.__init__(self, n, names + child.fiber_names,
                            [(1.0, child, M, None)])
        self.child = child
        self.kept = kept
        self.demoted = demoted

    children = property(lambda self: (self.child,))

    def __repr__(self):
        return "Contour(%r, kept=%r)" % (self.child, self.kept)


class Product(_Composite):
    "F(q1, q2; w1, w2) = F1(q1, w1) + F2(q2, w2)."

    kind = NodeKind.product

    def __init__(self, left, right):
        n1, n2 = left.base_dim, right.base_dim
        k1, k2 = left.fiber_dim, right.fiber_dim
        d = n1 + n2 + k1 + k2
        names = left.fiber_names + \
                _fresh_names(right.fiber_names, left.fiber_names)
        n = n1 + n2
        M1 = _select(list(range(n1)) + list(range(n, n + k1)), d)
        M2 = _select(list(range(n1, n)) + list(range(n + k1, d)), d)
        _Composite.__init__(self, n, names,
                            [(1.0, left, M1, None), (1.0, right, M2, None)])
        self.left = left
        self.right = right

    children = property(lambda self: (self.left, self.right))

    def __repr__(self):
        return "Product(%r, %r)" % (self.left, self.right)


def _check_same_base(left, right):
    if left.base_dim != right.base_dim:
        raise ArityError("base dimensions differ: %d and %d" %
                         (left.base_dim, right.base_dim),
                         left=left.base_dim, right=right.base_dim)
    return left.base_dim


class SumOp(_Composite):
    "F(q; w1, w2) = F1(q, w1) + F2(q, w2)."

    kind = NodeKind.sum

    def __init__(self, left, right):
        n = _check_same_base(left, right)
        k1, k2 = left.fiber_dim, right.fiber_dim
        d = n + k1 + k2
        names = left.fiber_names + \
                _fresh_names(right.fiber_names, left.fiber_names)
        M1 = _select(list(range(n)) + list(range(n, n + k1)), d)
        M2 = _select(list(range(n)) + list(range(n + k1, d)), d)
        _Composite.__init__(self, n, names,
                            [(1.0, left, M1, None), (1.0, right, M2, None)])
        self.left = left
        self.right = right

    children = property(lambda self: (self.left, self.right))

    def __repr__(self):
        return "SumOp(%r, %r)" % (self.left, self.right)


class Convolution(_Composite):
    "F(q; v, w1, w2) = F1(v, w1) + F2(q - v, w2)."

    kind = NodeKind.convolution

    def __init__(self, left, right):
        n = _check_same_base(left, right)
        k1, k2 = left.fiber_dim, right.fiber_dim
        d = 2 * n + k1 + k2
        names1 = left.fiber_names + \
                 _fresh_names(right.fiber_names, left.fiber_names)
        names = _fresh_names(_vector_names("v", n), names1) + names1
        M1 = _select(list(range(n, 2 * n)) + list(range(2 * n, 2 * n + k1)),
                     d)
        M2 = np.zeros((n + k2, d))
        for i in range(n):
            M2[i, i] = 1.0
            M2[i, n + i] = -1.0
        for s in range(k2):
            M2[n + s, 2 * n + k1 + s] = 1.0
        _Composite.__init__(self, n, names,
                            [(1.0, left, M1, None), (1.0, right, M2, None)])
        self.left = left
        self.right = right

    children = property(lambda self: (self.left, self.right))

    def __repr__(self):
        return "Convolution(%r, %r)" % (self.left, self.right)


class Stabilize(_Composite):
    "F(q; w, u) = F_child(q, w) + u.Q.u with Q nondegenerate."

    kind = NodeKind.stabilize

    def __init__(self, child, form, names=None):
        Q = np.atleast_2d(np.asarray(form, dtype=float))
        if Q.ndim != 2 or Q.shape[0] != Q.shape[1]:
            raise ArityError("stabilizing form must be square", shape=Q.shape)
        Q = (Q + Q.T) / 2
        if np.min(np.abs(np.linalg.eigvalsh(Q))) < 1e-12:
            raise RangeError("stabilizing form is degenerate",
                             form=Q.tolist())
        m = Q.shape[0]
        if names is None:
            names = _vector_names("u", m)
        names = _fresh_names(names, child.fiber_names)
        c = child.dim
        d = c + m
        S = np.zeros((d, d))
        S[c:, c:] = 2 * Q
        _Composite.__init__(self, child.base_dim, child.fiber_names + names,
                            [(1.0, child, _select(range(c), d), None)], S)
        self.child = child
        self.form = Q

    children = property(lambda self: (self.child,))

    def __repr__(self):
        return "Stabilize(%r, %r)" % (self.child, self.form.tolist())


class FiberDiffeo(_Composite):
    """
    F(q; w) = F_child(q, A w) for an invertible linear map A of the fibers,
    built by one of the catalog constructors in L{legendrian.gf.ops}.

    @param name: catalog entry the map comes from.
    @param params: catalog parameters, kept for serialization.
    """

    kind = NodeKind.fiber_diffeo

    def __init__(self, child, name, matrix, fiber_names, params=None):
        A = np.asarray(matrix, dtype=float)
        k = child.fiber_dim
        if A.shape != (k, k):
            raise ArityError("fiber map must be %dx%d" % (k, k),
                             shape=A.shape)
        if abs(np.linalg.det(A)) < 1e-12:
            raise RangeError("fiber map is not invertible", name=name)
        n = child.base_dim
        M = np.zeros((child.dim, child.dim))
        M[:n, :n] = np.eye(n)
        M[n:, n:] = A
        _Composite.__init__(self, n, fiber_names, [(1.0, child, M, None)])
        self.child = child
        self.name = name
        self.matrix = A
        self.params = dict(params or {})

    children = property(lambda self: (self.child,))

    def __repr__(self):
        return "FiberDiffeo(%r, %r)" % (self.child, self.name)


class PathBlend(_Composite):
    """
    The deformation between the stabilized F_T(1+2) (t = 0) and
    F_(T1)conv(T2) (t = 1):

        F_t(q; v, v', V, w1, w2) = q.v - F1((1-t) v + t v', w1)
                                   - F2(v, w2) + V.(v' - s v)

    with s = t for the C{"published"} coupling and s = 1 for the
    C{"diagonal"} one. Only the diagonal coupling keeps the contour fixed
    for 0 < t < 1: the published one pins v' = t v at critical points, so
    F1 is evaluated at (1 - t + t^2) v there.
    """

    kind = NodeKind.path_blend

    def __init__(self, left, right, t, coupling="published"):
        n = _check_same_base(left, right)
        t = float(t)
        if not 0.0 <= t <= 1.0:
            raise RangeError("path parameter %r outside [0, 1]" % t, t=t)
        if coupling not in COUPLINGS:
            raise RangeError("unknown path coupling %r" % coupling,
                             coupling=coupling)
        shear = t if coupling == "published" else 1.0
        k1, k2 = left.fiber_dim, right.fiber_dim
        d = 4 * n + k1 + k2
        inner = left.fiber_names + \
                _fresh_names(right.fiber_names, left.fiber_names)
        lead = _vector_names("v", n) + _vector_names("v'", n) + \
               _vector_names("V", n)
        names = _fresh_names(lead, inner) + inner
        v, vp, V, w1 = n, 2 * n, 3 * n, 4 * n
        w2 = w1 + k1
        M1 = np.zeros((n + k1, d))
        for i in range(n):
            M1[i, v + i] = 1.0 - t
            M1[i, vp + i] = t
        for s in range(k1):
            M1[n + s, w1 + s] = 1.0
        M2 = _select(list(range(v, v + n)) + list(range(w2, w2 + k2)), d)
        S = np.zeros((d, d))
        for i in range(n):
            S[i, v + i] = S[v + i, i] = 1.0
            S[V + i, vp + i] = S[vp + i, V + i] = 1.0
            S[V + i, v + i] = S[v + i, V + i] = -shear
        _Composite.__init__(self, n, names,
                            [(-1.0, left, M1, None), (-1.0, right, M2, None)],
                            S)
        self.left = left
        self.right = right
        self.t = t
        self.coupling = coupling

    children = property(lambda self: (self.left, self.right))

    def __repr__(self):
        return "PathBlend(%r, %r, t=%r, coupling=%r)" % \
                   (self.left, self.right, self.t, self.coupling)


class FiberFunction(object):
    """
    The fiber function w -> F(q, w) of a node at a fixed base point.

    Functions of the fiber variables alone are nodes with base_dim 0, and
    are wrapped with an empty q.
    """

    def __init__(self, F, q=()):
        self.F = F
        q = np.asarray(q, dtype=float).reshape(-1)
        if len(q) != F.base_dim:
            raise ArityError("expected %d base coordinates, got %d" %
                             (F.base_dim, len(q)), expected=F.base_dim,
                             got=len(q))
        self.q = q

    @property
    def fiber_dim(self):
        return self.F.fiber_dim

    def __repr__(self):
        return "FiberFunction(%r, q=%r)" % (self.F, self.q.tolist())

    def _x(self, w):
        w = np.asarray(w, dtype=float)
        if self.F.base_dim == 0:
            if w.shape[-1:] != (self.fiber_dim,):
                raise ArityError("expected %d fiber coordinates" %
                                 self.fiber_dim)
            return w
        return self.F.join(self.q, w)

    def __call__(self, w):
        return _scalar(self.F.value(self._x(w)))

    def gradient(self, w):
        return self.F.gradient(self._x(w))[..., self.F.base_dim:]

    def hessian(self, w):
        n = self.F.base_dim
        return self.F.hessian(self._x(w))[..., n:, n:]
