# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Discrete convex analysis on L{GridFunction}s.

The Legendre-Fenchel transform uses the lower convex hull of the samples:
the conjugate at slope p is attained at the first hull vertex whose right
edge is at least as steep as p, so a sorted slope grid is matched against
the hull edges in one merge. Polynomial tails contribute their own supremum
in closed form. A supremum attained at an end of the grid where the function
has no tail is not trusted, and the entry is masked as +infinity.
"""

import numpy as np
from numpy.polynomial import polynomial as npoly
from scipy.optimize import brentq

from legendrian.convex.grid import GridFunction, SIDES, TailModel
from legendrian.errors import ConjugateNotFiniteError, NotSimpleError, \
                              RangeError
from legendrian.util import logger

__all__ = ["lf_transform", "inf_conv", "biconjugate", "legendre_simple",
           "fenchel_young_gap", "lower_hull", "LegendreTransform",
           "CONJUGATE_METHODS", "INF_CONV_METHODS"]

CONJUGATE_METHODS = ("llt", "brute")
INF_CONV_METHODS = ("brute", "convex")
_CHUNK = 1 << 22


def _grid_of(nodes, like):
    "(x0, step, count) of a uniform grid given as nodes, or of C{like}."
    if nodes is None:
        return like.x0, like.step, len(like)
    if isinstance(nodes, GridFunction):
        return nodes.x0, nodes.step, len(nodes)
    g = GridFunction.from_nodes(nodes, np.zeros(len(nodes)))
    return g.x0, g.step, len(g)


def lower_hull(x, y):
    "Indices of the lower convex hull of points sorted by x."
    hull = []
    for i in range(len(x)):
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            if (y[b] - y[a]) * (x[i] - x[a]) >= (y[i] - y[a]) * (x[b] - x[a]):
                hull.pop()
            else:
                break
        hull.append(i)
    return np.array(hull, dtype=int)


def _check_tails(tail):
    bad = [side for side in SIDES if tail.growth(side) == "concave"]
    if tail.index not in (None, 0):
        bad = list(SIDES)
    if bad:
        raise ConjugateNotFiniteError(
            "conjugate is not finite: tail of index %r on side(s) %s" %
            (tail.index, ", ".join(bad)), sides=bad, index=tail.index)


def _tail_sup(tail, side, edge, p):
    "sup of p v - f(v) over the tail on one side of the grid edge."
    c = tail.coefficients(side)
    out = p * edge - npoly.polyval(edge, c)
    growth = tail.growth(side)
    if growth == "linear":
        slope = c[1] if len(c) > 1 else 0.0
        beyond = p > slope if side == "right" else p < slope
        out[beyond] = np.inf
        return out
    dc = npoly.polyder(c)
    for i, pi in enumerate(p):
        e = dc.copy()
        e[0] -= pi
        roots = npoly.polyroots(e)
        roots = roots[np.abs(roots.imag) < 1e-9].real
        roots = roots[roots >= edge] if side == "right" else \
                roots[roots <= edge]
        if len(roots):
            out[i] = max(out[i], np.max(pi * roots - npoly.polyval(roots, c)))
    return out


def _argmax_llt(x, y, p):
    """
    Conjugate values and argmax positions in x via the hull merge. The
    slopes C{p} are ascending, so one pointer walks the hull edges once.
    """
    hull = lower_hull(x, y)
    hx, hy = x[hull], y[hull]
    slopes = np.diff(hy) / np.diff(hx)
    j = np.empty(len(p), dtype=int)
    k = 0
    for i, pi in enumerate(p):
        while k < len(slopes) and slopes[k] < pi:
            k += 1
        j[i] = k
    return p * hx[j] - hy[j], hull[j]


def _argmax_brute(x, y, p):
    values = np.empty(len(p))
    where = np.empty(len(p), dtype=int)
    rows = max(1, _CHUNK // max(len(x), 1))
    for start in range(0, len(p), rows):
        block = p[start:start + rows, None] * x[None, :] - y[None, :]
        where[start:start + rows] = np.argmax(block, axis=1)
        values[start:start + rows] = block.max(axis=1)
    return values, where


def lf_transform(f, p_grid=None, method="llt"):
    """
    The Legendre-Fenchel transform f*(p) = sup_v (p v - f(v)) on a slope
    grid.

    @param p_grid: uniform slope nodes; the grid of f if None.
    @param method: C{"llt"} (hull merge) or C{"brute"} (all pairs).
    @raise ConjugateNotFiniteError: if a tail has no affine minorant.
    @rtype: L{GridFunction}, with masked +inf entries and a domain tail.
    """
    if method not in CONJUGATE_METHODS:
        raise RangeError("unknown conjugate method %r" % method,
                         method=method)
    _check_tails(f.tail)
    p0, pstep, count = _grid_of(p_grid, f)
    p = p0 + pstep * np.arange(count)
    x, y = f.finite()
    if len(x) < 2:
        raise RangeError("conjugate needs at least two finite samples")
    search = _argmax_llt if method == "llt" else _argmax_brute
    values, where = search(x, y, p)
    mask = np.zeros(count, dtype=bool)
    if f.tail.kind == "domain":
        mask |= (where == 0) | (where == len(x) - 1)
    else:
        for side, edge in (("left", f.x0), ("right", f.x_end)):
            values = np.maximum(values, _tail_sup(f.tail, side, edge, p))
        mask |= ~np.isfinite(values)
    if mask.any():
        logger.debug("conjugate masked at %d of %d slopes", mask.sum(),
                     count)
    return GridFunction(p0, pstep, np.where(mask, 0.0, values),
                        TailModel("domain"), mask)


def biconjugate(f, method="llt"):
    "f** on the grid of f: the lower convex envelope where it is trusted."
    fstar = lf_transform(f, method=method)
    return lf_transform(fstar, f, method)


###############################################################################
# Infimal convolution
###############################################################################

def _inf_conv_brute(f1, f2, q):
    x, y = f1.finite()
    out = np.empty(len(q))
    rows = max(1, _CHUNK // max(len(x), 1))
    for start in range(0, len(q), rows):
        t = q[start:start + rows, None] - x[None, :]
        out[start:start + rows] = np.min(y[None, :] + f2(t), axis=1)
    return out


def _is_convex(f):
    x, y = f.finite()
    return len(lower_hull(x, y)) == len(x)


def _inf_conv_convex(f1, f2, q):
    """
    Merge the hull edges of both inputs by slope: the epigraph of the
    infimal convolution is the Minkowski sum of the epigraphs.
    """
    edges = []
    start_x, start_y = 0.0, 0.0
    for f in (f1, f2):
        if not _is_convex(f):
            logger.warning("convex infimal convolution of a non-convex "
                           "function uses its hull")
        x, y = f.finite()
        hull = lower_hull(x, y)
        hx, hy = x[hull], y[hull]
        start_x += hx[0]
        start_y += hy[0]
        dx, dy = np.diff(hx), np.diff(hy)
        edges.append(np.column_stack([dy / dx, dx, dy]))
    edges = np.concatenate(edges)
    edges = edges[np.argsort(edges[:, 0], kind="stable")]
    vx = start_x + np.concatenate([[0.0], np.cumsum(edges[:, 1])])
    vy = start_y + np.concatenate([[0.0], np.cumsum(edges[:, 2])])
    out = np.interp(q, vx, vy)
    out[(q < vx[0] - 1e-12) | (q > vx[-1] + 1e-12)] = np.inf
    return out


def inf_conv(f1, f2, q_grid=None, method="brute"):
    """
    Infimal convolution (f1 conv f2)(q) = inf_v f1(v) + f2(q - v), with v
    over the finite nodes of f1.

    @param q_grid: uniform nodes; by default the grid spanning the sums of
                   the nodes of f1 and f2, at the step of f1.
    @param method: C{"brute"} or C{"convex"} (hull edge merge, exact for
                   convex inputs on grids of one step).
    @rtype: L{GridFunction} with a domain tail.
    """
    if method not in INF_CONV_METHODS:
        raise RangeError("unknown infimal convolution method %r" % method,
                         method=method)
    if q_grid is None:
        count = int(round((f1.x_end + f2.x_end - f1.x0 - f2.x0) /
                          f1.step)) + 1
        q0, qstep = f1.x0 + f2.x0, f1.step
    else:
        q0, qstep, count = _grid_of(q_grid, f1)
    q = q0 + qstep * np.arange(count)
    if method == "brute":
        values = _inf_conv_brute(f1, f2, q)
    else:
        values = _inf_conv_convex(f1, f2, q)
    mask = ~np.isfinite(values)
    if mask.all():
        logger.warning("infimal convolution is +inf on the whole grid")
    return GridFunction(q0, qstep, np.where(mask, 0.0, values),
                        TailModel("domain"), mask)


###############################################################################
# Legendre transform of simple functions
###############################################################################

class LegendreTransform(object):
    """
    f^t(q) = q v - f(v) with v = (f')^-1(q), for f with strictly monotone
    derivative on a domain. Calling it inverts f' by bisection.
    """

    def __init__(self, f, df, lo, hi):
        self.f, self.df = f, df
        self.lo, self.hi = float(lo), float(hi)
        ends = (df(self.lo), df(self.hi))
        self.range = (min(ends), max(ends))

    def __repr__(self):
        return "LegendreTransform(domain=[%g, %g])" % (self.lo, self.hi)

    def inverse_slope(self, q):
        "(f')^-1(q): the derivative of the transform at q."
        q = float(q)
        if not self.range[0] <= q <= self.range[1]:
            raise RangeError("slope %g outside [%g, %g]" %
                             ((q,) + self.range), q=q)
        return brentq(lambda v: self.df(v) - q, self.lo, self.hi,
                      xtol=1e-12, rtol=4 * np.finfo(float).eps)

    def __call__(self, q):
        q = np.asarray(q, dtype=float)
        out = np.array([qi * v - self.f(v) for (qi, v) in
                        ((qi, self.inverse_slope(qi)) for qi in q.ravel())])
        if q.ndim == 0:
            return float(out[0])
        return out.reshape(q.shape)


def _scalar_pair(f, domain):
    "Value and derivative callables of f, and its domain."
    if isinstance(f, GridFunction):
        from legendrian.gf.expr import SampledTail
        node = SampledTail(f)
        lo, hi = domain or (f.x0, f.x_end)
    else:
        node = f
        if node.base_dim != 1 or node.fiber_dim:
            raise RangeError("simple functions take one base variable")
        lo, hi = domain or (-100.0, 100.0)
    value = lambda v: float(node.eval([v]))
    slope = lambda v: float(node.grad([v])[0][0])
    return node, value, slope, lo, hi


def legendre_simple(f, domain=None, samples=2001):
    """
    The Legendre transform of a simple function.

    @param f: a L{GridFunction} or a node of one base variable and no fibers
              (such as a L{legendrian.gf.Poly1D}).
    @param domain: (lo, hi) on which f' is inverted; the grid of a grid
                   function, else (-100, 100).
    @raise NotSimpleError: if f' is not strictly monotone on the samples,
                           with the first offending interval.
    @rtype: L{LegendreTransform}
    """
    node, value, slope, lo, hi = _scalar_pair(f, domain)
    v = np.linspace(lo, hi, samples)
    d = node.grad(v[:, None])[0][:, 0]
    steps = np.diff(d)
    direction = np.sign(steps[np.argmax(np.abs(steps))])
    bad = np.flatnonzero(~(direction * steps > 0))
    if bad.size:
        i = bad[0]
        raise NotSimpleError("derivative is not strictly monotone on "
                             "[%g, %g]" % (v[i], v[i + 1]),
                             interval=[float(v[i]), float(v[i + 1])])
    return LegendreTransform(value, slope, lo, hi)


def fenchel_young_gap(f, fstar, v, p):
    "f(v) + f*(p) - p v, nonnegative wherever both sides are finite."
    v, p = np.asarray(v, float), np.asarray(p, float)
    return f(v) + fstar(p) - p * v
