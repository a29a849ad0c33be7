# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Fiber critical points: all solutions of grad_w F(q, w) = 0 in a fiber box.

The box is scanned on a regular grid. With one fiber variable, sign changes
of dF/dw are bracketed and solved with Brent's method, and local minima of
|dF/dw| seed Newton for tangential roots. With two or three fiber variables,
every grid cell on which each gradient component changes sign seeds Newton
from its centre; a cell where Newton fails is subdivided once and then
reported as unresolved. Roots closer than DEDUP_FACTOR grid steps are merged.
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.optimize import brentq

from legendrian.errors import ArityError, RangeError
from legendrian.util import logger

__all__ = ["FiberRoots", "solve_fiber_critical", "newton_polish",
           "fiber_axes", "NEWTON_TOL", "NEWTON_MAX_ITER", "DEDUP_FACTOR",
           "MAX_FIBER_DIM"]

NEWTON_TOL = 1e-10
NEWTON_MAX_ITER = 40
DEDUP_FACTOR = 3
MAX_FIBER_DIM = 3


class FiberRoots(object):
    """
    Roots of grad_w F(q, .) found in a box, as an (m, k) array sorted
    lexicographically. Iterating yields the roots one by one.
    """

    def __init__(self, q, roots, unresolved=(), events=()):
        self.q = np.asarray(q, float)
        self.roots = roots
        self.unresolved = list(unresolved)
        self.events = list(events)

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def __repr__(self):
        return "FiberRoots(q=%r, roots=%r)" % (self.q.tolist(),
                                               self.roots.tolist())


def fiber_axes(box, step):
    "One array of grid nodes per fiber axis, covering each box interval."
    axes = []
    for lo, hi in box:
        if not hi > lo:
            raise RangeError("empty box interval [%g, %g]" % (lo, hi))
        count = max(int(round((hi - lo) / step)), 1) + 1
        axes.append(np.linspace(lo, hi, count))
    return axes


def _fiber_grad(F, q, W):
    return F.gradient(F.join(q, W))[..., F.base_dim:]


def newton_polish(F, q, seeds, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER,
                  max_step=None):
    """
    Vectorised Newton iteration on grad_w F(q, .) using the fiber Hessian.

    @return: (points, converged mask, residual norms)
    """
    n, k = F.base_dim, F.fiber_dim
    W = np.array(seeds, dtype=float).reshape(-1, k)
    done = np.zeros(len(W), dtype=bool)
    for _ in range(max_iter):
        idx = np.flatnonzero(~done)
        if not len(idx):
            break
        x = F.join(q, W[idx])
        g = F.gradient(x)[..., n:]
        conv = np.linalg.norm(g, axis=-1) < tol
        done[idx[conv]] = True
        idx, g, x = idx[~conv], g[~conv], x[~conv]
        if not len(idx):
            break
        H = F.hessian(x)[..., n:, n:]
        step = -(np.linalg.pinv(H) @ g[..., None])[..., 0]
        if max_step is not None:
            size = np.linalg.norm(step, axis=-1, keepdims=True)
            step = step * np.minimum(1.0, max_step / np.maximum(size, 1e-300))
        W[idx] += step
    residual = np.linalg.norm(_fiber_grad(F, q, W), axis=-1)
    finite = np.isfinite(W).all(axis=-1)
    return W, (residual < tol) & finite, residual


def _inside(W, box, slack=1e-9):
    lo = np.array([b[0] for b in box]) - slack
    hi = np.array([b[1] for b in box]) + slack
    return np.all((W >= lo) & (W <= hi), axis=-1)


def _dedup(points, radius):
    kept = []
    for w in points:
        if all(np.linalg.norm(w - other) > radius for other in kept):
            kept.append(w)
    return kept


def _roots_1d(F, q, box, step):
    (w,) = fiber_axes(box, step)
    g = _fiber_grad(F, q, w[:, None])[:, 0]
    f = lambda t: float(_fiber_grad(F, q, [t])[0])
    found = list(w[g == 0.0])
    sign = np.sign(g)
    for i in np.flatnonzero(sign[:-1] * sign[1:] < 0):
        root = brentq(f, w[i], w[i + 1], xtol=1e-14,
                      rtol=4 * np.finfo(float).eps)
        polished, ok, _ = newton_polish(F, q, [root], max_iter=3)
        if ok[0] and w[i] <= polished[0, 0] <= w[i + 1]:
            root = polished[0, 0]
        found.append(root)
    # tangential roots: local minima of |g| that Newton drives to zero
    a = np.abs(g)
    interior = np.flatnonzero((a[1:-1] <= a[:-2]) & (a[1:-1] <= a[2:]) &
                              (sign[:-2] == sign[1:-1]) &
                              (sign[1:-1] == sign[2:])) + 1
    if len(interior):
        W, ok, _ = newton_polish(F, q, w[interior][:, None])
        for j, i in enumerate(interior):
            if ok[j] and w[i - 1] <= W[j, 0] <= w[i + 1]:
                found.append(W[j, 0])
    points = [np.array([r]) for r in sorted(found)]
    return points, []


def _roots_nd(F, q, box, step):
    k = F.fiber_dim
    axes = fiber_axes(box, step)
    mesh = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    G = _fiber_grad(F, q, mesh)
    candidate = None
    window = (2,) * k
    cell_axes = tuple(range(k, 2 * k))
    for c in range(k):
        win = sliding_window_view(G[..., c], window)
        crosses = (win.min(axis=cell_axes) <= 0) & \
                  (win.max(axis=cell_axes) >= 0)
        candidate = crosses if candidate is None else candidate & crosses
    cells = np.argwhere(candidate)
    if not len(cells):
        return [], []
    widths = np.array([ax[1] - ax[0] for ax in axes])
    lows = np.stack([axes[a][cells[:, a]] for a in range(k)], axis=-1)
    centres = lows + widths / 2
    reach = 2 * np.linalg.norm(widths)
    W, ok, _ = newton_polish(F, q, centres, max_step=reach)
    ok &= _inside(W, box)
    near = np.linalg.norm(W - centres, axis=-1) <= reach
    found = list(W[ok])
    retry = np.flatnonzero(~(ok & near))
    unresolved = []
    if len(retry):
        corners = np.array(np.meshgrid(*([(-0.25, 0.25)] * k),
                                       indexing="ij")).reshape(k, -1).T
        seeds = (centres[retry][:, None, :] +
                 corners[None, :, :] * widths).reshape(-1, k)
        W2, ok2, _ = newton_polish(F, q, seeds, max_step=reach)
        ok2 &= _inside(W2, box)
        found.extend(W2[ok2])
        resolved = ok2.reshape(len(retry), -1).any(axis=1)
        unresolved = [centres[i] for i in retry[~resolved] if not ok[i]]
    return found, unresolved


def solve_fiber_critical(F, q, box, step):
    """
    Find all w in C{box} with grad_w F(q, w) = 0.

    @param box: one (lo, hi) pair per fiber variable.
    @param step: grid step of the scan.
    @rtype: L{FiberRoots}
    @raise ArityError: unless 1 <= fiber_dim <= 3 and the box fits.
    """
    k = F.fiber_dim
    if not 1 <= k <= MAX_FIBER_DIM:
        raise ArityError("fiber dimension %d outside [1, %d]" %
                         (k, MAX_FIBER_DIM), fiber_dim=k)
    if len(box) != k:
        raise ArityError("box has %d intervals for %d fiber variables" %
                         (len(box), k), box=len(box), fiber_dim=k)
    q = np.atleast_1d(np.asarray(q, float))
    if k == 1:
        found, unresolved = _roots_1d(F, q, box, step)
    else:
        found, unresolved = _roots_nd(F, q, box, step)
    found = [w for w in found if _inside(w[None, :], box)[0]]
    roots = _dedup(found, DEDUP_FACTOR * step)
    roots = np.array(roots, dtype=float).reshape(-1, k)
    if len(roots):
        roots = roots[np.lexsort(roots.T[::-1])]
    events = []
    if unresolved:
        logger.warning("unresolved cell(s) at q=%s: %d", q.tolist(),
                       len(unresolved))
        events.append({"event": "unresolved cell", "q": q.tolist(),
                       "count": len(unresolved)})
    return FiberRoots(q, roots, unresolved, events)
