# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Min-max of almost simple fiber functions, and the selector.

For a fiber function f of index iota, the min-max s(f) is the level at which
the degree iota class of (f^+inf, f^-inf) appears. Almost convex functions
(iota = 0) take their minimum and almost concave ones (iota = k) their
maximum; other indices go through the cubical persistence of L{cubical}. In
every case the answer is snapped to the nearest critical value found by the
fiber root solver.
"""

import math

import numpy as np

from legendrian.errors import ArityError, BoxInsufficientError, \
                              HomologyNotSimpleError, LegendrianError, \
                              RangeError
from legendrian.front.roots import fiber_axes, solve_fiber_critical
from legendrian.gf.expr import FiberFunction, SumOp
from legendrian.gf.meta import fiber_index, negative_index
from legendrian.selector.cubical import sublevel_persistence
from legendrian.util import logger, parallel_map

__all__ = ["CriticalValueSet", "SelectorCurve", "critical_values",
           "critical_values_1d", "minmax", "selector",
           "minmax_direct_sum_check", "box_is_sufficient",
           "MAX_BOX_EXPANSIONS", "BOX_GROWTH", "VALUE_TOL", "METHODS"]

MAX_BOX_EXPANSIONS = 3
BOX_GROWTH = 1.5
VALUE_TOL = 1e-9
CONTINUITY_SAFETY = 10.0
METHODS = ("auto", "cubical")


class CriticalValueSet(object):
    """
    Critical values of a fiber function in a box, sorted, with the
    multiplicity of each value and the Morse index of each critical point.
    C{bound} is C with every value in (-C, C).
    """

    def __init__(self, values, multiplicity, points, indices, events=()):
        self.values = [float(v) for v in values]
        self.multiplicity = [int(m) for m in multiplicity]
        self.points = points
        self.indices = [int(i) for i in indices]
        self.events = list(events)
        top = max([abs(v) for v in self.values] or [0.0])
        self.bound = 2 * top + 1

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self):
        return "CriticalValueSet(%r)" % (self.values,)

    def __contains__(self, value):
        return any(abs(v - value) <= VALUE_TOL * (1 + abs(v))
                   for v in self.values)

    def nearest(self, value):
        if not self.values:
            return None
        return min(self.values, key=lambda v: abs(v - value))

    def as_dict(self):
        return {"values": self.values, "multiplicity": self.multiplicity,
                "indices": self.indices, "bound": self.bound,
                "events": self.events}


def _fiber_function(f):
    if isinstance(f, FiberFunction):
        return f
    if f.base_dim:
        raise ArityError("a node with base variables needs a base point; "
                         "wrap it in FiberFunction")
    return FiberFunction(f)


def critical_values(f, box, step):
    """
    All critical values of f in a box.

    @rtype: L{CriticalValueSet}
    """
    f = _fiber_function(f)
    roots = solve_fiber_critical(f.F, f.q, box, step)
    events = list(roots.events)
    W = roots.roots
    if not len(W):
        return CriticalValueSet([], [], W, [], events)
    values = np.atleast_1d(f.F.value(f.F.join(f.q, W)))
    indices = [negative_index(H) for H in f.hessian(W)]
    order = np.argsort(values, kind="stable")
    merged, counts = [], []
    for v in values[order]:
        if merged and abs(v - merged[-1]) <= VALUE_TOL * (1 + abs(v)):
            counts[-1] += 1
        else:
            merged.append(v)
            counts.append(1)
    return CriticalValueSet(merged, counts, W[order],
                            [indices[i] for i in order], events)


def critical_values_1d(f, box, step):
    """
    Critical values of a function of one fiber variable. A derivative that
    vanishes at an end of the box is flagged: the root there may belong to
    a sign change outside.
    """
    f = _fiber_function(f)
    if f.fiber_dim != 1:
        raise ArityError("one fiber variable expected, got %d" % f.fiber_dim)
    result = critical_values(f, box, step)
    ends = f.gradient(np.array([[box[0][0]], [box[0][1]]]))[:, 0]
    for end, slope in zip(box[0], ends):
        if abs(slope) <= 1e-10:
            logger.warning("critical point on the box boundary at w=%g", end)
            result.events.append({"event": "boundary sign change unresolved",
                                  "w": float(end)})
    return result


###############################################################################
# Min-max of one fiber function
###############################################################################

def _mesh(f, box, step):
    axes = fiber_axes(box, step)
    W = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1)
    return axes, W


def _snap_tolerance(f, W, cell, step):
    "Largest value change across the grid cells around a birth cell."
    k = f.fiber_dim
    shape = W.shape[:-1]
    coords = np.unravel_index(cell, tuple(2 * s - 1 for s in shape))
    block = tuple(slice(max(c // 2 - 1, 0), min((c + 1) // 2 + 2, s))
                  for (c, s) in zip(coords, shape))
    slopes = np.linalg.norm(f.gradient(W[block]), axis=-1)
    return float(slopes.max()) * step * math.sqrt(k) + VALUE_TOL


def _cubical(f, iota, box, step, field, cvs):
    axes, W = _mesh(f, box, step)
    values = f.F.value(f.F.join(f.q, W))
    diagram = sublevel_persistence(values, -cvs.bound, field)
    ranks = diagram.essential_ranks()
    if ranks != {iota: 1}:
        raise HomologyNotSimpleError(
            "essential ranks %r, expected one class in degree %d" %
            (ranks, iota), ranks=dict((str(d), r) for (d, r) in
                                      ranks.items()), index=iota)
    bar = diagram.essential(iota)[0]
    snapped = cvs.nearest(bar.birth)
    tol = _snap_tolerance(f, W, bar.cell, step)
    if snapped is None or abs(snapped - bar.birth) > tol:
        logger.warning("min-max %g is not near a critical value", bar.birth)
        return bar.birth, diagram
    return snapped, diagram


def _minmax(f, iota, box, step, field="z2", method="auto"):
    "Min-max with the method used and the critical values."
    if method not in METHODS:
        raise RangeError("unknown min-max method %r" % method, method=method)
    k = f.fiber_dim
    if k == 0:
        return f(np.zeros(0)), "graph", CriticalValueSet([], [], None, [])
    if not 0 <= iota <= k:
        raise RangeError("index %d outside [0, %d]" % (iota, k), index=iota)
    cvs = critical_values(f, box, step)
    if not len(cvs):
        raise HomologyNotSimpleError("no critical point in the fiber box",
                                     box=[list(b) for b in box])
    if method == "auto" and iota == 0:
        return cvs.values[0], "min", cvs
    if method == "auto" and iota == k:
        return cvs.values[-1], "max", cvs
    value, _ = _cubical(f, iota, box, step, field, cvs)
    return value, "cubical", cvs


def minmax(f, index=None, box=None, step=None, field="z2", method="auto"):
    """
    The min-max s(f) of a fiber function.

    @param f: a L{FiberFunction}, or a node without base variables.
    @param index: Morse index of the simple part; the tracked one if None.
    @param field: C{"z2"} or C{"q"} for the persistence path.
    @param method: C{"auto"} takes the min or max fast paths when the index
                   allows, C{"cubical"} always computes persistence.
    @raise NotTrackedError: if no index is known.
    @raise HomologyNotSimpleError: if the relative homology found on the
                                   grid is not that of an index C{index}
                                   simple function.
    """
    f = _fiber_function(f)
    iota = fiber_index(f.F, index)
    if f.fiber_dim and (box is None or step is None):
        raise ArityError("min-max needs a fiber box and a step")
    return _minmax(f, iota, box, step, field, method)[0]


###############################################################################
# Box sufficiency
###############################################################################

def _shell(box, step):
    "Grid points on the faces of a box."
    axes = fiber_axes(box, step)
    faces = []
    for a, (lo, hi) in enumerate(box):
        for end in (lo, hi):
            face = list(axes)
            face[a] = np.array([end])
            faces.append(np.stack(np.meshgrid(*face, indexing="ij"),
                                  axis=-1).reshape(-1, len(box)))
    return np.concatenate(faces)


def box_is_sufficient(F, q, box, step):
    """
    True if the simple part of F dominates the rest at every point of the
    box boundary, so that every critical point of F(q, .) lies inside.
    Without a tracked simple part, only checks that grad_w F does not vanish
    there.
    """
    S = _shell(box, step)
    g = FiberFunction(F, q).gradient(S)
    simple = F.structure.simple
    if simple is None or simple.fiber_dim != F.fiber_dim:
        return bool(np.linalg.norm(g, axis=-1).min() > VALUE_TOL)
    gs = FiberFunction(simple, q).gradient(S)
    lead = np.linalg.norm(gs, axis=-1)
    rest = np.linalg.norm(g - gs, axis=-1)
    return bool((lead > rest).all())


def _grow(box):
    return [((lo + hi) / 2 - BOX_GROWTH * (hi - lo) / 2,
             (lo + hi) / 2 + BOX_GROWTH * (hi - lo) / 2) for (lo, hi) in box]


def _sufficient_box(F, q, box, step):
    box = [tuple(b) for b in box]
    for _ in range(MAX_BOX_EXPANSIONS + 1):
        if box_is_sufficient(F, q, box, step):
            return box
        logger.info("expanding the fiber box at q=%s", np.ravel(q).tolist())
        last, box = box, _grow(box)
    raise BoxInsufficientError(
        "fiber box still insufficient after %d expansions" %
        MAX_BOX_EXPANSIONS, q=np.ravel(q).tolist(),
        box=[list(b) for b in last])


###############################################################################
# The selector
###############################################################################

class SelectorCurve(object):
    """
    The selector s(F) on a q grid, with per-node index, method and critical
    values.
    """

    def __init__(self, q_grid, values, iota, critical, methods, events=()):
        self.q = np.asarray(q_grid, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.iota = iota
        self.critical = list(critical)
        self.methods = list(methods)
        self.events = list(events)

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return "SelectorCurve(%d nodes, iota=%d)" % (len(self), self.iota)

    def members(self):
        "True where the selector value is one of the critical values."
        return [not len(c) or v in c
                for (v, c) in zip(self.values, self.critical)]

    def continuity(self, F):
        """
        Largest jump between adjacent nodes, and the modulus it must stay
        under: the largest |grad_q F| at the critical points times the grid
        step, times a safety factor.
        """
        q = self.q.reshape(len(self), -1)
        if len(self) < 2:
            return 0.0, float("inf")
        steps = np.linalg.norm(np.diff(q, axis=0), axis=-1)
        slope = 0.0
        for qi, c in zip(q, self.critical):
            if c.points is not None and len(c.points):
                g = F.gradient(F.join(qi, c.points))[..., :F.base_dim]
                slope = max(slope, float(np.linalg.norm(g, axis=-1).max()))
            elif not F.fiber_dim:
                g = F.gradient(F.join(qi))[:F.base_dim]
                slope = max(slope, float(np.linalg.norm(g)))
        jump = float(np.abs(np.diff(self.values)).max())
        return jump, CONTINUITY_SAFETY * slope * float(steps.max())

    def as_rows(self):
        "Rows (q..., s, iota, number of critical values)."
        q = self.q.reshape(len(self), -1)
        return [list(qi) + [float(s), self.iota, len(c)]
                for (qi, s, c) in zip(q, self.values, self.critical)]


def selector(F, q_grid, fiber_box=None, step=None, field="z2", index=None,
             method="auto", workers=None):
    """
    The selector s(F)(q) = s(F(q, .)) over a q grid.

    The fiber box is checked, and grown if needed, separately at each q.

    @raise NotTrackedError: if the index is neither tracked nor supplied.
    @raise BoxInsufficientError: if the box stays insufficient.
    @raise HomologyNotSimpleError: with the offending q in its details.
    @rtype: L{SelectorCurve}
    """
    iota = fiber_index(F, index)
    qs = np.asarray(q_grid, dtype=float)
    points = qs.reshape(-1, F.base_dim)
    if F.fiber_dim and (fiber_box is None or step is None):
        raise ArityError("the selector needs a fiber box and a step")

    def one(q):
        f = FiberFunction(F, q)
        if not F.fiber_dim:
            return _minmax(f, iota, None, None, field, method)
        box = _sufficient_box(F, q, fiber_box, step)
        try:
            return _minmax(f, iota, box, step, field, method)
        except LegendrianError as e:
            e.details.setdefault("q", q.tolist())
            raise

    results = parallel_map(one, points, workers)
    events = [dict(e, q=q.tolist()) for (q, r) in zip(points, results)
              for e in r[2].events]
    return SelectorCurve(qs, [r[0] for r in results], iota,
                         [r[2] for r in results], [r[1] for r in results],
                         events)


def minmax_direct_sum_check(f1, f2, box1, box2, step, field="z2",
                            index1=None, index2=None, method="cubical"):
    """
    Compare s(f1 (+) f2) with s(f1) + s(f2) for functions of the fiber
    variables alone.

    @return: dict with both sides and their gap.
    """
    f1, f2 = _fiber_function(f1), _fiber_function(f2)
    if f1.F.base_dim or f2.F.base_dim:
        raise ArityError("direct sums take functions of fiber variables only")
    s1 = minmax(f1, index1, box1, step, field, method)
    s2 = minmax(f2, index2, box2, step, field, method)
    total = SumOp(f1.F, f2.F)
    iota = fiber_index(f1.F, index1) + fiber_index(f2.F, index2)
    s12 = minmax(FiberFunction(total), iota, list(box1) + list(box2), step,
                 field, method)
    return {"left": s1, "right": s2, "sum": s12,
            "gap": abs(s12 - (s1 + s2))}
