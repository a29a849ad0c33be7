# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Legendrian point clouds and the sampler that produces them from a generating
function.

A cloud holds the 1-jets (u, q, p) of its points in parallel arrays, a
branch label per point and the parameters each point came from. With one
base variable, the points of a branch are stored in order along the curve,
fold points included, so that a branch can be walked as a polyline. Two
dimensional clouds may carry a line structure: a (label, position) pair per
point, where points sharing a label lie on one grid line in position order.
"""

import numpy as np
from scipy.optimize import fsolve, linear_sum_assignment

from legendrian.errors import ArityError
from legendrian.front.roots import solve_fiber_critical
from legendrian.gf.jet import Point1Jet
from legendrian.util import logger, parallel_map

__all__ = ["LegendrianCloud", "sample_legendrian", "base_grid",
           "GATE_FRACTION", "FOLD_TOL"]

GATE_FRACTION = 0.25
FOLD_TOL = 1e-8


def _frozen(a):
    a = np.array(a, dtype=float)
    a.flags.writeable = False
    return a


class LegendrianCloud(object):
    """
    An immutable sample of a Legendrian submanifold.

    @param base_dim: n; needed when the cloud is empty.
    @param source: parameters of each point, one row per point.
    @param lines: optional (label, position) pair per point.
    @param folds: 1-jets of the fold points found while stitching, one row
                  (u, q..., p...) each.
    """

    def __init__(self, u, q, p, branch=None, source=None, lines=None,
                 events=(), folds=None, base_dim=None):
        u = np.asarray(u, dtype=float).reshape(-1)
        m = len(u)
        if base_dim is None:
            q = np.asarray(q, dtype=float)
            base_dim = q.shape[-1] if q.ndim == 2 else 1
        n = int(base_dim)
        try:
            q = np.asarray(q, dtype=float).reshape(m, n)
            p = np.asarray(p, dtype=float).reshape(m, n)
        except ValueError:
            raise ArityError("cloud arrays do not match %d points in "
                             "dimension %d" % (m, n), points=m, base_dim=n)
        if branch is None:
            branch = np.zeros(m, dtype=int)
        branch = np.array(branch, dtype=int).reshape(m)
        branch.flags.writeable = False
        if source is None:
            source = q
        source = np.asarray(source, dtype=float).reshape(m, -1) if m else \
                 np.zeros((0, n))
        self.u = _frozen(u)
        self.q = _frozen(q)
        self.p = _frozen(p)
        self.branch = branch
        self.source = _frozen(source)
        self.lines = None if lines is None else \
                     _frozen(np.asarray(lines, float).reshape(m, 2))
        if folds is None:
            folds = np.zeros((0, 1 + 2 * n))
        self.folds = _frozen(np.asarray(folds, float).reshape(-1, 1 + 2 * n))
        self.events = list(events)
        self.base_dim = n

    def __len__(self):
        return len(self.u)

    def __repr__(self):
        return "LegendrianCloud(%d points, n=%d, %d branches)" % \
                   (len(self), self.base_dim, len(self.branch_ids()))

    def as_array(self):
        "The points as rows (u, q..., p...)."
        return np.column_stack([self.u, self.q, self.p]) if len(self) else \
               np.zeros((0, 1 + 2 * self.base_dim))

    def points(self):
        "The points as L{Point1Jet}s."
        return [Point1Jet(u, q, p) for (u, q, p) in
                zip(self.u, self.q, self.p)]

    def branch_ids(self):
        "Branch labels in order of first appearance."
        ids, first = np.unique(self.branch, return_index=True)
        return [int(b) for b in ids[np.argsort(first)]]

    def branch_indices(self, b):
        "Indices of the points of branch b, in branch order."
        return np.flatnonzero(self.branch == b)

    def subset(self, index):
        "The cloud restricted to a boolean mask or an index array."
        index = np.asarray(index)
        if index.dtype == bool:
            index = np.flatnonzero(index)
        return LegendrianCloud(
            self.u[index], self.q[index], self.p[index], self.branch[index],
            self.source[index],
            None if self.lines is None else self.lines[index],
            self.events, self.folds, self.base_dim)

    def with_events(self, events):
        "A copy with more events appended."
        return LegendrianCloud(self.u, self.q, self.p, self.branch,
                               self.source, self.lines,
                               self.events + list(events), self.folds,
                               self.base_dim)

    @staticmethod
    def empty(base_dim=1, events=()):
        n = base_dim
        return LegendrianCloud((), np.zeros((0, n)), np.zeros((0, n)),
                               events=events, base_dim=n)

    @staticmethod
    def from_jets(jets, branch=None):
        "A cloud from an (m, 1 + 2n) array of rows (u, q..., p...)."
        jets = np.atleast_2d(np.asarray(jets, dtype=float))
        n = (jets.shape[1] - 1) // 2
        return LegendrianCloud(jets[:, 0], jets[:, 1:1 + n],
                               jets[:, 1 + n:], branch, base_dim=n)

    @staticmethod
    def concat(clouds):
        """
        Stack clouds of one dimension; branch labels are shifted so that they
        stay distinct.
        """
        clouds = list(clouds)
        if not clouds:
            raise ArityError("nothing to concatenate")
        n = clouds[0].base_dim
        if any(c.base_dim != n for c in clouds):
            raise ArityError("clouds of different dimensions")
        branches, offset = [], 0
        for c in clouds:
            branches.append(c.branch + offset)
            if len(c):
                offset += int(c.branch.max()) + 1
        width = max(c.source.shape[1] for c in clouds)
        source = np.concatenate(
            [np.pad(c.source, ((0, 0), (0, width - c.source.shape[1])))
             for c in clouds])
        lines = None
        if all(c.lines is not None for c in clouds):
            lines = np.concatenate([c.lines for c in clouds])
        events = [e for c in clouds for e in c.events]
        return LegendrianCloud(
            np.concatenate([c.u for c in clouds]),
            np.concatenate([c.q for c in clouds]),
            np.concatenate([c.p for c in clouds]),
            np.concatenate(branches), source, lines, events,
            np.concatenate([c.folds for c in clouds]), n)


def base_grid(*axes):
    "Tensor grid of base points as an (m, n) array, last axis fastest."
    mesh = np.meshgrid(*[np.asarray(a, dtype=float) for a in axes],
                       indexing="ij")
    return np.stack(mesh, -1).reshape(-1, len(axes))


def _base_points(F, q_grid):
    qs = np.asarray(q_grid, dtype=float)
    if qs.ndim == 1 and F.base_dim == 1:
        qs = qs[:, None]
    if qs.ndim != 2 or qs.shape[1] != F.base_dim:
        raise ArityError("q grid must hold points of dimension %d" %
                         F.base_dim, base_dim=F.base_dim)
    return qs


def _lines(qs):
    if qs.shape[1] == 2:
        return qs
    return None


def _cloud_from_sources(F, x, branch, lines, events, folds=None):
    n = F.base_dim
    if not len(x):
        return LegendrianCloud.empty(n, events)
    u = F.value(x)
    p = F.gradient(x)[:, :n]
    if F.fiber_dim:
        from legendrian.gf.star import sigma_min
        sigma, threshold = sigma_min(F, x)
        suspect = int(np.sum(~(sigma > threshold)))
        if suspect:
            logger.warning("immersion suspect at %d point(s) of %r",
                           suspect, F)
            events = events + [{"event": "immersion suspect",
                                "count": suspect}]
    fold_jets = None
    if folds:
        fx = np.array(folds)
        fold_jets = np.column_stack([F.value(fx), fx[:, :n],
                                     F.gradient(fx)[:, :n]])
    return LegendrianCloud(u, x[:, :n], p, branch, x, lines, events,
                           fold_jets, n)


###############################################################################
# Branch stitching over a one dimensional q grid
###############################################################################

def _segments(solved, gate):
    "Runs of roots matched across adjacent q nodes, as lists of (i, w)."
    segments, active, prev = [], [], None
    for i, r in enumerate(solved):
        W = r.roots
        ids = [None] * len(W)
        if prev is not None and len(prev) and len(W):
            cost = np.linalg.norm(prev[:, None, :] - W[None, :, :], axis=-1)
            for a, b in zip(*linear_sum_assignment(cost)):
                if cost[a, b] <= gate:
                    ids[b] = active[a]
        for b in range(len(W)):
            if ids[b] is None:
                segments.append([])
                ids[b] = len(segments) - 1
            segments[ids[b]].append((i, W[b]))
        active, prev = ids, W
    return segments


def _refine_fold(F, q0, w0, lo, hi):
    "Solve grad_w F = 0 and det hess_w F = 0 for (q, w) near (q0, w0)."
    n = F.base_dim

    def equations(z):
        x = F.join(z[:n], z[n:])
        H = F.hessian(x)[n:, n:]
        return np.concatenate([F.gradient(x)[n:], [np.linalg.det(H)]])

    z0 = np.concatenate([[q0], w0])
    z, _, ier, _ = fsolve(equations, z0, full_output=True)
    x = F.join(z[:n], z[n:])
    residual = np.linalg.norm(F.gradient(x)[n:])
    if ier != 1 or not residual < FOLD_TOL or not lo <= z[0] <= hi:
        return None
    return x


def _near_face(w, box, margin):
    lo = np.array([b[0] for b in box])
    hi = np.array([b[1] for b in box])
    return bool(np.any(w - lo <= margin) or np.any(hi - w <= margin))


def _pair_ends(ends, gate):
    "Greedy pairing of segment ends that vanish at nearby q nodes."
    candidates = []
    for a in range(len(ends)):
        for b in range(a + 1, len(ends)):
            (_, _, ia, wa), (_, _, ib, wb) = ends[a], ends[b]
            d = np.linalg.norm(wa - wb)
            if abs(ia - ib) <= 2 and d <= gate:
                candidates.append((d, a, b))
    used, pairs = set(), []
    for d, a, b in sorted(candidates):
        if a not in used and b not in used:
            used.update((a, b))
            pairs.append((ends[a], ends[b]))
    single = [e for (j, e) in enumerate(ends) if j not in used]
    return pairs, single


def _stitch(F, qs, solved, box, step, gate):
    """
    Link segments through their fold points and walk the resulting chains.

    @return: (list of chains of x = (q, w) rows, fold rows, events)
    """
    q = qs[:, 0]
    last = len(q) - 1
    h = np.min(np.diff(q)) if last else step
    segments = _segments(solved, gate)
    ends = []
    for s, seg in enumerate(segments):
        if seg[-1][0] < last:
            ends.append((s, "end", seg[-1][0], seg[-1][1]))
        if seg[0][0] > 0:
            ends.append((s, "start", seg[0][0], seg[0][1]))
    links, folds, events = {}, [], []
    for side in ("end", "start"):
        pairs, single = _pair_ends([e for e in ends if e[1] == side], gate)
        for a, b in pairs:
            if side == "end":
                i = min(max(a[2], b[2]), last - 1)
                lo, hi = q[min(a[2], b[2])] - h, q[i + 1] + h
                q0 = (q[i] + q[i + 1]) / 2
            else:
                i = max(min(a[2], b[2]), 1)
                lo, hi = q[i - 1] - h, q[max(a[2], b[2])] + h
                q0 = (q[i - 1] + q[i]) / 2
            x = _refine_fold(F, q0, (a[3] + b[3]) / 2, lo, hi)
            if x is None:
                single.extend((a, b))
                continue
            folds.append(x)
            links[(a[0], side)] = (b[0], side, x)
            links[(b[0], side)] = (a[0], side, x)
        for s, _, i, w in single:
            if _near_face(w, box, 2 * step):
                logger.info("root left the fiber box near q=%g", q[i])
                events.append({"event": "root left box", "q": float(q[i])})
            else:
                logger.warning("branch event unresolved near q=%g", q[i])
                events.append({"event": "branch event unresolved",
                               "q": float(q[i])})

    other = {"start": "end", "end": "start"}
    chains, visited = [], set()
    for s in range(len(segments)):
        if s in visited:
            continue
        cur, side, seen = s, "start", set()
        while (cur, side) in links and cur not in seen:
            seen.add(cur)
            nxt, nxt_side, _ = links[(cur, side)]
            cur, side = nxt, other[nxt_side]
        chain = []
        while cur not in visited:
            visited.add(cur)
            seg = segments[cur] if side == "start" else segments[cur][::-1]
            chain.extend(F.join(qs[i], w) for (i, w) in seg)
            link = links.get((cur, other[side]))
            if link is None:
                break
            nxt, nxt_side, x = link
            chain.append(x)
            cur, side = nxt, nxt_side
        chains.append(chain)
    return chains, folds, events


###############################################################################
# Sampling
###############################################################################

def sample_legendrian(F, q_grid, fiber_box=None, step=None, workers=None):
    """
    Sample L_F = {(F(q, w), q, grad_q F(q, w)) : grad_w F(q, w) = 0}.

    Nodes without fibers are sampled as 1-graphs. Otherwise each q of the
    grid is solved independently; with one base variable the roots are then
    stitched into branches across adjacent nodes and joined through their
    fold points, with two or more each q contributes its roots in
    lexicographic order, the rank being the branch label.

    @param q_grid: base points, a 1-D array when n = 1, else (m, n).
    @param fiber_box: one (lo, hi) pair per fiber variable.
    @param step: grid step of the fiber scan.
    @rtype: L{LegendrianCloud}
    """
    qs = _base_points(F, q_grid)
    n, k = F.base_dim, F.fiber_dim
    if k == 0:
        branch = np.zeros(len(qs), dtype=int)
        return _cloud_from_sources(F, qs, branch, _lines(qs), [])
    if fiber_box is None or step is None:
        raise ArityError("sampling a node with fibers needs a box and a step")
    if n == 1:
        qs = qs[np.argsort(qs[:, 0], kind="stable")]
    solved = parallel_map(
        lambda q: solve_fiber_critical(F, q, fiber_box, step), qs, workers)
    events = [e for r in solved for e in r.events]
    if n == 1:
        diameter = np.linalg.norm([hi - lo for (lo, hi) in fiber_box])
        chains, folds, stitched = _stitch(F, qs, solved, fiber_box, step,
                                          GATE_FRACTION * diameter)
        rows = [x for chain in chains for x in chain]
        branch = [b for (b, chain) in enumerate(chains) for _ in chain]
        x = np.array(rows).reshape(-1, n + k)
        return _cloud_from_sources(F, x, branch, None, events + stitched,
                                   folds)
    rows, branch, lines = [], [], []
    for r in solved:
        for rank, w in enumerate(r.roots):
            rows.append(F.join(r.q, w))
            branch.append(rank)
    x = np.array(rows).reshape(-1, n + k)
    return _cloud_from_sources(F, x, branch,
                               _lines(x[:, :n]) if n == 2 else None, events)
