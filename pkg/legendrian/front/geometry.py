# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Geometric operations on Legendrian clouds, and their comparison.

The operations mirror the combinators on generating functions: the
transformation T, the sum over a common q grid, the convolution over a
common p grid, the product, and the slice and contour of a two dimensional
cloud. Sum and convolution realign their inputs by cutting every branch into
pieces monotone in the shared coordinate and interpolating each piece on the
target grid.
"""

import numpy as np
from scipy.spatial import cKDTree

from legendrian.errors import ArityError
from legendrian.front.cloud import LegendrianCloud
from legendrian.util import logger

__all__ = ["WaveFront", "wave_front", "geometric_T", "geometric_sum",
           "geometric_convolution", "geometric_product", "geometric_slice",
           "geometric_contour", "phi_map", "psi_map", "sum_via_product",
           "convolution_via_product", "crop", "hausdorff",
           "HAUSDORFF_FACTOR", "SEGMENT_GATE"]

HAUSDORFF_FACTOR = 5
SEGMENT_GATE = 20.0
_CHUNK = 1 << 22


class WaveFront(object):
    """
    Projection of a cloud to (u, q) space. Branch labels and order are
    those of the cloud; C{cusps} is filled by L{legendrian.front.cusps}.
    """

    def __init__(self, u, q, branch, folds=None, cusps=()):
        self.u = np.asarray(u, dtype=float)
        self.q = np.asarray(q, dtype=float).reshape(len(self.u), -1)
        self.branch = np.asarray(branch, dtype=int)
        self.folds = folds
        self.cusps = list(cusps)

    def __len__(self):
        return len(self.u)

    def __repr__(self):
        return "WaveFront(%d points, %d cusps)" % (len(self), len(self.cusps))

    @property
    def base_dim(self):
        return self.q.shape[1]

    def branch_ids(self):
        ids, first = np.unique(self.branch, return_index=True)
        return [int(b) for b in ids[np.argsort(first)]]

    def branch_indices(self, b):
        return np.flatnonzero(self.branch == b)


def wave_front(cloud):
    "Forget p."
    n = cloud.base_dim
    folds = cloud.folds[:, :1 + n] if len(cloud.folds) else None
    return WaveFront(cloud.u, cloud.q, cloud.branch, folds)


def geometric_T(cloud):
    "(u, q, p) -> (p.q - u, p, q), pointwise."
    n = cloud.base_dim
    u = np.einsum("ij,ij->i", cloud.p, cloud.q) - cloud.u
    folds = cloud.folds
    if len(folds):
        fq, fp = folds[:, 1:1 + n], folds[:, 1 + n:]
        folds = np.column_stack([np.einsum("ij,ij->i", fp, fq) - folds[:, 0],
                                 fp, fq])
    return LegendrianCloud(u, cloud.p, cloud.q, cloud.branch, cloud.source,
                           cloud.lines, cloud.events, folds, n)


def crop(cloud, window):
    """
    The points inside a window, a dict mapping C{u}, C{q} or C{p} to a
    (lo, hi) pair; q and p bounds apply to every component.
    """
    if not window:
        return cloud
    keep = np.ones(len(cloud), dtype=bool)
    for name, (lo, hi) in window.items():
        values = getattr(cloud, name)
        if values.ndim == 1:
            values = values[:, None]
        keep &= np.all((values >= lo) & (values <= hi), axis=1)
    return cloud.subset(keep)


def _widen(window, margin):
    if not window:
        return window
    return dict((name, (lo - margin, hi + margin))
                for (name, (lo, hi)) in window.items())


###############################################################################
# Sum and convolution
###############################################################################

def _require_curves(*clouds):
    for c in clouds:
        if c.base_dim != 1:
            raise ArityError("operation needs clouds with one base variable",
                             base_dim=c.base_dim)


class _Piece(object):
    "A run of a branch that is monotone in one coordinate."

    def __init__(self, jets, coordinate, branch):
        order = np.argsort(jets[:, coordinate], kind="stable")
        jets = jets[order]
        self.c = jets[:, coordinate]
        self.u, self.q, self.p = jets[:, 0], jets[:, 1], jets[:, 2]
        self.lo, self.hi = self.c[0], self.c[-1]
        self.branch = branch

    def covers(self, nodes):
        return (nodes >= self.lo - 1e-12) & (nodes <= self.hi + 1e-12)

    def at(self, nodes):
        return (np.interp(nodes, self.c, self.u),
                np.interp(nodes, self.c, self.q),
                np.interp(nodes, self.c, self.p))


def _turning_jet(jets, coordinate, folds):
    """
    The jet where a branch turns back in C{coordinate}, from the parabola
    through three consecutive samples; a stored fold jet close to it is
    used instead when the coordinate is q.
    """
    before, middle, after = jets
    c = jets[:, coordinate]
    curvature = c[2] - 2 * c[1] + c[0]
    s = 0.0
    if curvature != 0:
        s = float(np.clip((c[0] - c[2]) / (2 * curvature), -1.0, 1.0))
    turn = middle + s * (after - before) / 2 + \
           s * s * (after - 2 * middle + before) / 2
    if coordinate == 1 and folds is not None and len(folds):
        reach = np.linalg.norm(after - before)
        d = np.linalg.norm(folds - turn, axis=1)
        if d.min() <= reach:
            turn = folds[int(np.argmin(d))]
    return turn


def _pieces(cloud, coordinate):
    """
    Cut every branch into runs monotone in C{coordinate}. Consecutive runs
    share the jet at which the branch turns, so that each run reaches the
    fold.
    """
    column = {"u": 0, "q": 1, "p": 2}[coordinate]
    X = np.column_stack([cloud.u, cloud.q[:, 0], cloud.p[:, 0]])
    folds = cloud.folds[:, :3] if len(cloud.folds) else None
    pieces = []
    for b in cloud.branch_ids():
        jets = X[cloud.branch_indices(b)]
        c = jets[:, column]
        jets = jets[np.concatenate([[True], np.diff(c) != 0])]
        if len(jets) < 2:
            continue
        d = np.sign(np.diff(jets[:, column]))
        cuts = np.flatnonzero(d[1:] != d[:-1]) + 1
        turns = [_turning_jet(jets[m - 1:m + 2], column, folds)
                 for m in cuts]
        bounds = [0] + list(cuts) + [len(d)]
        for i, (start, stop) in enumerate(zip(bounds[:-1], bounds[1:])):
            run = [jets[start:stop + 1]]
            if i > 0:
                run.insert(0, turns[i - 1][None, :])
            if i < len(turns):
                run.append(turns[i][None, :])
            pieces.append(_Piece(np.concatenate(run), column, b))
    return pieces


def _uncovered(cloud, pieces, nodes, coordinate):
    if not len(cloud):
        return 0
    values = getattr(cloud, coordinate)[:, 0]
    inside = (nodes >= values.min()) & (nodes <= values.max())
    covered = np.zeros(len(nodes), dtype=bool)
    for piece in pieces:
        covered |= piece.covers(nodes)
    return int(np.sum(inside & ~covered))


def _combine(A, B, nodes, coordinate, build):
    _require_curves(A, B)
    nodes = np.asarray(nodes, dtype=float)
    pa, pb = _pieces(A, coordinate), _pieces(B, coordinate)
    skipped = _uncovered(A, pa, nodes, coordinate) + \
              _uncovered(B, pb, nodes, coordinate)
    events = []
    if skipped:
        logger.info("%d grid node(s) not interpolable", skipped)
        events.append({"event": "skipped", "count": skipped})
    rows, branch, source = [], [], []
    label = 0
    lo, hi = (nodes.min(), nodes.max()) if len(nodes) else (0.0, -1.0)
    for i, a in enumerate(pa):
        for j, b in enumerate(pb):
            at = nodes[a.covers(nodes) & b.covers(nodes)]
            # run ends inside the grid: the folds themselves
            ends = np.array([a.lo, a.hi, b.lo, b.hi])
            ends = ends[a.covers(ends) & b.covers(ends) & (ends >= lo) &
                        (ends <= hi)]
            at = np.union1d(at, ends)
            if not len(at):
                continue
            rows.append(build(at, a.at(at), b.at(at)))
            branch.append(np.full(len(at), label))
            source.append(np.column_stack([at, np.full(len(at), i),
                                           np.full(len(at), j)]))
            label += 1
    if not rows:
        return LegendrianCloud.empty(1, events)
    jets = np.concatenate(rows)
    return LegendrianCloud(jets[:, 0], jets[:, 1], jets[:, 2],
                           np.concatenate(branch), np.concatenate(source),
                           events=events, base_dim=1)


def geometric_sum(A, B, q_grid):
    "{(u1 + u2, q, p1 + p2)} over the nodes of C{q_grid}."
    return _combine(A, B, q_grid, "q", lambda q, a, b: np.column_stack(
        [a[0] + b[0], q, a[2] + b[2]]))


def geometric_convolution(A, B, p_grid):
    "{(u1 + u2, q1 + q2, p)} over the nodes of C{p_grid}."
    return _combine(A, B, p_grid, "p", lambda p, a, b: np.column_stack(
        [a[0] + b[0], a[1] + b[1], p]))


def geometric_product(A, B):
    """
    {(u1 + u2, (q1, q2), (p1, p2))} over all pairs of points. The result
    carries a line structure: points sharing a point of A form one line,
    ordered along the branches of B.
    """
    ia, ib = np.meshgrid(np.arange(len(A)), np.arange(len(B)),
                         indexing="ij")
    ia, ib = ia.ravel(), ib.ravel()
    nb = int(B.branch.max()) + 1 if len(B) else 1
    return LegendrianCloud(
        A.u[ia] + B.u[ib], np.column_stack([A.q[ia], B.q[ib]]),
        np.column_stack([A.p[ia], B.p[ib]]), A.branch[ia] * nb + B.branch[ib],
        np.column_stack([ia, ib]), np.column_stack([ia, ib]),
        A.events + B.events, None, A.base_dim + B.base_dim)


###############################################################################
# Slice and contour
###############################################################################

def _level_set(cloud, values, level):
    """
    Points where C{values} crosses C{level} along the lines of a two
    dimensional cloud, as an n = 1 cloud over the first base variable.
    """
    if cloud.base_dim != 2:
        raise ArityError("slice and contour of clouds need two base "
                         "variables", base_dim=cloud.base_dim)
    if cloud.lines is None:
        raise ArityError("cloud has no line structure")
    if not len(cloud):
        return LegendrianCloud.empty(1)
    jets = np.column_stack([cloud.u, cloud.q[:, 0], cloud.p[:, 0]])
    full = cloud.as_array()
    keys = np.column_stack([cloud.branch, cloud.lines[:, 0]])
    order = np.lexsort((cloud.lines[:, 1], keys[:, 1], keys[:, 0]))
    same = np.all(keys[order][1:] == keys[order][:-1], axis=1)
    a, b = order[:-1][same], order[1:][same]
    jumps = np.linalg.norm(full[b] - full[a], axis=1)
    gate = SEGMENT_GATE / 2 * np.median(jumps) if len(jumps) else np.inf
    if not gate > 0:
        gate = np.inf
    da, db = values[a] - level, values[b] - level
    hit = ((da == 0) | (da * db < 0)) & (jumps <= gate)
    t = np.where(da == 0, 0.0, da / np.where(da == db, 1.0, da - db))
    found = jets[a[hit]] + t[hit, None] * (jets[b[hit]] - jets[a[hit]])
    labels = keys[a[hit]]
    # a line ending exactly on the level contributes its last point
    last = np.concatenate([~same, [True]])
    tail = order[last]
    tail = tail[values[tail] == level]
    found = np.concatenate([found, jets[tail]])
    labels = np.concatenate([labels, keys[tail]])
    if not len(found):
        return LegendrianCloud.empty(1)
    # the c-th crossing on a line belongs to output branch (branch, c)
    ordinal = np.zeros(len(found), dtype=int)
    seen = {}
    for j, key in enumerate(map(tuple, labels)):
        ordinal[j] = seen.get(key, 0)
        seen[key] = ordinal[j] + 1
    group = np.column_stack([labels[:, 0], ordinal])
    _, branch = np.unique(group, axis=0, return_inverse=True)
    branch = branch.reshape(-1)
    arrange = np.lexsort((labels[:, 1], branch))
    found, branch = found[arrange], branch[arrange]
    return LegendrianCloud(found[:, 0], found[:, 1], found[:, 2], branch,
                           base_dim=1)


def geometric_slice(cloud, level=0.0):
    "{(u, q1, p1) : (u, (q1, q2), (p1, p2)) in L, q2 = level}."
    return _level_set(cloud, cloud.q[:, 1], level)


def geometric_contour(cloud):
    "{(u, q1, p1) : (u, (q1, q2), (p1, p2)) in L, p2 = 0}."
    return _level_set(cloud, cloud.p[:, 1], 0.0)


def _linear_map(cloud, q_map, p_map):
    if cloud.base_dim != 2:
        raise ArityError("map needs two base variables")
    return LegendrianCloud(cloud.u, cloud.q @ q_map.T, cloud.p @ p_map.T,
                           cloud.branch, cloud.source, cloud.lines,
                           cloud.events, None, 2)


def phi_map(cloud):
    "(u, q1, q2, p1, p2) -> (u, (q1+q2)/2, (q1-q2)/2, p1+p2, p1-p2)."
    M = np.array([[1.0, 1.0], [1.0, -1.0]])
    return _linear_map(cloud, M / 2, M)


def psi_map(cloud):
    "(u, q1, q2, p1, p2) -> (u, q1+q2, q1-q2, (p1+p2)/2, (p1-p2)/2)."
    M = np.array([[1.0, 1.0], [1.0, -1.0]])
    return _linear_map(cloud, M, M / 2)


def sum_via_product(A, B):
    "The sum rebuilt as the slice of phi applied to the product."
    return geometric_slice(phi_map(geometric_product(A, B)))


def convolution_via_product(A, B):
    "The convolution rebuilt as the contour of psi applied to the product."
    return geometric_contour(psi_map(geometric_product(A, B)))


###############################################################################
# Hausdorff distance
###############################################################################

def _segments(cloud):
    "Consecutive point pairs along each branch, long jumps excluded."
    X = cloud.as_array()
    same = cloud.branch[1:] == cloud.branch[:-1]
    a = np.flatnonzero(same)
    if not len(a):
        return X[:0], X[:0]
    length = np.linalg.norm(X[a + 1] - X[a], axis=1)
    scale = np.median(length)
    keep = length <= SEGMENT_GATE * scale if scale > 0 else length > 0
    keep &= length > 0
    return X[a[keep]], X[a[keep] + 1]


def _directed(P, other, polyline):
    "max over P of the distance to the other cloud."
    d, _ = cKDTree(other.as_array()).query(P)
    if not polyline:
        return float(d.max())
    S0, S1 = _segments(other)
    if not len(S0):
        return float(d.max())
    V = S1 - S0
    VV = np.einsum("ij,ij->i", V, V)
    rows = max(1, _CHUNK // (len(S0) * P.shape[1]))
    for start in range(0, len(P), rows):
        chunk = P[start:start + rows]
        R = chunk[:, None, :] - S0[None, :, :]
        t = np.clip(np.einsum("ijk,jk->ij", R, V) / VV, 0.0, 1.0)
        dist = np.linalg.norm(R - t[..., None] * V, axis=-1).min(axis=1)
        d[start:start + rows] = np.minimum(d[start:start + rows], dist)
    return float(d.max())


def hausdorff(A, B, window=None, margin=0.0, polyline=None):
    """
    Symmetric Hausdorff distance between two clouds in (u, q, p) space.

    With a window, the points of each cloud inside it are compared with the
    other cloud cropped to the window widened by C{margin}. Curves (n = 1)
    are compared as polylines along their branches unless C{polyline} is
    False.

    @return: the distance, or +inf if a cloud is empty.
    """
    if A.base_dim != B.base_dim:
        raise ArityError("clouds of different dimensions",
                         left=A.base_dim, right=B.base_dim)
    if polyline is None:
        polyline = A.base_dim == 1
    inner_a, inner_b = crop(A, window), crop(B, window)
    outer_a, outer_b = crop(A, _widen(window, margin)), \
                       crop(B, _widen(window, margin))
    if not (len(inner_a) and len(inner_b) and len(outer_a) and
            len(outer_b)):
        logger.warning("hausdorff distance with an empty cloud")
        return float("inf")
    return max(_directed(inner_a.as_array(), outer_b, polyline),
               _directed(inner_b.as_array(), outer_a, polyline))
