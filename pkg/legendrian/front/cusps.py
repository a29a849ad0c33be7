# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Singular points of one dimensional wave fronts.

A cusp is a point where q turns back along a branch. A vertex is a run of
points that all project to one (u, q) while q keeps its direction on both
sides: the front has a corner there rather than a cusp.
"""

import numpy as np

from legendrian.errors import ArityError

__all__ = ["Singularity", "detect_cusps", "count_singularities",
           "STATIONARY_RTOL"]

STATIONARY_RTOL = 1e-12


class Singularity(object):
    "A cusp or vertex of a front."

    __slots__ = ("kind", "u", "q", "branch")

    def __init__(self, kind, u, q, branch):
        self.kind = kind
        self.u = float(u)
        self.q = float(q)
        self.branch = int(branch)

    def __repr__(self):
        return "Singularity(%r, u=%g, q=%g)" % (self.kind, self.u, self.q)

    def as_dict(self):
        return {"kind": self.kind, "u": self.u, "q": self.q,
                "branch": self.branch}


def _on_fold(u, q, folds):
    if folds is None or not len(folds):
        return False
    return bool(np.any((np.abs(folds[:, 0] - u) <= 1e-12) &
                       (np.abs(folds[:, 1] - q) <= 1e-12)))


def _turning_point(u, q, j, folds):
    "Refine the extremum of q at index j from its neighbours."
    if _on_fold(u[j], q[j], folds):
        return u[j], q[j]
    s = np.array([-1.0, 0.0, 1.0])
    window = slice(j - 1, j + 2)
    fit_q = np.polyfit(s, q[window], 2)
    if fit_q[0] == 0:
        return u[j], q[j]
    t = np.clip(-fit_q[1] / (2 * fit_q[0]), -1.0, 1.0)
    fit_u = np.polyfit(s, u[window], 2)
    return np.polyval(fit_u, t), np.polyval(fit_q, t)


def _branch_singularities(u, q, b, folds):
    found = []
    if len(q) < 3:
        return found
    d = np.diff(q)
    eps = STATIONARY_RTOL * (1.0 + np.abs(q).max())
    sign = np.where(np.abs(d) <= eps, 0, np.sign(d))
    moving = np.flatnonzero(sign)
    for k1, k2 in zip(moving[:-1], moving[1:]):
        run = np.arange(k1 + 1, k2 + 1)
        if sign[k1] != sign[k2]:
            if k2 == k1 + 1:
                uc, qc = _turning_point(u, q, k2, folds)
            else:
                uc, qc = u[run].mean(), q[run].mean()
            found.append(Singularity("cusp", uc, qc, b))
        elif k2 > k1 + 1 and np.ptp(u[run]) <= eps * (1 + np.abs(u).max()):
            found.append(Singularity("vertex", u[run].mean(), q[run].mean(),
                                     b))
    return found


def detect_cusps(front):
    """
    Cusps and vertices of a front with one base variable, branch by branch
    in branch order.

    @rtype: list of L{Singularity}
    """
    if front.base_dim != 1:
        raise ArityError("cusp detection needs one base variable",
                         base_dim=front.base_dim)
    found = []
    q = front.q[:, 0]
    for b in front.branch_ids():
        idx = front.branch_indices(b)
        found.extend(_branch_singularities(front.u[idx], q[idx], b,
                                           front.folds))
    return found


def count_singularities(singularities):
    "Counts per kind, as a dict."
    counts = {"cusp": 0, "vertex": 0}
    for s in singularities:
        counts[s.kind] += 1
    return counts
