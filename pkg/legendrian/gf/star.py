# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Numerical check of the transversality condition: grad_w F must be
transverse to 0, i.e. the k x (n + k) Jacobian of grad_w F has full rank at
every fiber critical point.
"""

import numpy as np

from legendrian.errors import ArityError
from legendrian.front.roots import solve_fiber_critical
from legendrian.util import logger, parallel_map

__all__ = ["StarReport", "check_star_condition", "sigma_min",
           "RANK_RTOL"]

RANK_RTOL = 1e-6


class StarReport(object):
    """
    Outcome of L{check_star_condition}. C{witnesses} lists every critical
    point found as a dict with its (q, w) and smallest singular value;
    C{failures} are those below the threshold.
    """

    def __init__(self, satisfied, worst_sigma_min, witnesses, failures,
                 flags=()):
        self.satisfied = satisfied
        self.worst_sigma_min = worst_sigma_min
        self.witnesses = witnesses
        self.failures = failures
        self.flags = list(flags)

    def __bool__(self):
        return self.satisfied

    def __repr__(self):
        return "StarReport(satisfied=%r, worst_sigma_min=%r, witnesses=%d)" \
                   % (self.satisfied, self.worst_sigma_min,
                      len(self.witnesses))

    def as_dict(self):
        return {"satisfied": self.satisfied,
                "worst_sigma_min": self.worst_sigma_min,
                "witnesses": len(self.witnesses),
                "failures": self.failures[:10], "flags": self.flags}


def sigma_min(F, x):
    """
    Smallest singular value of the Jacobian of grad_w F at the points x,
    and the threshold it is compared with.
    """
    H = F.hessian(x)
    J = H[..., F.base_dim:, :]
    sigma = np.linalg.svd(J, compute_uv=False)[..., -1]
    scale = np.abs(J).max(axis=(-2, -1))
    return sigma, RANK_RTOL * (1.0 + scale)


def _q_nodes(box, step):
    axes = [np.linspace(lo, hi, max(int(round((hi - lo) / step)), 1) + 1)
            for (lo, hi) in box]
    return np.stack(np.meshgrid(*axes, indexing="ij"), -1).reshape(
        -1, len(box))


def check_star_condition(F, box, grid_step, workers=None):
    """
    Check transversality on a box of (q, w) space.

    @param box: (lo, hi) pairs for the base variables followed by the fiber
                variables.
    @return: a L{StarReport}. If no critical point is found the report is
             vacuously satisfied and flagged "empty contour in box".
    """
    n, k = F.base_dim, F.fiber_dim
    if k < 1:
        raise ArityError("the transversality condition needs fibers")
    if len(box) != n + k:
        raise ArityError("box has %d intervals for %d variables" %
                         (len(box), n + k))
    fiber_box = list(box[n:])
    qs = _q_nodes(box[:n], grid_step)
    solved = parallel_map(
        lambda q: solve_fiber_critical(F, q, fiber_box, grid_step), qs,
        workers)
    points = [F.join(r.q, w) for r in solved for w in r]
    flags = []
    for r in solved:
        flags.extend(e["event"] for e in r.events)
    if not points:
        logger.info("empty contour in box for %r", F)
        return StarReport(True, float("inf"), [], [],
                          sorted(set(flags)) + ["empty contour in box"])
    x = np.array(points)
    sigma, threshold = sigma_min(F, x)
    witnesses = [{"q": xi[:n].tolist(), "w": xi[n:].tolist(),
                  "sigma_min": float(s)} for (xi, s) in zip(x, sigma)]
    failures = [w for (w, s, t) in zip(witnesses, sigma, threshold)
                if not s > t]
    if failures:
        logger.warning("transversality fails at %d point(s) of %r",
                       len(failures), F)
    return StarReport(not failures, float(sigma.min()), witnesses, failures,
                      sorted(set(flags)))
