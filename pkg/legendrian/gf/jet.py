# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import numpy as np

from legendrian.errors import ArityError, RangeError

__all__ = ["Point1Jet"]


class Point1Jet(object):
    """
    A point (u, q, p) of the 1-jet space: u is the jet value, q the base
    point and p the slope, q and p of the same length n.
    """

    __slots__ = ("u", "q", "p")

    def __init__(self, u, q, p):
        q = np.atleast_1d(np.asarray(q, dtype=float))
        p = np.atleast_1d(np.asarray(p, dtype=float))
        if q.shape != p.shape or q.ndim != 1:
            raise ArityError("q and p must be vectors of the same length",
                             q=q.shape, p=p.shape)
        u = float(u)
        if not (np.isfinite(u) and np.isfinite(q).all() and
                np.isfinite(p).all()):
            raise RangeError("1-jet entries must be finite")
        self.u, self.q, self.p = u, q, p

    @property
    def n(self):
        return len(self.q)

    def __repr__(self):
        return "Point1Jet(%r, %r, %r)" % (self.u, self.q.tolist(),
                                          self.p.tolist())

    def __eq__(self, other):
        return type(other) is Point1Jet and self.u == other.u and \
               np.array_equal(self.q, other.q) and \
               np.array_equal(self.p, other.p)

    def __hash__(self):
        return hash((self.u, tuple(self.q), tuple(self.p)))

    def as_array(self):
        "The point as a flat array (u, q..., p...)."
        return np.concatenate([[self.u], self.q, self.p])

    def transform_T(self):
        "The image (p.q - u, p, q) under the transformation T."
        return Point1Jet(np.dot(self.p, self.q) - self.u, self.p, self.q)
