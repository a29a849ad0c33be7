# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Uniformly sampled functions of one variable with an explicit tail model.

A L{GridFunction} stores samples on x0, x0 + step, ... together with a
L{TailModel} saying what the function is outside the sampled interval, and a
mask of entries equal to +infinity.
"""

import json

import numpy as np
from numpy.polynomial import polynomial as npoly

from legendrian.errors import RangeError, ScenarioError

__all__ = ["TailModel", "GridFunction", "SIDES", "EDGE_TOLERANCE"]

SIDES = ("left", "right")
EDGE_TOLERANCE = 1e-9


class TailModel(object):
    """
    Behaviour of a sampled function outside its grid.

    A "poly" tail gives a polynomial (ascending coefficients in the absolute
    variable) per side; C{coefficients} sets both sides at once. A "domain"
    tail declares the function to be +infinity outside the grid.

    @type  index: int or None
    @param index: Morse index of the tail; 0 for convex growth, 1 for
                  concave growth, None if undeclared.
    """

    def __init__(self, kind="poly", coefficients=None, left=None, right=None,
                 index=None):
        if kind not in ("poly", "domain"):
            raise RangeError("unknown tail kind %r" % kind, kind=kind)
        self.kind = kind
        self.index = index
        if kind == "poly":
            if coefficients is not None:
                left = right = coefficients
            if left is None or right is None:
                raise RangeError("polynomial tail needs coefficients on both "
                                 "sides")
            self.left = np.trim_zeros(np.asarray(left, float), "b")
            self.right = np.trim_zeros(np.asarray(right, float), "b")
            if not len(self.left): self.left = np.zeros(1)
            if not len(self.right): self.right = np.zeros(1)
        else:
            self.left = self.right = None

    def __repr__(self):
        if self.kind == "domain":
            return "TailModel('domain')"
        return "TailModel(left=%r, right=%r, index=%r)" % \
                   (tuple(self.left), tuple(self.right), self.index)

    def coefficients(self, side):
        "Polynomial of one side, or None for a domain tail."
        return getattr(self, side)

    def evaluate(self, side, x, order=0):
        c = self.coefficients(side)
        if c is None:
            raise RangeError("function is +inf outside its grid", side=side)
        if order:
            c = npoly.polyder(c, order)
        return npoly.polyval(np.asarray(x, float), c)

    def growth(self, side):
        """
        Classify the growth of one side towards infinity: "domain",
        "superlinear", "linear" (affine) or "concave" (no affine minorant).
        """
        c = self.coefficients(side)
        if c is None:
            return "domain"
        degree = len(c) - 1
        if degree <= 1:
            return "linear"
        lead = c[-1]
        if side == "left" and degree % 2:
            lead = -lead
        return "superlinear" if lead > 0 else "concave"

    def as_dict(self):
        if self.kind == "domain":
            return {"kind": "domain", "index": self.index}
        return {"kind": "poly", "left": list(self.left),
                "right": list(self.right), "index": self.index}

    @staticmethod
    def from_dict(data):
        data = dict(data)
        try:
            return TailModel(kind=data.get("kind", "poly"),
                             coefficients=data.get("coefficients"),
                             left=data.get("left"), right=data.get("right"),
                             index=data.get("index"))
        except RangeError as e:
            raise ScenarioError("bad tail model: %s" % e, tail=data)


class GridFunction(object):
    """
    A function of one variable sampled on a uniform grid.

    Entries flagged in C{mask} are +infinity; their stored values carry no
    meaning.
    """

    def __init__(self, x0, step, values, tail=None, mask=None):
        if not step > 0:
            raise RangeError("grid step must be positive", step=step)
        values = np.array(values, dtype=float)
        if values.ndim != 1 or len(values) < 2:
            raise RangeError("grid functions need at least two samples")
        if mask is None:
            mask = ~np.isfinite(values)
        mask = np.array(mask, dtype=bool)
        values[mask] = 0.0
        self.x0 = float(x0)
        self.step = float(step)
        self.values = values
        self.mask = mask
        self.tail = tail if tail is not None else TailModel("domain")

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return "GridFunction(x0=%g, step=%g, n=%d, tail=%r)" % \
                   (self.x0, self.step, len(self), self.tail)

    @property
    def x(self):
        return self.x0 + self.step * np.arange(len(self.values))

    @property
    def x_end(self):
        return self.x0 + self.step * (len(self.values) - 1)

    def finite(self):
        "Nodes and values of the unmasked entries."
        keep = ~self.mask
        return self.x[keep], self.values[keep]

    def masked_values(self):
        "Values with masked entries set to +inf."
        out = self.values.copy()
        out[self.mask] = np.inf
        return out

    def __call__(self, t):
        """
        Evaluate by linear interpolation inside the grid and by the tail
        model outside. Points next to a masked entry evaluate to +inf.
        """
        t = np.asarray(t, float)
        scalar = t.ndim == 0
        t = np.atleast_1d(t)
        out = np.empty(t.shape)
        # points within roundoff of an end are on the grid
        edge = EDGE_TOLERANCE * self.step
        left = t < self.x0 - edge
        right = t > self.x_end + edge
        inside = ~(left | right)
        pos = (t[inside] - self.x0) / self.step
        i = np.clip(np.floor(pos).astype(int), 0, len(self) - 2)
        frac = np.clip(pos - i, 0.0, 1.0)
        vals = (1 - frac) * self.values[i] + frac * self.values[i + 1]
        bad = (self.mask[i] & (frac < 1)) | (self.mask[i + 1] & (frac > 0))
        vals[bad] = np.inf
        out[inside] = vals
        for side, where in (("left", left), ("right", right)):
            if where.any():
                if self.tail.kind == "domain":
                    out[where] = np.inf
                else:
                    out[where] = self.tail.evaluate(side, t[where])
        if scalar:
            return float(out[0])
        return out

    def with_values(self, values, mask=None):
        "Same grid and tail, new samples."
        return GridFunction(self.x0, self.step, values, self.tail, mask)

    def resample(self, x0, step, count):
        "Linear resampling onto another uniform grid."
        t = x0 + step * np.arange(count)
        values = self(t)
        return GridFunction(x0, step, values, self.tail)

    @staticmethod
    def from_function(function, lo, hi, step, tail=None):
        "Sample C{function} on [lo, hi]."
        count = int(round((hi - lo) / step)) + 1
        x = lo + step * np.arange(count)
        return GridFunction(lo, step, function(x), tail)

    @staticmethod
    def from_nodes(x, values, tail=None):
        "Build from explicit, uniformly spaced nodes."
        x = np.asarray(x, float)
        step = float(x[1] - x[0])
        if not np.allclose(np.diff(x), step, rtol=1e-6, atol=1e-12):
            raise RangeError("nodes are not uniformly spaced")
        return GridFunction(x[0], step, values, tail)

    ###########################################################################
    # CSV with a JSON sidecar for the tail model
    ###########################################################################

    @staticmethod
    def load(csv_path, sidecar_path=None):
        """
        Read a grid function from CSV (columns C{x}, C{value}) and, if given,
        a JSON sidecar declaring the tail model.
        """
        try:
            data = np.genfromtxt(csv_path, delimiter=",", names=True)
            x, values = data["x"], data["value"]
        except (ValueError, KeyError, IndexError) as e:
            raise ScenarioError("cannot read grid function: %s" % e,
                                path=str(csv_path))
        tail = None
        if sidecar_path is not None:
            with open(sidecar_path) as f:
                tail = TailModel.from_dict(json.load(f))
        return GridFunction.from_nodes(x, values, tail)

    def save(self, csv_path, sidecar_path=None):
        values = self.masked_values()
        with open(csv_path, "w") as f:
            f.write("x,value\n")
            for x, v in zip(self.x, values):
                f.write("%.17g,%.17g\n" % (x, v))
        if sidecar_path is not None:
            with open(sidecar_path, "w") as f:
                json.dump(self.tail.as_dict(), f, indent=2)
