# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Sublevel persistence of a function sampled on a regular grid, relative to a
low sublevel set.

The grid is turned into a cubical complex on the doubled grid: a cell is a
point of the doubled grid, its dimension the number of odd coordinates, and
its value the maximum of the samples at its vertices. Cells with value at
or below the floor are removed, which realises the pair (X, X^floor) as a
quotient complex. The boundary matrix is reduced in filtration order, one
dimension at a time from the top, clearing the columns of cells that are
already known to be paired.

Over Z/2 columns are Python integers used as bit sets; over Q they are
dictionaries of exact fractions.
"""

from fractions import Fraction

import numpy as np

from legendrian.errors import RangeError
from legendrian.util import logger

__all__ = ["Bar", "PersistenceDiagram", "lower_star",
           "sublevel_persistence", "FIELDS"]

FIELDS = ("z2", "q")


class Bar(object):
    "A persistence interval [birth, death) in one degree."

    __slots__ = ("degree", "birth", "death", "cell")

    def __init__(self, degree, birth, death=float("inf"), cell=None):
        self.degree = int(degree)
        self.birth = float(birth)
        self.death = float(death)
        self.cell = cell

    @property
    def essential(self):
        return self.death == float("inf")

    def __repr__(self):
        return "Bar(%d, %g, %g)" % (self.degree, self.birth, self.death)

    def as_dict(self):
        return {"degree": self.degree, "birth": self.birth,
                "death": None if self.essential else self.death,
                "essential": self.essential}


class PersistenceDiagram(object):
    "Bars of a relative sublevel filtration, with the field used."

    def __init__(self, bars, field, floor=None):
        self.bars = sorted(bars, key=lambda b: (b.degree, b.birth, b.death))
        self.field = field
        self.floor = floor

    def __repr__(self):
        return "PersistenceDiagram(%d bars, field=%s)" % (len(self.bars),
                                                          self.field)

    def essential(self, degree=None):
        return [b for b in self.bars if b.essential and
                (degree is None or b.degree == degree)]

    def essential_ranks(self):
        "Number of essential bars per degree, as a dict."
        ranks = {}
        for b in self.essential():
            ranks[b.degree] = ranks.get(b.degree, 0) + 1
        return ranks

    def as_dict(self):
        return {"field": self.field, "floor": self.floor,
                "bars": [b.as_dict() for b in self.bars]}


def lower_star(values):
    "Cell values on the doubled grid: the max over each cell's vertices."
    V = np.asarray(values, dtype=float)
    k = V.ndim
    out = np.full(tuple(2 * s - 1 for s in V.shape), -np.inf)
    out[(slice(None, None, 2),) * k] = V
    for a in range(k):
        odd, lo, hi = [slice(None)] * k, [slice(None)] * k, [slice(None)] * k
        odd[a], lo[a], hi[a] = slice(1, None, 2), slice(0, -1, 2), \
                               slice(2, None, 2)
        out[tuple(odd)] = np.maximum(out[tuple(lo)], out[tuple(hi)])
    return out


def _complex(values, floor):
    """
    Cells of the quotient complex in filtration order.

    @return: (flat cell indices, values, dimensions, boundary lists of
             (position, sign) pairs)
    """
    F = lower_star(values)
    k = F.ndim
    flat = F.ravel()
    coords = np.indices(F.shape).reshape(k, -1).T
    odd = coords % 2 == 1
    dims = odd.sum(axis=1)
    keep = np.ones(len(flat), dtype=bool) if floor is None else flat > floor
    cells = np.flatnonzero(keep)
    cells = cells[np.lexsort((cells, dims[cells], flat[cells]))]
    position = np.full(len(flat), -1)
    position[cells] = np.arange(len(cells))
    strides = [int(np.prod(F.shape[a + 1:])) for a in range(k)]
    boundaries = []
    for c in cells:
        faces, sign = [], 1
        for a in range(k):
            if odd[c, a]:
                below, above = position[c - strides[a]], \
                               position[c + strides[a]]
                if above >= 0:
                    faces.append((int(above), sign))
                if below >= 0:
                    faces.append((int(below), -sign))
                sign = -sign
        boundaries.append(faces)
    return cells, flat[cells], dims[cells], boundaries


class _Z2Columns(object):
    "Boundary columns over Z/2 as bit sets."

    def __init__(self, boundary):
        self.columns = [sum(1 << r for (r, _) in faces)
                        for faces in boundary]

    @staticmethod
    def low(col):
        return col.bit_length() - 1

    @staticmethod
    def add(col, other):
        return col ^ other


class _QColumns(object):
    "Boundary columns over Q as {row: Fraction} dictionaries."

    def __init__(self, boundary):
        self.columns = [dict((r, Fraction(s)) for (r, s) in faces)
                        for faces in boundary]

    @staticmethod
    def low(col):
        return max(col)

    @staticmethod
    def add(col, other):
        r = max(other)
        factor = col[r] / other[r]
        col = dict(col)
        for row, value in other.items():
            new = col.get(row, 0) - factor * value
            if new:
                col[row] = new
            else:
                col.pop(row, None)
        return col


def sublevel_persistence(values, floor=None, field="z2"):
    """
    Persistence of the sublevel filtration of grid samples, relative to the
    cells at or below C{floor}.

    @param values: samples on a regular grid, one array axis per variable.
    @param field: C{"z2"} or C{"q"}.
    @rtype: L{PersistenceDiagram}
    """
    if field not in FIELDS:
        raise RangeError("unknown coefficient field %r" % field, field=field)
    cells, cell_values, dims, boundary = _complex(values, floor)
    algebra = (_Z2Columns if field == "z2" else _QColumns)(boundary)
    columns = algebra.columns
    reduced, low_of = {}, {}
    for d in range(int(dims.max()) if len(dims) else 0, 0, -1):
        for j in np.flatnonzero(dims == d):
            if j in low_of:
                continue
            col = columns[j]
            while col:
                other = low_of.get(algebra.low(col))
                if other is None:
                    break
                col = algebra.add(col, reduced[other])
            if col:
                low_of[algebra.low(col)] = j
                reduced[j] = col
    bars = []
    for i, j in low_of.items():
        if cell_values[i] < cell_values[j]:
            bars.append(Bar(dims[i], cell_values[i], cell_values[j],
                            int(cells[i])))
    for i in range(len(cells)):
        if i not in reduced and i not in low_of:
            bars.append(Bar(dims[i], cell_values[i], cell=int(cells[i])))
    logger.debug("reduced %d cells over %s: %d bars", len(cells), field,
                 len(bars))
    return PersistenceDiagram(bars, field, floor)
