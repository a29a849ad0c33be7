# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Writing clouds and fronts to CSV, JSON and SVG.

SVG output draws fronts only: one dimensional fronts as one polyline per
branch with cusp markers, two dimensional ones as point meshes seen from
fixed orthographic angles.
"""

import json
import os

import numpy as np
from matplotlib.figure import Figure
from mpl_toolkits.mplot3d import Axes3D  # registers the 3d projection

from legendrian.errors import UnsupportedExportError
from legendrian.front.cloud import LegendrianCloud
from legendrian.front.cusps import detect_cusps
from legendrian.front.geometry import wave_front
from legendrian.util import logger

__all__ = ["export", "FORMATS", "VIEWS"]

FORMATS = ("csv", "json", "svg")

# (elevation, azimuth) of the orthographic views of a surface front
VIEWS = ((25.0, -60.0), (10.0, 20.0), (70.0, 135.0))


def _columns(obj):
    n = obj.base_dim
    names = lambda stem: [stem] if n == 1 else \
                         ["%s%d" % (stem, i + 1) for i in range(n)]
    if isinstance(obj, LegendrianCloud):
        return ["u"] + names("q") + names("p") + ["branch"], \
               np.column_stack([obj.as_array(), obj.branch])
    return ["u"] + names("q") + ["branch"], \
           np.column_stack([obj.u, obj.q, obj.branch])


def _write_csv(obj, path, cusps):
    header, table = _columns(obj)
    fmt = ["%.17g"] * (len(header) - 1) + ["%d"]
    np.savetxt(path, table.reshape(-1, len(header)), fmt=fmt, delimiter=",",
               header=",".join(header), comments="")


def _write_json(obj, path, cusps):
    header, table = _columns(obj)
    data = {"base_dim": obj.base_dim, "columns": header,
            "rows": table.reshape(-1, len(header)).tolist(),
            "cusps": [c.as_dict() for c in cusps or ()]}
    if isinstance(obj, LegendrianCloud):
        data["events"] = obj.events
    with open(path, "w") as f:
        json.dump(data, f, indent=1, sort_keys=True)


def _draw_curve(front, cusps, title):
    fig = Figure(figsize=(6, 4.5))
    ax = fig.add_subplot(1, 1, 1)
    q = front.q[:, 0]
    for b in front.branch_ids():
        idx = front.branch_indices(b)
        ax.plot(q[idx], front.u[idx], linewidth=1.0)
    for c in cusps or ():
        ax.plot([c.q], [c.u], "o" if c.kind == "cusp" else "s",
                color="black", markersize=4)
    ax.set_xlabel("q")
    ax.set_ylabel("u")
    if title:
        ax.set_title(title)
    return fig


def _draw_surface(front, title, views):
    fig = Figure(figsize=(5 * len(views), 4.5))
    for i, (elev, azim) in enumerate(views):
        ax = fig.add_subplot(1, len(views), i + 1, projection="3d")
        ax.set_proj_type("ortho")
        for b in front.branch_ids():
            idx = front.branch_indices(b)
            ax.scatter(front.q[idx, 0], front.q[idx, 1], front.u[idx], s=0.5)
        ax.view_init(elev=elev, azim=azim)
        ax.set_xlabel("q1")
        ax.set_ylabel("q2")
        ax.set_zlabel("u")
    if title:
        fig.suptitle(title)
    return fig


def _write_svg(obj, path, cusps, title=None, views=VIEWS):
    front = wave_front(obj) if isinstance(obj, LegendrianCloud) else obj
    if front.base_dim == 1:
        fig = _draw_curve(front, cusps, title)
    elif front.base_dim == 2:
        fig = _draw_surface(front, title, views)
    else:
        raise UnsupportedExportError("svg needs a front with one or two base "
                                     "variables", base_dim=front.base_dim)
    fig.savefig(path, format="svg")


writers = {
    "csv": _write_csv,
    "json": _write_json,
    "svg": _write_svg,
}


def export(obj, path, fmt=None, cusps=None, **options):
    """
    Write a cloud or front to C{path}.

    @param fmt: one of L{FORMATS}; taken from the file extension if None.
    @param cusps: singularities to mark; detected on one dimensional fronts
                  when not given.
    @param options: C{title} and C{views} for SVG output.
    @raise UnsupportedExportError: on an unknown format or a front the
                                   format cannot draw.
    """
    if fmt is None:
        fmt = os.path.splitext(path)[1].lstrip(".").lower()
    if fmt not in writers:
        raise UnsupportedExportError("unknown export format %r" % fmt,
                                     format=fmt)
    if cusps is None and obj.base_dim == 1 and len(obj):
        front = wave_front(obj) if isinstance(obj, LegendrianCloud) else obj
        cusps = detect_cusps(front)
    logger.debug("exporting %r to %s", obj, path)
    if fmt == "svg":
        writers[fmt](obj, path, cusps, **options)
    else:
        writers[fmt](obj, path, cusps)
    return path
