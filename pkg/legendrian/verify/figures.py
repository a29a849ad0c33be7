# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Figure reproduction.

Each figure is rebuilt from the generating functions and transforms of the
package and written as SVG panels, together with a JSON file of the
qualitative features a reader would check against the drawing: branch and
cusp counts, corner points, key coordinates. Features are computed, never
compared pixel by pixel.

C{fig2} (slices of the swallow tail) and C{fig3} (toric pillow) are
best-effort meshes and need C{experimental=True}.
"""

import json
import os

import numpy as np
from matplotlib.figure import Figure

from legendrian.convex import GridFunction, TailModel, lf_transform
from legendrian.errors import ScenarioError
from legendrian.front import base_grid, detect_cusps, export, geometric_T, \
                             sample_legendrian, wave_front
from legendrian.front.cloud import LegendrianCloud
from legendrian.front.cusps import count_singularities
from legendrian.gf import Poly1D, Polynomial, product_gf, substitute_base, \
                          sum_gf, transform_T
from legendrian.selector import selector
from legendrian.util import logger, parallel_map
from legendrian.verify.report import jsonable
from legendrian.verify.suites import _minmax_at, closed_forms

__all__ = ["FIGURES", "EXPERIMENTAL_FIGURES", "reproduce_figure"]

FIGURES = ("fig1", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9")
EXPERIMENTAL_FIGURES = ("fig2", "fig3")

QUARTIC = Poly1D([0, 0, -3, 0, 1])


def _nodes(lo, hi, step):
    return lo + step * np.arange(int(round((hi - lo) / step)) + 1)


def _one_graph(f, df, q):
    "The 1-graph of f over a grid, as a single branch."
    return LegendrianCloud(f(q), q, df(q))


def _quartic(q):
    return q ** 4 - 3 * q ** 2


def _quartic_slope(q):
    return 4 * q ** 3 - 6 * q


def _convex_hull(f, lo, hi, step, slopes):
    "f** sampled on [lo, hi], conjugating through a wide slope grid."
    g = GridFunction.from_function(f, lo, hi, step)
    fstar = lf_transform(g, _nodes(-slopes, slopes, step))
    return lf_transform(fstar, g)


def _self_crossings(q, u):
    "Number of proper crossings between non-adjacent segments of a polyline."
    P = np.column_stack([q, u])
    A, B = P[:-1], P[1:]
    d = B - A
    cross = lambda v, w: v[..., 0] * w[..., 1] - v[..., 1] * w[..., 0]
    r1 = cross(d[:, None], A[None, :] - A[:, None])
    r2 = cross(d[:, None], B[None, :] - A[:, None])
    r3 = cross(d[None, :], A[:, None] - A[None, :])
    r4 = cross(d[None, :], B[:, None] - A[None, :])
    hit = (r1 * r2 < 0) & (r3 * r4 < 0)
    return int(np.triu(hit, 2).sum())


def _panels(count, width=4.5):
    fig = Figure(figsize=(width * count, 4.0))
    return fig, [fig.add_subplot(1, count, i + 1) for i in range(count)]


def _save(fig, out_dir, name, files):
    path = os.path.join(out_dir, name)
    fig.savefig(path, format="svg")
    files.append(path)


def _export(obj, out_dir, name, files, **options):
    files.append(export(obj, os.path.join(out_dir, name), "svg", **options))


def _front_features(front):
    found = detect_cusps(front)
    counts = count_singularities(found)
    return {"branches": len(front.branch_ids()),
            "cusp_count": counts["cusp"], "vertex_count": counts["vertex"],
            "singularities": [s.as_dict() for s in found]}


###############################################################################
# Figures
###############################################################################

def _fig1(out_dir, files):
    "T applied to the 1-graph of q^4 - 3 q^2."
    q = _nodes(-2.0, 2.0, 0.005)
    cloud = geometric_T(_one_graph(_quartic, _quartic_slope, q))
    front = wave_front(cloud)
    features = _front_features(front)
    _export(cloud, out_dir, "fig1_front.svg", files,
            title="T(j1 f), f = q^4 - 3q^2")
    expected = [(-0.75, -2 * np.sqrt(2)), (-0.75, 2 * np.sqrt(2))]
    cusps = sorted(((s["u"], s["q"]) for s in features["singularities"]
                    if s["kind"] == "cusp"), key=lambda c: c[1])
    if len(cusps) == len(expected):
        features["cusp_error"] = max(np.hypot(u - eu, c - ec) for
                                     ((u, c), (eu, ec)) in
                                     zip(cusps, expected))
    features["expected_cusps"] = expected
    features["self_crossings"] = _self_crossings(front.q[:, 0], front.u)
    return features


def _opposite_cusps(offset):
    "(q + a) w - w^3 plus (q - a) w + w^3: cusps opening towards each other."
    left = Polynomial([(1.0, (1, 1)), (offset, (0, 1)), (-1.0, (0, 3))], 1,
                      ("w",))
    right = Polynomial([(1.0, (1, 1)), (-offset, (0, 1)), (1.0, (0, 3))], 1,
                       ("w",))
    return sum_gf(left, right)


def _fig4(out_dir, files):
    "Sums of two opposite cusps, on either side of the degenerate offset."
    features = {}
    q = _nodes(-1.0, 1.0, 0.01)
    for name, offset in (("apart", -0.5), ("degenerate", 0.0),
                         ("overlapping", 0.5)):
        cloud = sample_legendrian(_opposite_cusps(offset), q,
                                  [(-1.0, 1.0), (-1.0, 1.0)], 0.05)
        entry = _front_features(wave_front(cloud)) if len(cloud) else \
                {"branches": 0, "cusp_count": 0, "vertex_count": 0,
                 "singularities": []}
        entry.update(offset=offset, points=len(cloud),
                     events=sorted(set(e.get("event", "") for e in
                                       cloud.events)))
        features[name] = entry
        _export(cloud, out_dir, "fig4_%s.svg" % name, files,
                title="offset %g" % offset)
    return features


def _fig5(out_dir, files):
    "Sum of two transverse lines of cusps: a handkerchief."
    lines = Polynomial([(1.0, (1, 0, 1)), (-1.0, (0, 0, 3))], 2,
                       ("w",))
    other = Polynomial([(1.0, (0, 1, 1)), (1.0, (0, 0, 3))], 2,
                       ("w",))
    axis = _nodes(-1.0, 1.0, 0.05)
    cloud = sample_legendrian(sum_gf(lines, other), base_grid(axis, axis),
                              [(-1.0, 1.0), (-1.0, 1.0)], 0.05)
    _export(cloud, out_dir, "fig5_handkerchief.svg", files,
            title="sum of two lines of cusps",
            views=((25.0, -60.0), (70.0, 135.0)))
    return {"points": len(cloud), "sheets": len(cloud.branch_ids()),
            "q1_range": [float(cloud.q[:, 0].min()),
                         float(cloud.q[:, 0].max())] if len(cloud) else [],
            "q2_range": [float(cloud.q[:, 1].min()),
                         float(cloud.q[:, 1].max())] if len(cloud) else []}


def _fig6(out_dir, files):
    "The Legendre-Fenchel construction on q^2 + 3q."
    f = Poly1D([0, 3, 1])
    v = _nodes(-6.0, 3.0, 0.01)
    p = _nodes(-2.0, 8.0, 0.01)
    g = GridFunction.from_function(lambda x: x ** 2 + 3 * x, -10.0, 10.0,
                                   0.01, TailModel(coefficients=[0, 3, 1],
                                                   index=0))
    fstar = lf_transform(g, p)
    exact = (p - 3) ** 2 / 4
    curve = selector(transform_T(f), _nodes(-2.0, 8.0, 0.1), [(-8.0, 8.0)],
                     0.1)
    tops = []
    fig, (a1, a2, a3) = _panels(3)
    a1.plot(v, f.value(v[:, None]))
    a1.set_title("f(v) = v^2 + 3v")
    for slope in (-2.0, 0.0, 2.0, 4.0, 6.0):
        a2.plot(v, slope * v - f.value(v[:, None]), linewidth=0.8)
        top = (slope - 3) / 2
        tops.append([slope, top, (slope - 3) ** 2 / 4])
        a2.plot([top], [(slope - 3) ** 2 / 4], "o", color="black",
                markersize=3)
    a2.set_title("v -> qv - f(v)")
    a3.plot(p, fstar.masked_values(), label="f*")
    a3.plot(curve.q, curve.values, ".", markersize=3, label="s(F_T f)")
    a3.legend()
    a3.set_title("f*(q) = (q - 3)^2 / 4")
    _save(fig, out_dir, "fig6_construction.svg", files)
    return {"conjugate_gap": float(np.abs(fstar.values - exact).max()),
            "selector_gap": float(np.abs(curve.values -
                                         (curve.q - 3) ** 2 / 4).max()),
            "tops": tops}


def _fig7(out_dir, files):
    "The flat well: a corner emerges under * and T."
    f, df, conjugate, tail = closed_forms["flat_well"]
    q = _nodes(-2.5, 2.5, 0.01)
    cloud = geometric_T(_one_graph(f, df, q))
    front = wave_front(cloud)
    features = _front_features(front)
    g = GridFunction.from_function(f, -3.0, 3.0, 0.001, tail())
    p = _nodes(-3.0, 3.0, 0.001)
    fstar = lf_transform(g, p)
    fss = lf_transform(fstar, _nodes(-1.4, 1.4, 0.001))
    q2 = fss.x
    features.update(
        conjugate_gap=float(np.abs(fstar.values - conjugate(p)).max()),
        biconjugate_gap=float(np.abs(fss.masked_values() - f(q2)).max()),
        arcs=int((front.q[:, 0] < -1e-9).any()) +
             int((front.q[:, 0] > 1e-9).any()))
    fig, (a1, a2, a3) = _panels(3)
    a1.plot(q, f(q))
    a1.set_title("f")
    a2.plot(p, fstar.masked_values())
    a2.set_title("f*")
    a3.plot(q2, fss.masked_values())
    a3.set_title("f**")
    _save(fig, out_dir, "fig7_round_trip.svg", files)
    _export(cloud, out_dir, "fig7_front.svg", files, title="T(j1 f)")
    return features


def _fig8(out_dir, files):
    "Round trips of q^4 - 3 q^2: T twice against * twice."
    q = _nodes(-2.0, 2.0, 0.005)
    graph = _one_graph(_quartic, _quartic_slope, q)
    once = geometric_T(graph)
    twice = geometric_T(once)
    hull = _convex_hull(_quartic, -3.0, 3.0, 0.01, 30.0)
    x, h = hull.x, hull.masked_values()
    keep = np.isfinite(h) & (np.abs(x) <= 2.0)
    fig, (a1, a2, a3, a4) = _panels(4, 3.5)
    a1.plot(q, _quartic(q))
    a1.set_title("f")
    a2.plot(once.q[:, 0], once.u)
    a2.set_title("T(j1 f)")
    a3.plot(twice.q[:, 0], twice.u)
    a3.set_title("TT(j1 f)")
    a4.plot(x[keep], h[keep])
    a4.set_title("f**")
    _save(fig, out_dir, "fig8_round_trips.svg", files)
    at0 = float(hull(0.0))
    return {"tt_gap": float(max(np.abs(twice.u - _quartic(twice.q[:, 0]))
                                .max(), np.abs(twice.q[:, 0] - q).max())),
            "hull_at_0": at0, "f_at_0": 0.0,
            "hull_differs": bool(abs(at0) > 1.0)}


def _fig9(out_dir, files, workers=None):
    "Selector of F_TT f against the convex hull of f."
    f = QUARTIC
    F = transform_T(transform_T(f))
    qs = _nodes(-1.5, 1.5, 0.25) + 0.0125
    params = {"perturb": 0.04}
    values = np.array(parallel_map(
        lambda q: _minmax_at(F, [q], [(-6.0, 6.0), (-3.0, 3.0)], 0.1,
                             params), qs, workers))
    hull = _convex_hull(_quartic, -3.0, 3.0, 0.01, 30.0)
    h = hull(qs)
    dense = _nodes(-1.6, 1.6, 0.01)
    fig, (ax,) = _panels(1, 6.0)
    ax.plot(dense, _quartic(dense), linewidth=0.8, label="f")
    ax.plot(dense, hull(dense), linewidth=0.8, label="f**")
    ax.plot(qs, values, "o", markersize=3, label="s(F_TT f)")
    ax.legend()
    _save(fig, out_dir, "fig9_selector_vs_hull.svg", files)
    apart = np.abs(qs) < 1.0
    return {"selector_gap": float(np.abs(values - _quartic(qs)).max()),
            "hull_gap_inside": float(np.abs(values - h)[apart].min()),
            "q": qs, "selector": values, "hull": h}


def _fig2(out_dir, files):
    "Slices of the swallow tail w^4 + q1 w^2 + q2 w at fixed q1."
    F = Polynomial([(1.0, (0, 0, 4)), (1.0, (1, 0, 2)), (1.0, (0, 1, 1))], 2,
                   ("w",))
    q = _nodes(-1.5, 1.5, 0.01)
    features = {}
    for level in (-1.0, 0.0, 1.0):
        cloud = sample_legendrian(substitute_base(F, 0, level), q,
                                  [(-2.0, 2.0)], 0.01)
        name = "q1=%g" % level
        features[name] = _front_features(wave_front(cloud))
        _export(cloud, out_dir, "fig2_slice_%d.svg" % len(features), files,
                title=name)
    return features


def _fig3(out_dir, files):
    "Product of two flying saucers: the toric pillow."
    unknot = Polynomial([(1.0 / 3, (0, 3)), (-1.0, (0, 1)),
                         (1.0, (2, 1))], 1, ("w",))
    axis = _nodes(-1.2, 1.2, 0.06)
    cloud = sample_legendrian(product_gf(unknot, unknot),
                              base_grid(axis, axis),
                              [(-1.5, 1.5), (-1.5, 1.5)], 0.1)
    _export(cloud, out_dir, "fig3_pillow.svg", files, title="toric pillow")
    return {"points": len(cloud), "sheets": len(cloud.branch_ids()),
            "support": float(np.abs(cloud.q).max()) if len(cloud) else 0.0}


figure_builders = {
    "fig1": _fig1,
    "fig2": _fig2,
    "fig3": _fig3,
    "fig4": _fig4,
    "fig5": _fig5,
    "fig6": _fig6,
    "fig7": _fig7,
    "fig8": _fig8,
    "fig9": _fig9,
}


def reproduce_figure(figure_id, out_dir, experimental=False):
    """
    Write the SVG panels of a figure and its feature file
    C{<figure_id>.json} to C{out_dir}.

    @return: dict with the figure id, the files written and the features.
    @raise ScenarioError: on an unknown figure, or an experimental one
                          without C{experimental}.
    """
    if figure_id not in figure_builders:
        raise ScenarioError("unknown figure %r" % figure_id,
                            figure=figure_id)
    if figure_id in EXPERIMENTAL_FIGURES and not experimental:
        raise ScenarioError("figure %s is experimental" % figure_id,
                            figure=figure_id)
    if not os.path.isdir(out_dir):
        os.makedirs(out_dir)
    logger.info("reproducing %s into %s", figure_id, out_dir)
    files = []
    features = figure_builders[figure_id](out_dir, files)
    result = {"figure": figure_id, "experimental":
              figure_id in EXPERIMENTAL_FIGURES,
              "features": jsonable(features)}
    path = os.path.join(out_dir, figure_id + ".json")
    with open(path, "w") as f:
        json.dump(result, f, indent=1, sort_keys=True)
    files.append(path)
    result["files"] = files
    return result
