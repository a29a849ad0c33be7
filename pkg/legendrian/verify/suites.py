# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
The verification suites.

A suite is a scenario file whose checks each name a check kind. Kinds are
looked up in L{check_kinds}; a kind is a function C{(scenario, params, rng)}
returning a L{Measure}: the defect compared with the check's tolerance, a
flag for any qualitative condition the check also requires, and details for
the report. Each check draws its random inputs from a generator seeded by the
scenario seed and the check's name, so checks may run in any order, or
concurrently, and still produce the same report.

Any L{LegendrianError} raised by a check becomes a failed result carrying the
error's structured cause.
"""

import zlib

import numpy as np
from scipy.optimize import minimize_scalar

from legendrian.convex import GridFunction, TailModel, biconjugate, \
                              lf_transform
from legendrian.errors import HomologyNotSimpleError, LegendrianError, \
                              ScenarioError
from legendrian.front import base_grid, convolution_via_product, \
                             geometric_contour, geometric_convolution, \
                             geometric_product, geometric_slice, \
                             geometric_sum, geometric_T, hausdorff, \
                             sample_legendrian, sum_via_product
from legendrian.front.cloud import LegendrianCloud
from legendrian.gf import FiberFunction, Poly1D, Polynomial, \
                          check_star_condition, contour_gf, convolution_gf, \
                          fiber_diffeo_sum_conv, path_endpoints, \
                          product_gf, reorder_fibers, slice_gf, sum_gf, \
                          theorem327_path, transform_T
from legendrian.selector import minmax, minmax_direct_sum_check, selector
from legendrian.util import logger, parallel_map
from legendrian.verify.report import CheckResult, Report
from legendrian.verify.scenario import load_scenario, scenario_path

__all__ = ["SUITES", "Measure", "check_kinds", "closed_forms", "run_check",
           "run_suite", "run_all"]

SUITES = ("theorem21", "prop11", "remark12", "lemma31_crosscheck", "prop31",
          "lemma33", "theorem327", "corollary324", "remark34")

ORACLE_SAMPLES = 20001


class Measure(object):
    "What a check measured."

    def __init__(self, defect, holds=True, **details):
        self.defect = float(defect)
        self.holds = bool(holds)
        self.details = details


###############################################################################
# Parameter helpers
###############################################################################

def _required(params, key):
    try:
        return params[key]
    except KeyError:
        raise ScenarioError("check parameter %r missing" % key,
                            parameter=key)


def _expression(scenario, params, key):
    return scenario.expression(_required(params, key))


def _box(params, key):
    box = params.get(key)
    if box is None:
        return None
    return [tuple(float(v) for v in side) for side in box]


def _joined(*boxes):
    sides = [side for box in boxes if box for side in box]
    return sides or None


def _window(params):
    window = params.get("window")
    if not window:
        return None
    return dict((name, tuple(bounds)) for (name, bounds) in window.items())


def _sample(scenario, F, params, grid_key="q_grid", box_key="fiber_box",
            step_key="fiber_step"):
    qs = scenario.grid(_required(params, grid_key))
    box = _box(params, box_key)
    return sample_legendrian(F, qs, box, params.get(step_key) if box else
                             None)


def _compare(left, right, params):
    return hausdorff(left, right, _window(params), params.get("margin", 0.0),
                     params.get("polyline"))


def _pointwise(F, G, rng, count, radius):
    "Largest gap of values and gradients at random points."
    x = rng.uniform(-radius, radius, (count, F.dim))
    values = np.abs(F.value(x) - G.value(x))
    slopes = np.abs(F.gradient(x) - G.gradient(x))
    return float(max(values.max(), slopes.max()))


def _random_quartic(rng, scale):
    "q^4 + a3 q^3 + a2 q^2 + a1 q, coefficients uniform in [-scale, scale]."
    a1, a2, a3 = rng.uniform(-scale, scale, 3)
    return Poly1D([0.0, a1, a2, a3, 1.0])


###############################################################################
# Cloud identities
###############################################################################

def _pairs(scenario, params, rng):
    if "random_quartics" in params:
        spec = params["random_quartics"]
        scale = float(spec.get("scale", 1.0))
        return [(_random_quartic(rng, scale), _random_quartic(rng, scale))
                for _ in range(int(_required(spec, "count")))]
    return [(_expression(scenario, params, "f1"),
             _expression(scenario, params, "f2"))]


def _transform_identity(scenario, params, rng):
    """
    T exchanges sum and convolution of clouds: T(A + B) against
    (TA) conv (TB), or T(A conv B) against (TA) + (TB).
    """
    identity = _required(params, "identity")
    if identity not in ("sum", "convolution"):
        raise ScenarioError("unknown identity %r" % identity)
    nodes = scenario.grid(_required(params, "result_grid"))
    defects = []
    for F1, F2 in _pairs(scenario, params, rng):
        A, B = _sample(scenario, F1, params), _sample(scenario, F2, params)
        TA, TB = geometric_T(A), geometric_T(B)
        if identity == "sum":
            left = geometric_T(geometric_sum(A, B, nodes))
            right = geometric_convolution(TA, TB, nodes)
        else:
            left = geometric_T(geometric_convolution(A, B, nodes))
            right = geometric_sum(TA, TB, nodes)
        defects.append(_compare(left, right, params))
    return Measure(max(defects), pairs=len(defects), defects=defects)


def _slice_transform(scenario, params, rng):
    "T of the slice of a surface against the contour of its transform."
    F = _expression(scenario, params, "f")
    q1 = scenario.grid(_required(params, "q1_grid"))
    q2 = scenario.grid(_required(params, "q2_grid"))
    box = _box(params, "fiber_box")
    L = sample_legendrian(F, base_grid(q1, q2), box,
                          params.get("fiber_step") if box else None)
    left = geometric_T(geometric_slice(L))
    right = geometric_contour(geometric_T(L))
    return Measure(_compare(left, right, params), points=len(left))


def _product_transform(scenario, params, rng):
    "T of a product of curves against the product of their transforms."
    A = _sample(scenario, _expression(scenario, params, "f1"), params,
                "q1_grid", "fiber_box1")
    B = _sample(scenario, _expression(scenario, params, "f2"), params,
                "q2_grid", "fiber_box2")
    left = geometric_T(geometric_product(A, B))
    right = geometric_product(geometric_T(A), geometric_T(B))
    return Measure(hausdorff(left, right, polyline=False),
                   points=len(left))


def _product_transform_gf(scenario, params, rng):
    """
    F_T(1 x 2) against F_(T1) x (T2), the fibers of the latter reordered
    to (v1, v2, w1, w2).
    """
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    n1, k1, n2 = F1.base_dim, F1.fiber_dim, F2.base_dim
    left = transform_T(product_gf(F1, F2))
    right = product_gf(transform_T(F1), transform_T(F2))
    a, b = n1 + k1, n1 + k1 + n2
    order = list(range(n1)) + list(range(a, b)) + list(range(n1, a)) + \
            list(range(b, right.fiber_dim))
    right = reorder_fibers(right, order)
    defect = _pointwise(left, right, rng, int(params.get("points", 1000)),
                        float(params.get("radius", 2.0)))
    return Measure(defect, fibers=left.fiber_dim)


###############################################################################
# Generating-function contours against geometric operations
###############################################################################

def _route_T(scenario, params):
    F = _expression(scenario, params, "f")
    gf = _sample(scenario, transform_T(F), params, "result_grid",
                 "result_box", "result_step")
    return gf, geometric_T(_sample(scenario, F, params))


def _route_slice(scenario, params):
    F = _expression(scenario, params, "f")
    q1 = scenario.grid(_required(params, "q1_grid"))
    q2 = scenario.grid(_required(params, "q2_grid"))
    box = _box(params, "fiber_box")
    step = params.get("fiber_step") if box else None
    gf = sample_legendrian(slice_gf(F, [0]), q1, box, step)
    return gf, geometric_slice(sample_legendrian(F, base_grid(q1, q2), box,
                                                 step))


def _route_contour(scenario, params):
    F = _expression(scenario, params, "f")
    q1 = scenario.grid(_required(params, "q1_grid"))
    q2 = scenario.grid(_required(params, "q2_grid"))
    box = _box(params, "fiber_box")
    gf = sample_legendrian(contour_gf(F, [0]), q1,
                           _box(params, "result_box"),
                           _required(params, "result_step"))
    L = sample_legendrian(F, base_grid(q1, q2), box,
                          params.get("fiber_step") if box else None)
    return gf, geometric_contour(L)


def _inputs(scenario, params, first="q_grid", second="q_grid"):
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    A = _sample(scenario, F1, params, first, "fiber_box1")
    B = _sample(scenario, F2, params, second, "fiber_box2")
    return F1, F2, A, B


def _route_product(scenario, params):
    F1, F2, A, B = _inputs(scenario, params, "q1_grid", "q2_grid")
    qs = base_grid(scenario.grid(_required(params, "q1_grid")),
                   scenario.grid(_required(params, "q2_grid")))
    box = _joined(_box(params, "fiber_box1"), _box(params, "fiber_box2"))
    gf = sample_legendrian(product_gf(F1, F2), qs, box,
                           params.get("fiber_step") if box else None)
    return gf, geometric_product(A, B)


def _route_sum(scenario, params):
    F1, F2, A, B = _inputs(scenario, params)
    qs = scenario.grid(_required(params, "q_grid"))
    box = _joined(_box(params, "fiber_box1"), _box(params, "fiber_box2"))
    gf = sample_legendrian(sum_gf(F1, F2), qs, box,
                           params.get("fiber_step") if box else None)
    return gf, geometric_sum(A, B, qs)


def _route_convolution(scenario, params):
    F1, F2, A, B = _inputs(scenario, params, "q1_grid", "q2_grid")
    gf = _sample(scenario, convolution_gf(F1, F2), params, "result_grid",
                 "result_box", "result_step")
    p = scenario.grid(_required(params, "p_grid"))
    return gf, geometric_convolution(A, B, p)


def _route_sum_via_product(scenario, params):
    _, _, A, B = _inputs(scenario, params)
    qs = scenario.grid(_required(params, "q_grid"))
    return sum_via_product(A, B), geometric_sum(A, B, qs)


def _route_convolution_via_product(scenario, params):
    _, _, A, B = _inputs(scenario, params, "q1_grid", "q2_grid")
    p = scenario.grid(_required(params, "p_grid"))
    return convolution_via_product(A, B), geometric_convolution(A, B, p)


crosscheck_routes = {
    "T":                       _route_T,
    "slice":                   _route_slice,
    "contour":                 _route_contour,
    "product":                 _route_product,
    "sum":                     _route_sum,
    "convolution":             _route_convolution,
    "sum_via_product":         _route_sum_via_product,
    "convolution_via_product": _route_convolution_via_product,
}


def _crosscheck(scenario, params, rng):
    operation = _required(params, "operation")
    route = crosscheck_routes.get(operation)
    if route is None:
        raise ScenarioError("unknown operation %r" % operation,
                            operation=operation)
    left, right = route(scenario, params)
    return Measure(_compare(left, right, params), operation=operation,
                   points=[len(left), len(right)],
                   events=len(left.events) + len(right.events))


###############################################################################
# Min-max and the selector
###############################################################################

def _minmax_at(F, q, box, step, params, index=None, events=None):
    """
    s(F(q, .)); if the grid homology is not simple, retried once with q
    moved by half of C{perturb}.
    """
    field = params.get("field", "z2")
    method = params.get("method", "auto")
    try:
        return minmax(FiberFunction(F, q), index, box, step, field, method)
    except HomologyNotSimpleError as e:
        shift = params.get("perturb")
        if not shift:
            raise
        moved = np.asarray(q, float) + shift / 2.0
        logger.info("homology not simple at q=%s, retrying at %s",
                    np.ravel(q).tolist(), moved.tolist())
        if events is not None:
            events.append({"event": "perturbed", "q": np.ravel(q).tolist(),
                           "ranks": e.details.get("ranks")})
        return minmax(FiberFunction(F, moved), index, box, step, field,
                      method)


def _curve(scenario, F, params, box_key, qs=None, workers=None):
    if qs is None:
        qs = scenario.grid(_required(params, "q_grid"))
    box = _box(params, box_key)
    return selector(F, qs, box, params.get("step") if box else None,
                    params.get("field", "z2"), params.get("index"),
                    params.get("method", "auto"), workers)


def _selector_additive(scenario, params, rng):
    "s(F1 + F2) against s(F1) + s(F2) along a q grid."
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    qs = scenario.grid(_required(params, "q_grid"))
    step = _required(params, "step")
    box1, box2 = _box(params, "box1"), _box(params, "box2")
    field = params.get("field", "z2")
    s1 = selector(F1, qs, box1, step, field)
    s2 = selector(F2, qs, box2, step, field)
    s12 = selector(sum_gf(F1, F2), qs, _joined(box1, box2), step, field)
    gaps = np.abs(s12.values - (s1.values + s2.values))
    return Measure(gaps.max(), nodes=len(qs), worst_q=float(qs[gaps.argmax()]),
                   methods=sorted(set(s12.methods)), iota=s12.iota)


def _selector_equal(scenario, params, rng):
    "Two selector curves over one q grid."
    left = _curve(scenario, _expression(scenario, params, "left"), params,
                  "left_box")
    right = _curve(scenario, _expression(scenario, params, "right"), params,
                   "right_box")
    gaps = np.abs(left.values - right.values)
    return Measure(gaps.max(), nodes=len(gaps),
                   worst_q=float(left.q[gaps.argmax()]),
                   methods=[sorted(set(left.methods)),
                            sorted(set(right.methods))],
                   iota=[left.iota, right.iota],
                   on_critical=bool(all(left.members()) and
                                    all(right.members())))


def _selector_polynomial(scenario, params, rng):
    "A selector curve against a polynomial in q (ascending coefficients)."
    F = _expression(scenario, params, "f")
    curve = _curve(scenario, F, params, "box")
    expected = np.polynomial.polynomial.polyval(
        curve.q, np.asarray(_required(params, "expected"), float))
    gaps = np.abs(curve.values - expected)
    jump, modulus = curve.continuity(F)
    return Measure(gaps.max(), holds=jump <= modulus,
                   worst_q=float(curve.q[gaps.argmax()]), jump=jump,
                   modulus=modulus)


def _minmax_points(scenario, params, rng):
    """
    s(F(q, .)) at a few base points against the min-max of a reference
    expression at the same points.
    """
    F = _expression(scenario, params, "f")
    G = _expression(scenario, params, "reference")
    box, step = _box(params, "box"), params.get("step")
    ref_box, ref_step = _box(params, "reference_box"), \
                        params.get("reference_step")
    events, gaps, values = [], [], []
    for q in _required(params, "q_points"):
        s = _minmax_at(F, [q], box, step, params, params.get("index"),
                       events)
        r = minmax(FiberFunction(G, [q]), None, ref_box, ref_step)
        values.append([s, r])
        gaps.append(abs(s - r))
    return Measure(max(gaps), values=values, events=events)


def _path_constancy(scenario, params, rng):
    """
    s(F_t)(q) along the deformation path, against s(F_T(1+2))(q) computed
    on its own.
    """
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    coupling = params.get("coupling", "published")
    box, step = _box(params, "box"), _required(params, "step")
    q = [float(_required(params, "q"))]
    reference = minmax(FiberFunction(transform_T(sum_gf(F1, F2)), q), None,
                       [box[0]], step)
    events, values = [], []
    for t in _required(params, "t_values"):
        F = theorem327_path(F1, F2, t, coupling)
        values.append(_minmax_at(F, q, box, step, params, None, events))
    gaps = np.abs(np.asarray(values) - reference)
    return Measure(gaps.max(), reference=reference, values=values,
                   spread=float(np.ptp(values)), coupling=coupling,
                   events=events)


def _direct_sum(scenario, params, rng):
    "s(f1 (+) f2) against s(f1) + s(f2), and optionally a known value."
    result = minmax_direct_sum_check(
        _expression(scenario, params, "f1"),
        _expression(scenario, params, "f2"), _box(params, "box1"),
        _box(params, "box2"), _required(params, "step"),
        params.get("field", "z2"), params.get("index1"),
        params.get("index2"), params.get("method", "cubical"))
    defect = result["gap"]
    if "expected" in params:
        defect = max(defect, abs(result["sum"] - params["expected"]))
    return Measure(defect, **result)


def _grid_extremum(f, sign, box):
    """
    min f (sign 1) or max f (sign -1) over an interval: every local
    extremum of a dense sampling refined by bounded Brent.
    """
    lo, hi = box[0]
    w = np.linspace(lo, hi, ORACLE_SAMPLES)
    values = sign * f(w[:, None])
    inner = np.flatnonzero((values[1:-1] <= values[:-2]) &
                           (values[1:-1] <= values[2:])) + 1
    best = values.min()
    for i in inner:
        result = minimize_scalar(lambda t: sign * f([t]),
                                 bounds=(w[i - 1], w[i + 1]),
                                 method="bounded", options={"xatol": 1e-12})
        best = min(best, result.fun)
    return sign * best


def _random_simple(scenario, params, rng):
    """
    Random almost-convex quartics w^4 + a3 w^3 + a2 w^2 + a1 w, or their
    negatives (almost concave): the min-max is the min (max) found on a
    dense grid, and the persistence path agrees with the fast path on the
    first C{cross_check} instances.
    """
    shape = _required(params, "shape")
    if shape not in ("convex", "concave"):
        raise ScenarioError("unknown shape %r" % shape)
    sign = 1.0 if shape == "convex" else -1.0
    count = int(_required(params, "count"))
    cross = int(params.get("cross_check", 0))
    scale = float(params.get("scale", 2.0))
    box, step = _box(params, "box"), _required(params, "step")
    oracle_gaps, path_gaps = [], []
    for i in range(count):
        a1, a2, a3 = rng.uniform(-scale, scale, 3)
        terms = [(sign, [4]), (sign * a3, [3]), (sign * a2, [2]),
                 (sign * a1, [1])]
        f = Polynomial(terms, 0, ("w",), 0 if sign > 0 else 1)
        s = minmax(f, None, box, step)
        oracle_gaps.append(abs(s - _grid_extremum(FiberFunction(f), sign,
                                                  box)))
        if i < cross:
            c = minmax(f, None, box, step, params.get("field", "z2"),
                       "cubical")
            path_gaps.append(abs(c - s))
    defect = max(oracle_gaps + path_gaps)
    return Measure(defect, instances=count, oracle_gap=max(oracle_gaps),
                   path_gap=max(path_gaps) if path_gaps else 0.0)


###############################################################################
# Pointwise expression checks
###############################################################################

def _pointwise_equal(scenario, params, rng):
    "Two expressions on the same variables, after an optional reordering."
    left = _expression(scenario, params, "left")
    right = _expression(scenario, params, "right")
    if "reorder" in params:
        right = reorder_fibers(right, params["reorder"])
    defect = _pointwise(left, right, rng, int(params.get("points", 1000)),
                        float(params.get("radius", 2.0)))
    return Measure(defect, fibers=[left.fiber_dim, right.fiber_dim])


def _path_endpoints(scenario, params, rng):
    "The deformation path at t = 0 and t = 1 against its two end models."
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    start, end = path_endpoints(F1, F2)
    count = int(params.get("points", 1000))
    radius = float(params.get("radius", 2.0))
    gaps = [_pointwise(theorem327_path(F1, F2, 0.0), start, rng, count,
                       radius),
            _pointwise(theorem327_path(F1, F2, 1.0), end, rng, count,
                       radius)]
    return Measure(max(gaps), start=gaps[0], end=gaps[1])


def _sum_conv_diffeo(scenario, params, rng):
    "F_(T1)+(T2) composed with the fiber map against F_T(1 conv 2)."
    F1 = _expression(scenario, params, "f1")
    F2 = _expression(scenario, params, "f2")
    mapped = fiber_diffeo_sum_conv(sum_gf(transform_T(F1),
                                          transform_T(F2)))
    target = transform_T(convolution_gf(F1, F2))
    defect = _pointwise(mapped, target, rng, int(params.get("points", 500)),
                        float(params.get("radius", 2.0)))
    return Measure(defect)


def _contour_agreement(scenario, params, rng):
    """
    Two expressions whose contours agree although the functions do not:
    the right one is evaluated on the left one's base variables and the
    fibers listed in C{embed}, every other fiber of the left one drawn at
    random.
    """
    left = _expression(scenario, params, "left")
    right = _expression(scenario, params, "right")
    embed = [left.base_dim + int(i) for i in _required(params, "embed")]
    x = rng.uniform(-2.0, 2.0, (int(params.get("points", 1000)), left.dim))
    xr = np.concatenate([x[:, :left.base_dim], x[:, embed]], axis=1)
    gap = float(np.abs(left.value(x) - right.value(xr)).max())
    threshold = float(_required(params, "differ_by"))
    A = _sample(scenario, left, params, box_key="left_box",
                step_key="step")
    B = _sample(scenario, right, params, box_key="right_box",
                step_key="step")
    defect = _compare(A, B, params)
    differ = gap > threshold
    verdict = "%s, %s" % (
        "expressions differ pointwise" if differ else
        "expressions agree pointwise",
        "contours agree" if defect <= threshold else "contours differ")
    return Measure(defect, holds=differ, pointwise_gap=gap, verdict=verdict,
                   fibers=[left.fiber_dim, right.fiber_dim])


def _star_condition(scenario, params, rng):
    "Condition (*) on a box, against the expected verdict."
    F = _expression(scenario, params, "f")
    report = check_star_condition(F, _box(params, "box"),
                                  _required(params, "grid_step"))
    expected = bool(params.get("expect", True))
    return Measure(0.0 if report.satisfied == expected else 1.0,
                   **report.as_dict())


###############################################################################
# Convex analysis
###############################################################################

def _flat_well(x):
    x = np.asarray(x, float)
    return np.where(x < -1, (x + 1) ** 2, np.where(x > 1, (x - 1) ** 2, 0.0))


def _flat_well_conjugate(p):
    p = np.asarray(p, float)
    return p ** 2 / 4 + np.abs(p)


def _exp_conjugate(p):
    p = np.asarray(p, float)
    return p * (np.log(p) - 1)


# name -> (function, derivative, conjugate, tail)
closed_forms = {
    "exp": (np.exp, np.exp, _exp_conjugate, lambda: TailModel("domain")),
    "flat_well": (_flat_well, lambda x: 2 * (_flat_well(x) ** 0.5) *
                  np.sign(x), _flat_well_conjugate,
                  lambda: TailModel(left=[1.0, 2.0, 1.0],
                                    right=[1.0, -2.0, 1.0], index=0)),
}


def _closed_form(params):
    name = _required(params, "function")
    try:
        return closed_forms[name]
    except KeyError:
        raise ScenarioError("unknown closed form %r" % name, function=name)


def _conjugate_closed_form(scenario, params, rng):
    """
    The discrete conjugate against a closed form on the slopes of
    C{compare}; the slopes of C{masked}, if given, must come out +inf.
    """
    f, _, conjugate, tail = _closed_form(params)
    grid = _required(params, "grid")
    g = GridFunction.from_function(f, grid["lo"], grid["hi"], grid["step"],
                                   tail())
    p = scenario.grid(_required(params, "p_grid"))
    fstar = lf_transform(g, p, params.get("method", "llt"))
    lo, hi = _required(params, "compare")
    inside = (p >= lo) & (p <= hi)
    holds = not fstar.mask[inside].any()
    gaps = np.abs(fstar.values[inside & ~fstar.mask] -
                  conjugate(p[inside & ~fstar.mask]))
    masked = params.get("masked")
    if masked is not None:
        where = (p >= masked[0]) & (p <= masked[1])
        holds = holds and bool(fstar.mask[where].all())
    return Measure(gaps.max() if len(gaps) else np.inf, holds=holds,
                   masked=int(fstar.mask.sum()))


def _transform_graph(scenario, params, rng):
    """
    The front of T applied to a closed-form 1-graph against the graph of
    the closed-form conjugate, on the q' range of C{compare}.
    """
    f, df, conjugate, _ = _closed_form(params)
    q = scenario.grid(_required(params, "q_grid"))
    cloud = geometric_T(LegendrianCloud(f(q), q, df(q)))
    lo, hi = _required(params, "compare")
    inside = (cloud.q[:, 0] >= lo) & (cloud.q[:, 0] <= hi)
    gaps = np.abs(cloud.u[inside] - conjugate(cloud.q[inside, 0]))
    return Measure(gaps.max() if len(gaps) else np.inf, points=len(gaps))


def _selector_conjugate(scenario, params, rng):
    "s(F_T f) against the discrete conjugate of f on the same nodes."
    f = _expression(scenario, params, "f")
    qs = scenario.grid(_required(params, "q_grid"))
    curve = _curve(scenario, transform_T(f), params, "box", qs)
    grid = _required(params, "sample_grid")
    g = GridFunction.from_function(lambda x: f.value(x[:, None]),
                                   grid["lo"], grid["hi"], grid["step"])
    fstar = lf_transform(g, qs)
    values = fstar.masked_values()
    gaps = np.abs(curve.values - values)
    return Measure(gaps.max(), holds=not fstar.mask.any(),
                   worst_q=float(qs[gaps.argmax()]))


def _discriminator(scenario, params, rng):
    """
    s(F_TT f)(q) and f**(q) side by side: the selector returns f, the
    biconjugate its convex envelope, and the two must stay apart.
    """
    f = _expression(scenario, params, "f")
    q = float(_required(params, "q"))
    events = []
    s = _minmax_at(transform_T(transform_T(f)), [q], _box(params, "box"),
                   _required(params, "step"), params, None, events)
    grid = _required(params, "hull_grid")
    g = GridFunction.from_function(lambda x: f.value(x[:, None]),
                                   grid["lo"], grid["hi"], grid["step"])
    hull = biconjugate(g)(q)
    defect = max(abs(s - _required(params, "expected_selector")),
                 abs(hull - _required(params, "expected_hull")))
    gap = abs(s - hull)
    return Measure(defect, holds=gap >= _required(params, "min_gap"),
                   selector=s, biconjugate=hull, gap=gap, events=events)


check_kinds = {
    "transform_identity":     _transform_identity,
    "slice_transform":        _slice_transform,
    "product_transform":      _product_transform,
    "product_transform_gf":   _product_transform_gf,
    "crosscheck":             _crosscheck,
    "selector_additive":      _selector_additive,
    "selector_equal":         _selector_equal,
    "selector_polynomial":    _selector_polynomial,
    "minmax_points":          _minmax_points,
    "path_constancy":         _path_constancy,
    "direct_sum":             _direct_sum,
    "random_simple":          _random_simple,
    "pointwise_equal":        _pointwise_equal,
    "path_endpoints":         _path_endpoints,
    "sum_conv_diffeo":        _sum_conv_diffeo,
    "contour_agreement":      _contour_agreement,
    "star_condition":         _star_condition,
    "conjugate_closed_form":  _conjugate_closed_form,
    "transform_graph":        _transform_graph,
    "selector_conjugate":     _selector_conjugate,
    "discriminator":          _discriminator,
}


###############################################################################
# Running suites
###############################################################################

def _check_rng(scenario, name):
    return np.random.default_rng([scenario.seed,
                                  zlib.crc32(name.encode("utf-8"))])


def run_check(scenario, check):
    """
    Run one check of a scenario.

    @rtype: L{CheckResult}
    """
    try:
        function = check_kinds.get(check.kind)
        if function is None:
            raise ScenarioError("unknown check kind %r" % check.kind,
                                kind=check.kind)
        measure = function(scenario, check.params,
                           _check_rng(scenario, check.name))
    except LegendrianError as e:
        logger.warning("check %s failed: %s", check.name, e)
        return CheckResult.failure(check.name, check.anchor,
                                   check.tolerance, e)
    passed = measure.holds and measure.defect <= check.tolerance
    logger.info("check %s: defect %g, tolerance %g", check.name,
                measure.defect, check.tolerance)
    return CheckResult(check.name, check.anchor, passed, measure.defect,
                       check.tolerance, measure.details)


def run_suite(name, scenario=None, workers=None):
    """
    Run the checks of a suite, concurrently when C{workers} allows.

    @param scenario: a parsed L{Scenario}; the shipped scenario file of the
                     suite if None.
    @return: the results, sorted by check name.
    @raise ScenarioError: if the suite is unknown or its file is invalid.
    """
    if scenario is None:
        if name not in SUITES:
            raise ScenarioError("unknown suite %r" % name, suite=name)
        scenario = load_scenario(scenario_path(name))
    results = parallel_map(lambda check: run_check(scenario, check),
                           scenario.checks, workers)
    return sorted(results, key=lambda r: r.name)


def run_all(names=None, workers=None):
    """
    Run several suites, all of them by default.

    @rtype: L{Report}
    """
    report = Report()
    for name in names or SUITES:
        report.add(name, run_suite(name, workers=workers))
    return report
