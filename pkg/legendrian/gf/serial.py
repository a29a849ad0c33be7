# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
JSON form of generating-function expressions.

An expression is a nested dictionary with a C{kind} key naming a
L{NodeKind} and the node's own fields; composite nodes hold their children
under C{child}, or C{left} and C{right}. Sampled functions either carry
their samples inline (C{x0}, C{step}, C{values}) or point at a CSV file.
"""

import json
import os

import numpy as np

from legendrian.convex.grid import GridFunction, TailModel
from legendrian.errors import LegendrianError, ScenarioError
from legendrian.gf import expr, ops
from legendrian.gf.kinds import NodeKind, kind_names

__all__ = ["to_dict", "from_dict", "dumps", "loads", "structurally_equal"]


def _floats(values):
    return [float(v) for v in np.asarray(values, float).ravel()]


def _matrix(values):
    return [_floats(row) for row in np.atleast_2d(values)]


###############################################################################
# Encoding
###############################################################################

def _encode_poly1d(F):
    return {"coeffs": list(F.coeffs), "var": F.var, "base_dim": F.base_dim}

def _encode_polynomial(F):
    return {"terms": [[c, list(e)] for (c, e) in F.terms],
            "base_dim": F.base_dim, "fiber_names": list(F.fiber_names),
            "index": F.index, "global_index": F.global_index}

def _encode_quadratic_form(F):
    return {"matrix": _matrix(F.matrix), "base_dim": F.base_dim,
            "fiber_names": list(F.fiber_names)}

def _encode_sampled_tail(F):
    g = F.grid
    return {"x0": g.x0, "step": g.step, "values": _floats(g.values),
            "tail": g.tail.as_dict()}

def _encode_transform_t(F):
    return {"child": to_dict(F.child)}

def _encode_slice(F):
    return {"child": to_dict(F.child), "kept": list(F.kept),
            "values": dict((str(i), v) for (i, v) in sorted(F.values.items())
                           if v != 0.0)}

def _encode_contour(F):
    return {"child": to_dict(F.child), "kept": list(F.kept)}

def _encode_pair(F):
    return {"left": to_dict(F.left), "right": to_dict(F.right)}

def _encode_stabilize(F):
    m = len(F.form)
    return {"child": to_dict(F.child), "form": _matrix(F.form),
            "names": list(F.fiber_names[-m:])}

def _encode_fiber_diffeo(F):
    return {"child": to_dict(F.child), "name": F.name,
            "params": dict(F.params)}

def _encode_path_blend(F):
    data = {"left": to_dict(F.left), "right": to_dict(F.right), "t": F.t}
    if F.coupling != "published":
        data["coupling"] = F.coupling
    return data


encoders = {
    NodeKind.poly1d:         _encode_poly1d,
    NodeKind.polynomial:     _encode_polynomial,
    NodeKind.quadratic_form: _encode_quadratic_form,
    NodeKind.sampled_tail:   _encode_sampled_tail,
    NodeKind.transform_t:    _encode_transform_t,
    NodeKind.slice:          _encode_slice,
    NodeKind.contour:        _encode_contour,
    NodeKind.product:        _encode_pair,
    NodeKind.sum:            _encode_pair,
    NodeKind.convolution:    _encode_pair,
    NodeKind.stabilize:      _encode_stabilize,
    NodeKind.fiber_diffeo:   _encode_fiber_diffeo,
    NodeKind.path_blend:     _encode_path_blend,
}


def to_dict(F):
    "Encode an expression as nested dictionaries."
    data = {"kind": str(F.kind)}
    data.update(encoders[F.kind](F))
    return data


def dumps(F, **kwargs):
    return json.dumps(to_dict(F), **kwargs)


def structurally_equal(a, b):
    "True if the two expressions have the same tree and parameters."
    return to_dict(a) == to_dict(b)


###############################################################################
# Decoding
###############################################################################

def _decode_sampled_tail(data, basedir):
    tail = TailModel.from_dict(data.get("tail", {"kind": "domain"}))
    if "csv" in data:
        path = os.path.join(basedir, data["csv"])
        grid = GridFunction.load(path)
        grid = GridFunction(grid.x0, grid.step, grid.values, tail)
    else:
        grid = GridFunction(data["x0"], data["step"], data["values"], tail)
    return expr.SampledTail(grid)


def _decode_fiber_diffeo(data, basedir):
    child = from_dict(data["child"], basedir)
    name = data["name"]
    if name == "permute":
        return ops.reorder_fibers(child, data["params"]["order"])
    if name == "sum_conv":
        return ops.fiber_diffeo_sum_conv(child)
    raise ScenarioError("unknown fiber map %r" % name, name=name)


def _child(data, basedir):
    return from_dict(data["child"], basedir)

def _pair(data, basedir):
    return from_dict(data["left"], basedir), from_dict(data["right"], basedir)


decoders = {
    NodeKind.poly1d: lambda d, b: expr.Poly1D(
        d["coeffs"], d.get("var", 0), d.get("base_dim", 1)),
    NodeKind.polynomial: lambda d, b: expr.Polynomial(
        [(c, e) for (c, e) in d["terms"]], d["base_dim"],
        d.get("fiber_names", ()), d.get("index"), d.get("global_index")),
    NodeKind.quadratic_form: lambda d, b: expr.QuadraticForm(
        d["matrix"], d.get("base_dim", 1), d.get("fiber_names")),
    NodeKind.sampled_tail: _decode_sampled_tail,
    NodeKind.transform_t: lambda d, b: expr.TransformT(_child(d, b)),
    NodeKind.slice: lambda d, b: expr.Slice(
        _child(d, b), d["kept"],
        dict((int(i), v) for (i, v) in d.get("values", {}).items())),
    NodeKind.contour: lambda d, b: expr.Contour(_child(d, b), d["kept"]),
    NodeKind.product: lambda d, b: expr.Product(*_pair(d, b)),
    NodeKind.sum: lambda d, b: expr.SumOp(*_pair(d, b)),
    NodeKind.convolution: lambda d, b: expr.Convolution(*_pair(d, b)),
    NodeKind.stabilize: lambda d, b: expr.Stabilize(
        _child(d, b), d["form"], d.get("names")),
    NodeKind.fiber_diffeo: _decode_fiber_diffeo,
    NodeKind.path_blend: lambda d, b: ops.theorem327_path(
        *(_pair(d, b) + (d["t"], d.get("coupling", "published")))),
}


def from_dict(data, basedir="."):
    """
    Decode an expression.

    @param basedir: directory against which CSV paths are resolved.
    @raise ScenarioError: on unknown kinds, missing fields or arity errors.
    """
    if not isinstance(data, dict) or "kind" not in data:
        raise ScenarioError("expression must be an object with a 'kind'",
                            data=repr(data)[:80])
    kind = data["kind"]
    if kind not in kind_names:
        raise ScenarioError("unknown expression kind %r" % kind, kind=kind)
    kind = NodeKind.__dict__[kind]
    try:
        return decoders[kind](data, basedir)
    except KeyError as e:
        raise ScenarioError("missing field %s in %s expression" % (e, kind),
                            kind=str(kind))
    except ScenarioError:
        raise
    except LegendrianError as e:
        raise ScenarioError("invalid %s expression: %s" % (kind, e),
                            kind=str(kind), cause=e.cause)


def loads(text, basedir="."):
    return from_dict(json.loads(text), basedir)
