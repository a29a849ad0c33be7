# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Generating functions F(q, w): expression nodes, combinators, structural
index tracking, the transversality check and the JSON form.
"""

from legendrian.gf.kinds import NodeKind
from legendrian.gf.expr import GFExpr, Poly1D, Polynomial, QuadraticForm, \
                               SampledTail, TransformT, Slice, Contour, \
                               Product, SumOp, Convolution, Stabilize, \
                               FiberDiffeo, PathBlend, FiberFunction
from legendrian.gf.jet import Point1Jet
from legendrian.gf.meta import ASMeta, as_decomposition, fiber_index, \
                               global_index
from legendrian.gf.ops import transform_T, slice_gf, contour_gf, \
                              product_gf, sum_gf, convolution_gf, stabilize, \
                              strip_stabilization, theorem327_path, \
                              path_endpoints, fiber_diffeo_sum_conv, \
                              reorder_fibers, substitute_base
from legendrian.gf.star import check_star_condition, StarReport
from legendrian.gf.serial import to_dict, from_dict, structurally_equal

__all__ = ["NodeKind", "GFExpr", "Poly1D", "Polynomial", "QuadraticForm",
           "SampledTail", "TransformT", "Slice", "Contour", "Product",
           "SumOp", "Convolution", "Stabilize", "FiberDiffeo", "PathBlend",
           "FiberFunction", "Point1Jet", "ASMeta", "as_decomposition",
           "fiber_index", "global_index", "transform_T", "slice_gf",
           "contour_gf", "product_gf", "sum_gf", "convolution_gf",
           "stabilize", "strip_stabilization", "theorem327_path",
           "path_endpoints", "fiber_diffeo_sum_conv", "reorder_fibers",
           "substitute_base", "check_star_condition", "StarReport",
           "to_dict", "from_dict", "structurally_equal"]
