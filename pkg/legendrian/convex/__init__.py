# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Grid functions of one variable and their convex analysis: conjugate,
infimal convolution, biconjugate and the Legendre transform of simple
functions.
"""

from legendrian.convex.grid import GridFunction, TailModel
from legendrian.convex.conjugate import lf_transform, inf_conv, \
                                        biconjugate, legendre_simple, \
                                        fenchel_young_gap, LegendreTransform

__all__ = ["GridFunction", "TailModel", "lf_transform", "inf_conv",
           "biconjugate", "legendre_simple", "fenchel_young_gap",
           "LegendreTransform"]
