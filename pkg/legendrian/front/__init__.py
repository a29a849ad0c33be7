# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Legendrian point clouds: sampling the contour of a generating function
(L{roots}, L{cloud}), geometric operations and comparison (L{geometry}),
cusp detection (L{cusps}) and export (L{export}).
"""

from legendrian.front.roots import FiberRoots, solve_fiber_critical
from legendrian.front.cloud import LegendrianCloud, sample_legendrian, \
                                   base_grid
from legendrian.front.geometry import WaveFront, wave_front, geometric_T, \
                                      geometric_sum, geometric_convolution, \
                                      geometric_product, geometric_slice, \
                                      geometric_contour, phi_map, psi_map, \
                                      sum_via_product, \
                                      convolution_via_product, crop, \
                                      hausdorff
from legendrian.front.cusps import Singularity, detect_cusps
from legendrian.front.export import export

__all__ = ["FiberRoots", "solve_fiber_critical", "LegendrianCloud",
           "sample_legendrian", "base_grid", "WaveFront", "wave_front",
           "geometric_T", "geometric_sum", "geometric_convolution",
           "geometric_product", "geometric_slice", "geometric_contour",
           "phi_map", "psi_map", "sum_via_product", "convolution_via_product",
           "crop", "hausdorff", "Singularity", "detect_cusps", "export"]
