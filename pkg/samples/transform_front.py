# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Sample the Legendrian of F_T for f = q^4 - 3q^2 and write its front, with
the two cusps marked, as SVG.
"""

import os

import common

from legendrian.front import detect_cusps, export, sample_legendrian, \
                             wave_front
from legendrian.gf import Poly1D, transform_T

if __name__ == "__main__":
    (options, args) = common.parse_args()
    F = transform_T(Poly1D([0, 0, -3, 0, 1]))
    cloud = sample_legendrian(F, common.base_nodes(options), [(-3.0, 3.0)],
                              0.01, options.workers)
    for cusp in detect_cusps(wave_front(cloud)):
        print("%s at u=%.6f q=%.6f" % (cusp.kind, cusp.u, cusp.q))
    print(export(cloud, os.path.join(options.out, "transform_front.svg"),
                 title="F_T, f = q^4 - 3q^2"))
