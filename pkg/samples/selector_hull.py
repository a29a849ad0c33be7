# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
Compare the selector of F_TT, for f = q^4 - 3q^2, with f itself and with
its convex hull f**: T twice returns f on the level of Legendrians, but the
selector follows the hull.
"""

import numpy as np

import common

from legendrian.convex import GridFunction, biconjugate
from legendrian.gf import Poly1D, transform_T
from legendrian.selector import selector

if __name__ == "__main__":
    (options, args) = common.parse_args()
    f = Poly1D([0, 0, -3, 0, 1])
    q = common.base_nodes(options)
    # q = 0 is a degenerate node: two critical values tie there
    q = q[np.abs(q) > 1e-9]
    curve = selector(transform_T(transform_T(f)), q,
                     [(-6.0, 6.0), (-3.0, 3.0)], 0.1, workers=options.workers)
    hull = biconjugate(GridFunction.from_function(
        lambda x: x ** 4 - 3 * x ** 2, -3.0, 3.0, 0.01))
    print("%10s %12s %12s %12s" % ("q", "s(F_TT)", "f**", "f"))
    for qi, s in zip(q, curve.values):
        print("%10.4f %12.6f %12.6f %12.6f" % (qi, s, hull(qi),
                                               f.eval([qi])))
