# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
I{legendrian} is a numerical toolkit for Legendrian submanifolds of the
1-jet space J^1(R^n, R), given by generating functions F(q, w).

The package is organised as:
 - L{gf<legendrian.gf>}: generating-function expressions, combinators
   (transform T, slice, contour, product, sum, convolution, stabilization)
   and their JSON form.
 - L{front<legendrian.front>}: sampling the Legendrian of a generating
   function, geometric counterparts of the combinators, cusp detection and
   export.
 - L{selector<legendrian.selector>}: the min-max of a fiber function and the
   selector s(F), through cubical persistence where no shortcut applies.
 - L{convex<legendrian.convex>}: grid functions, the discrete
   Legendre-Fenchel transform, infimal convolution and biconjugates.
 - L{verify<legendrian.verify>}: scenario-driven identity suites and figure
   reproduction, run from the C{legendrian} command.

Errors are instances of L{LegendrianError<legendrian.errors.LegendrianError>}
carrying a machine-readable cause.

@version: 0.1.0
@license: MIT
"""

__version__ = "0.1.0"

from legendrian.errors import LegendrianError
