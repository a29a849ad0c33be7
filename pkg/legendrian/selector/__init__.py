# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
The min-max of almost simple fiber functions and the selector s(F), with
the cubical persistence they fall back on.
"""

from legendrian.selector.cubical import Bar, PersistenceDiagram, \
                                        sublevel_persistence
from legendrian.selector.minmax import CriticalValueSet, SelectorCurve, \
                                       critical_values, critical_values_1d, \
                                       minmax, selector, \
                                       minmax_direct_sum_check, \
                                       box_is_sufficient

__all__ = ["Bar", "PersistenceDiagram", "sublevel_persistence",
           "CriticalValueSet", "SelectorCurve", "critical_values",
           "critical_values_1d", "minmax", "selector",
           "minmax_direct_sum_check", "box_is_sufficient"]
