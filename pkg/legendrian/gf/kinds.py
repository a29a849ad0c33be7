# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

__all__ = ["NodeKind", "node_kinds", "kind_names"]


class NodeKind(object):
    "A class for describing the kind of a generating-function node."

    def __init__(self, code, name):
        self.code = code
        self.name = name
    def __repr__(self):
        return "NodeKind(%d, '%s')" % (self.code, self.name)
    def __int__(self):
        return self.code
    def __str__(self):
        return self.name
    def __hash__(self):
        return self.code
    def __eq__(self, other):
        if type(other) is NodeKind: return other.code == self.code
        elif type(other) is int: return other == self.code
        elif type(other) is str: return other == self.name
        return False
    def __ne__(self, other):
        return not self.__eq__(other)

    @property
    def is_leaf(self):
        return self.code < len(leaf_names)


###############################################################################
# Create enumeration of node kinds
###############################################################################

leaf_names = (
  "poly1d",
  "polynomial",
  "quadratic_form",
  "sampled_tail",
)

kind_names = leaf_names + (
  "transform_t",
  "slice",
  "contour",
  "product",
  "sum",
  "convolution",
  "stabilize",
  "fiber_diffeo",
  "path_blend",
)

node_kinds = []
for i, name in enumerate(kind_names):
    kind = NodeKind(i, name)
    node_kinds.append(kind)
    setattr(NodeKind, name, kind)
