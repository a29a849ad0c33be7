# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.
