# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

import logging, os, sys
thisdir = os.path.abspath(os.path.dirname(__file__))
sys.path.insert(0, os.path.join(thisdir, ".."))

import numpy as np

from legendrian.util import log_to_stream

def parse_args(usage="%prog [options]"):
    from optparse import OptionParser
    parser = OptionParser(usage = usage)
    parser.add_option("--qmin", dest="qmin", type="float", default=-2.0)
    parser.add_option("--qmax", dest="qmax", type="float", default=2.0)
    parser.add_option("--step", dest="step", type="float", default=0.01)
    parser.add_option("-o", "--out", dest="out", default=".")
    parser.add_option("-j", "--workers", dest="workers", type="int")
    parser.add_option("-v", "--verbose", dest="verbose",
                      action="store_true", default=False)
    (options, args) = parser.parse_args()
    if options.verbose:
        log_to_stream(logging.DEBUG)
    if not os.path.isdir(options.out):
        os.makedirs(options.out)
    return (options, args)

def base_nodes(options):
    count = int(round((options.qmax - options.qmin) / options.step)) + 1
    return options.qmin + options.step * np.arange(count)
