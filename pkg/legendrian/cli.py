# Copyright (c) 2017 The legendrian developers
# Released under the MIT license; see LICENSE.

"""
The C{legendrian} command.

Sub-commands::

    legendrian front     --gf f.json --qmin -3 --qmax 3 --step 0.01 \\
                         --box -3:3 --fiber-step 0.05 --out front.svg
    legendrian selector  --gf f.json ... --field z2|q --out curve.csv
    legendrian conjugate --in f.csv --out fstar.csv --method llt|brute
    legendrian verify    --suite all|<name> --report out.json
    legendrian figure    --id fig1 --out dir/ [--experimental]

Exit status is 0 on success, 1 when a verification fails and 2 on any
toolkit error.
"""

import logging
import os
import sys
from optparse import OptionParser

import numpy as np

from legendrian.convex import GridFunction, lf_transform
from legendrian.convex.conjugate import CONJUGATE_METHODS
from legendrian.errors import LegendrianError, ScenarioError
from legendrian.front import base_grid, export, sample_legendrian
from legendrian.gf.serial import loads
from legendrian.selector import selector
from legendrian.selector.minmax import METHODS
from legendrian.util import log_to_stream, logger
from legendrian.verify import EXPERIMENTAL_FIGURES, FIGURES, SUITES, \
                              reproduce_figure, run_all

__all__ = ["main", "commands"]

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2


def _parser(name, usage):
    parser = OptionParser(usage="%%prog %s %s" % (name, usage),
                          prog="legendrian")
    parser.add_option("-v", "--verbose", dest="verbose",
                      action="store_true", default=False)
    return parser


def _add_sampling(parser):
    parser.add_option("--gf", dest="gf", help="generating function (JSON)")
    parser.add_option("--qmin", dest="qmin", type="float", default=-3.0)
    parser.add_option("--qmax", dest="qmax", type="float", default=3.0)
    parser.add_option("--step", dest="step", type="float", default=0.01)
    parser.add_option("--box", dest="box", action="append", default=[],
                      help="fiber interval lo:hi, once per fiber variable")
    parser.add_option("--fiber-step", dest="fiber_step", type="float")
    parser.add_option("-o", "--out", dest="out")
    parser.add_option("-j", "--workers", dest="workers", type="int")


def _load_gf(path):
    try:
        with open(path) as f:
            text = f.read()
    except (IOError, OSError) as e:
        raise ScenarioError("cannot read %s: %s" % (path, e), path=path)
    try:
        return loads(text, os.path.dirname(os.path.abspath(path)))
    except ValueError as e:
        raise ScenarioError("%s is not JSON: %s" % (path, e), path=path)


def _box(values):
    box = []
    for value in values:
        try:
            lo, hi = [float(v) for v in value.split(":")]
        except ValueError:
            raise ScenarioError("bad fiber interval %r" % value, box=value)
        box.append((lo, hi))
    return box or None


def _base_nodes(F, options):
    count = int(round((options.qmax - options.qmin) / options.step)) + 1
    axis = options.qmin + options.step * np.arange(count)
    if F.base_dim == 1:
        return axis
    return base_grid(*([axis] * F.base_dim))


def _required(parser, options, *names):
    for name in names:
        if getattr(options, name) is None:
            parser.error("--%s is required" % name.replace("_", "-"))


###############################################################################
# Sub-commands
###############################################################################

def _front_parser():
    parser = _parser("front", "--gf f.json --out front.svg [options]")
    _add_sampling(parser)
    parser.add_option("--format", dest="format", choices=("csv", "json",
                                                          "svg"))
    return parser


def _front(parser, options, args):
    _required(parser, options, "gf", "out")
    F = _load_gf(options.gf)
    cloud = sample_legendrian(F, _base_nodes(F, options), _box(options.box),
                              options.fiber_step, options.workers)
    for event in cloud.events:
        logger.warning("front: %s", event)
    export(cloud, options.out, options.format)
    return EXIT_OK


def _selector_parser():
    parser = _parser("selector", "--gf f.json --out curve.csv [options]")
    _add_sampling(parser)
    parser.add_option("--field", dest="field", choices=("z2", "q"),
                      default="z2")
    parser.add_option("--index", dest="index", type="int")
    parser.add_option("--method", dest="method", default="auto",
                      choices=METHODS)
    return parser


def _selector(parser, options, args):
    _required(parser, options, "gf", "out")
    F = _load_gf(options.gf)
    curve = selector(F, _base_nodes(F, options), _box(options.box),
                     options.fiber_step, options.field, options.index,
                     options.method, options.workers)
    n = F.base_dim
    names = ["q"] if n == 1 else ["q%d" % (i + 1) for i in range(n)]
    header = names + ["s", "iota", "n_critical"]
    fmt = ["%.17g"] * (n + 1) + ["%d", "%d"]
    np.savetxt(options.out, np.array(curve.as_rows()).reshape(-1, n + 3),
               fmt=fmt, delimiter=",", header=",".join(header),
               comments="")
    return EXIT_OK


def _conjugate_parser():
    parser = _parser("conjugate", "--in f.csv --out fstar.csv [options]")
    parser.add_option("-i", "--in", dest="input")
    parser.add_option("-o", "--out", dest="out")
    parser.add_option("--method", dest="method", default="llt",
                      choices=CONJUGATE_METHODS)
    parser.add_option("--pmin", dest="pmin", type="float")
    parser.add_option("--pmax", dest="pmax", type="float")
    parser.add_option("--pstep", dest="pstep", type="float")
    parser.add_option("--tail", dest="tail",
                      help="JSON sidecar with the tail model of the input")
    parser.add_option("--out-tail", dest="out_tail")
    return parser


def _conjugate(parser, options, args):
    _required(parser, options, "input", "out")
    f = GridFunction.load(options.input, options.tail)
    p = None
    if options.pmin is not None or options.pmax is not None:
        _required(parser, options, "pmin", "pmax")
        step = options.pstep or f.step
        count = int(round((options.pmax - options.pmin) / step)) + 1
        p = options.pmin + step * np.arange(count)
    lf_transform(f, p, options.method).save(options.out, options.out_tail)
    return EXIT_OK


def _verify_parser():
    parser = _parser("verify", "[--suite all|<name>] [--report out.json]")
    parser.add_option("-s", "--suite", dest="suite", action="append",
                      default=[], help="one of: all, %s" % ", ".join(SUITES))
    parser.add_option("-r", "--report", dest="report")
    parser.add_option("-j", "--workers", dest="workers", type="int")
    return parser


def _verify(parser, options, args):
    names = options.suite or ["all"]
    if "all" in names:
        names = list(SUITES)
    for name in names:
        if name not in SUITES:
            parser.error("unknown suite %r" % name)
    report = run_all(names, options.workers)
    print(report.summary())
    if options.report:
        report.write(options.report)
    return EXIT_OK if report.passed else EXIT_FAILED


def _figure_parser():
    parser = _parser("figure", "--id fig1 --out dir [--experimental]")
    parser.add_option("--id", dest="figure", action="append", default=[],
                      help="one of: all, %s" % ", ".join(
                          FIGURES + EXPERIMENTAL_FIGURES))
    parser.add_option("-o", "--out", dest="out", default=".")
    parser.add_option("--experimental", dest="experimental",
                      action="store_true", default=False)
    return parser


def _figure(parser, options, args):
    ids = options.figure or ["all"]
    if "all" in ids:
        ids = list(FIGURES) + (list(EXPERIMENTAL_FIGURES)
                               if options.experimental else [])
    for figure_id in ids:
        result = reproduce_figure(figure_id, options.out,
                                  options.experimental)
        for path in result["files"]:
            print(path)
    return EXIT_OK


commands = {
    "front":     (_front_parser, _front),
    "selector":  (_selector_parser, _selector),
    "conjugate": (_conjugate_parser, _conjugate),
    "verify":    (_verify_parser, _verify),
    "figure":    (_figure_parser, _figure),
}


def _usage():
    return "usage: legendrian {%s} [options]\n" % "|".join(sorted(commands))


def main(argv=None):
    """
    Run one sub-command.

    @return: the exit status.
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    if not argv or argv[0] in ("-h", "--help"):
        sys.stdout.write(_usage())
        return EXIT_OK if argv else EXIT_ERROR
    if argv[0] not in commands:
        sys.stderr.write(_usage())
        sys.stderr.write("legendrian: unknown command %r\n" % argv[0])
        return EXIT_ERROR
    build, run = commands[argv[0]]
    parser = build()
    (options, args) = parser.parse_args(argv[1:])
    if options.verbose:
        log_to_stream(logging.DEBUG)
    try:
        return run(parser, options, args)
    except LegendrianError as e:
        logger.debug("%s failed", argv[0], exc_info=True)
        sys.stderr.write("legendrian: %s [%s]\n" % (e.message, e.cause))
        return EXIT_ERROR
